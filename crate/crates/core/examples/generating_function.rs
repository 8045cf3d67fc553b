// The generating function of F1 over characters theta, term by term.
//
// The nine-term expansion does not match the left side in general. Terms 2,
// 7 and 8 must be dropped and terms 5 and 6 negated; this example shows the
// per-term values and both recombinations.
//
// Run with `cargo run --example generating_function`.

use ffhyper::appell::{
    genfun_lhs, genfun_rhs, genfun_rhs_amended, genfun_rhs_terms, F1Params, GenFunParams,
    GENFUN_AMENDED_COEFFS,
};
use ffhyper::{CharGroup, FElem};

pub fn run_example() -> ffhyper::Result<()> {
    let g = CharGroup::for_q(5)?;
    let p = GenFunParams {
        f1: F1Params {
            a: g.chi(1),
            b: g.chi(2),
            bp: g.chi(3),
            c: g.chi(1),
            x: FElem(2),
            y: FElem(3),
        },
        t: FElem(4),
    };
    let lhs = genfun_lhs(&g, &p)?;
    println!("lhs = {lhs}");
    for (k, (t, c)) in genfun_rhs_terms(&g, &p)?
        .iter()
        .zip(GENFUN_AMENDED_COEFFS)
        .enumerate()
    {
        println!("  term {}: {t}  (amended coefficient {c:+})", k + 1);
    }
    let printed = genfun_rhs(&g, &p)?;
    let amended = genfun_rhs_amended(&g, &p)?;
    println!("sum of all nine terms = {printed}");
    println!("amended sum           = {amended}");
    assert!(lhs.try_eq(&amended)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
