// The double-sum F1 function, its symmetry, and its character-sum expansion.
//
// Run with `cargo run --example appell_f1`.

use ffhyper::appell::{f1_double, f1_single, thm21_rhs, thm31_rhs, F1Params};
use ffhyper::{CharGroup, FElem};

pub fn run_example() -> ffhyper::Result<()> {
    let g = CharGroup::for_q(3)?;
    let chi = g.chi(1);
    let p = F1Params {
        a: chi,
        b: chi,
        bp: chi,
        c: g.eps(),
        x: FElem(1),
        y: FElem(2),
    };
    let v = f1_double(&g, &p);
    assert_eq!(v.as_integer(), Some(2));
    println!("q=3: F1(chi; chi, chi; eps; 1, 2) = {v}");

    let g = CharGroup::for_q(7)?;
    let p = F1Params {
        a: g.chi(1),
        b: g.chi(2),
        bp: g.chi(4),
        c: g.chi(3),
        x: FElem(3),
        y: FElem(5),
    };
    let direct = f1_double(&g, &p);
    println!("q=7: F1 = {direct}\n  ~ {:.6}", direct.to_complex());

    // swapping (B, x) with (B', y) leaves the value unchanged
    assert!(direct.try_eq(&f1_double(&g, &p.swapped()))?);
    // four-term expansion through binomial coefficients
    assert!(direct.try_eq(&thm21_rhs(&g, &p)?)?);

    // with B' trivial the function reduces to 2F1 terms
    let q = F1Params { bp: g.eps(), ..p };
    assert!(f1_double(&g, &q).try_eq(&thm31_rhs(&g, q.a, q.b, q.c, q.x, q.y)?)?);

    // the single-sum analogue is a different function
    println!(
        "single-sum analogue at the same point ~ {:.6}",
        f1_single(&g, &p).to_complex()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
