// Gauss and generalized hypergeometric functions over F_q.
//
// Run with `cargo run --example hypergeometric`.

use ffhyper::hyper::{f21_charsum, f21_point, hyper_charsum, rhs_2f1_same, HyperParams};
use ffhyper::{CharGroup, FElem};

pub fn run_example() -> ffhyper::Result<()> {
    let g = CharGroup::for_q(11)?;
    let (a, b, c) = (g.chi(2), g.chi(3), g.chi(7));

    for x in [1, 4, 10] {
        let x = FElem(x);
        let by_points = f21_point(&g, a, b, c, x);
        let by_chars = f21_charsum(&g, a, b, c, x);
        assert!(by_points.try_eq(&by_chars)?);
        println!(
            "2F1(chi_2, chi_3; chi_7 | {}) ~ {:.6}",
            x.0,
            by_points.to_complex()
        );
    }

    // 2F1(A, B; A | x) collapses to a closed form
    for x in g.field().elements() {
        assert!(f21_charsum(&g, a, b, a, x).try_eq(&rhs_2f1_same(&g, a, b, x))?);
    }

    let p = HyperParams::new(vec![a, b, c], vec![g.chi(1), g.chi(4)], FElem(5))?;
    println!("3F2 at x = 5 ~ {:.6}", hyper_charsum(&g, &p)?.to_complex());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
