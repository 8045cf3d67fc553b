// Jacobi sums and binomial coefficients of characters.
//
// Run with `cargo run --example jacobi_sums`.

use ffhyper::{CharGroup, FElem};

pub fn run_example() -> ffhyper::Result<()> {
    let g = CharGroup::for_q(13)?;
    println!("characters of F_13^* are chi_0 .. chi_{}", g.m() - 1);

    for (j, k) in [(1, 2), (3, 5), (6, 6)] {
        let (chi, lam) = (g.chi(j), g.chi(k));
        let jac = g.jacobi(chi, lam);
        let z = jac.to_complex();
        println!(
            "J(chi_{j}, chi_{k}) = {jac}\n  ~ {z:.6}, |J|^2 = {:.6}",
            z.norm_sqr()
        );
        // for nontrivial chi, lam with chi*lam nontrivial, |J|^2 = q
        if !(chi * lam).is_trivial() {
            assert!((z.norm_sqr() - 13.0).abs() < 1e-9);
        }
    }

    // {A choose eps} = -1 + (q-1) delta(A)
    assert_eq!(g.binom(g.chi(0), g.eps()).as_integer(), Some(12 - 1));
    assert_eq!(g.binom(g.chi(4), g.eps()).as_integer(), Some(-1));

    // binomial theorem: A(1 + x) = delta(x) + (1/(q-1)) sum_chi {A choose chi} chi(x)
    let a = g.chi(5);
    for x in g.field().elements() {
        let lhs = g.eval(a, g.field().add(FElem::ONE, x)).to_cyc(g.m());
        assert!(lhs.try_eq(&g.binomial_theorem_rhs(a, x))?);
    }
    println!("binomial theorem holds for chi_5 at every x");
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
