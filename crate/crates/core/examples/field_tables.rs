// Build small fields and look at their tables.
//
// Run with `cargo run --example field_tables`.

use ffhyper::{FElem, FieldCtx};

pub fn run_example() -> ffhyper::Result<()> {
    for q in [5, 8, 9, 16] {
        let f = FieldCtx::build(q)?;
        println!(
            "F_{q}: modulus {}, generator {}",
            f.modulus_string(),
            f.generator().0
        );
        println!("  powers of g: {:?}", f.exp_table());

        // log turns multiplication into addition of exponents
        let (a, b) = (f.exp(3), f.exp(f.order() - 1));
        let prod = f.mul(a, b);
        assert_eq!(f.log(prod), Some(2 % f.order()));

        // every nonzero element has an inverse
        for x in f.nonzero() {
            assert_eq!(f.mul(x, f.inv(x)?), FElem::ONE);
        }
    }

    // F_9 = F_3[x]/(x^2 + 1): element 3 is x, and x^2 = -1 = 2
    let f9 = FieldCtx::build(9)?;
    let x = FElem(3);
    assert_eq!(f9.mul(x, x), FElem(2));
    println!("in F_9, x*x = {}", f9.mul(x, x).0);

    assert!(FieldCtx::build(6).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
