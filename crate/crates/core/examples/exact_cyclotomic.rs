// Exact arithmetic in Z[zeta_n] with a rational denominator.
//
// Run with `cargo run --example exact_cyclotomic`.

use ffhyper::{cyclotomic_poly, CycVal};

pub fn run_example() -> ffhyper::Result<()> {
    let n = 6;
    println!("Phi_{n} coefficients: {:?}", cyclotomic_poly(n).coeffs);

    // 1 + zeta + ... + zeta^5 = 0
    let mut sum = CycVal::zero(n);
    for e in 0..n as u32 {
        sum.bump(e, 1);
    }
    assert!(sum.is_zero());

    // zeta_6^2 - zeta_6 + 1 = 0, so zeta^2 + 1 equals zeta
    let z = CycVal::root(n, 1);
    let lhs = CycVal::root(n, 2).try_add(&CycVal::from_int(n, 1))?;
    assert!(lhs.try_eq(&z)?);
    println!(
        "zeta^2 + 1 = {lhs}, reduces to {:?}",
        lhs.reduced_numerator()
    );

    // (1 + zeta^3) / 3 is zero because zeta^3 = -1
    let v = CycVal::from_parts(vec![1, 0, 0, 1, 0, 0], 3);
    assert!(v.is_zero());

    let w = z.try_mul(&z)?.div_int(2);
    println!("zeta^2 / 2 = {w} ~ {}", w.to_complex());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
