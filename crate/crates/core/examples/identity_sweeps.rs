// Sweep registered identities and inspect the reports.
//
// Run with `cargo run --release --example identity_sweeps`.

use ffhyper::verify::{describe_fit, explain_failure, fit_residual, sweep, Mode, Verdict};

pub fn run_example() -> ffhyper::Result<()> {
    let r = sweep("thm2.1", 5, Mode::Exhaustive, 4)?;
    println!("{}", r.summary());
    assert_eq!((r.cases, r.verdict()), (5120, Verdict::Pass));

    let mode = Mode::Sample {
        count: 300,
        seed: 7,
    };
    let a = sweep("thm2.1", 9, mode, 1)?;
    let b = sweep("thm2.1", 9, mode, 4)?;
    assert_eq!(a.to_json_stable(), b.to_json_stable());
    println!("{}", a.summary());

    let probe = sweep("probe.thm2.1.y0", 5, Mode::Exhaustive, 4)?;
    println!("{}", probe.summary());

    let g = sweep("thm4.1", 4, Mode::Exhaustive, 4)?;
    println!("{}", g.summary());
    let first = explain_failure(&g, 0)?;
    println!("first failure: residual {}", first.residual);
    if let Some(fit) = fit_residual(&g, &[-2, -1, 1, 2], 5)? {
        println!("residual on all stored failures = {}", describe_fit(&fit));
    }
    let fixed = sweep("thm4.1.amended", 4, Mode::Exhaustive, 4)?;
    println!("{}", fixed.summary());
    assert_eq!(fixed.verdict(), Verdict::Pass);

    let json = sweep("eq1.1", 3, Mode::Exhaustive, 1)?.to_json_stable();
    println!("{json}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
