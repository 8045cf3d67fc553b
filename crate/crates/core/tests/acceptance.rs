//! Acceptance gate: runs each criterion at its stated scale and prints one
//! PASS / FAIL / DOCUMENTED DISCREPANCY line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use ffhyper::appell::{f1_double, F1Params, GENFUN_AMENDED_COEFFS};
use ffhyper::verify::{describe_fit, fit_residual, sweep, Mode, Verdict, VerifyReport};
use ffhyper::{CharGroup, CharValue, FElem, FieldCtx};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

enum Outcome {
    Pass(String),
    Discrepancy(String),
    Fail(String),
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run(id: &str, q: u32, mode: Mode) -> VerifyReport {
    sweep(id, q, mode, jobs()).unwrap_or_else(|e| panic!("{id} q={q}: {e}"))
}

/// Sweeps every (id, q) and reports the first failure, if any.
fn all_pass(ids: &[&str], qs: &[u32], mode: Mode) -> Result<u64, String> {
    let mut cases = 0;
    for &q in qs {
        for &id in ids {
            let r = run(id, q, mode);
            if r.verdict() != Verdict::Pass {
                let f = &r.failures[0];
                return Err(format!(
                    "{id} q={q}: {} failures, first at {}",
                    r.failure_count,
                    f.params_json()
                ));
            }
            cases += r.cases;
        }
    }
    Ok(cases)
}

fn group(q: u32) -> CharGroup {
    CharGroup::new(Arc::new(FieldCtx::build(q).unwrap()))
}

fn orthogonality(q: u32) -> Result<(), String> {
    let g = group(q);
    let m = g.m() as i64;
    for chi in g.all() {
        let expect = g.int(m * g.delta_char(chi));
        if !g.character_sum(chi).try_eq(&expect).unwrap() {
            return Err(format!("sum over x of {chi}(x) at q={q}"));
        }
    }
    for x in g.field().elements() {
        let mut acc = g.zero();
        for chi in g.all() {
            if let CharValue::Root(e) = g.eval(chi, x) {
                acc.bump(e, 1);
            }
        }
        let expect = g.int(if x == FElem::ONE { m } else { 0 });
        if !acc.try_eq(&expect).unwrap() {
            return Err(format!("sum over chi of chi({}) at q={q}", x.0));
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];
    for q in qs {
        if let Err(e) = orthogonality(q) {
            return Outcome::Fail(e);
        }
    }
    let ids = [
        "prop2.1.i",
        "prop2.1.ii",
        "prop2.1.iii",
        "prop2.1.iv",
        "prop2.2",
    ];
    match all_pass(&ids, &qs, Mode::Exhaustive) {
        Ok(n) => Outcome::Pass(format!("orthogonality + {n} binomial cases, q <= 16")),
        Err(e) => Outcome::Fail(e),
    }
}

fn criterion_2() -> Outcome {
    let a = all_pass(
        &["greene3.6", "eq1.1"],
        &[2, 3, 4, 5, 7, 8, 9, 11, 13],
        Mode::Exhaustive,
    );
    let b = all_pass(
        &["prop3.1.a", "prop3.1.b", "prop3.1.c"],
        &[2, 3, 4, 5, 7, 8, 9],
        Mode::Exhaustive,
    );
    match (a, b) {
        (Ok(a), Ok(b)) => Outcome::Pass(format!(
            "{a} 2F1 cases (q <= 13), {b} reduction cases (q <= 9)"
        )),
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(e),
    }
}

fn criterion_3() -> Outcome {
    let qs = [2, 3, 4, 5, 7, 8, 9];
    let sym = match all_pass(&["eq1.2"], &qs, Mode::Exhaustive) {
        Ok(n) => n,
        Err(e) => return Outcome::Fail(e),
    };
    for q in qs {
        let g = group(q);
        let f = g.field();
        for a in g.all() {
            for b in g.all() {
                for bp in g.all() {
                    for c in g.all() {
                        for v in f.elements() {
                            for (x, y) in [(FElem(0), v), (v, FElem(0))] {
                                let p = F1Params { a, b, bp, c, x, y };
                                if !f1_double(&g, &p).is_zero() {
                                    return Outcome::Fail(format!(
                                        "nonzero at xy = 0: {p:?} q={q}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let g = group(3);
    let chi = g.chi(1);
    let fixture = f1_double(
        &g,
        &F1Params {
            a: chi,
            b: chi,
            bp: chi,
            c: g.eps(),
            x: FElem(1),
            y: FElem(2),
        },
    );
    if fixture.as_integer() != Some(2) {
        return Outcome::Fail(format!("q=3 fixture gave {fixture}, expected 2"));
    }
    Outcome::Pass(format!(
        "{sym} symmetry cases, vanishing on axes, q=3 fixture = 2"
    ))
}

fn thm21_samples() -> Vec<VerifyReport> {
    [8, 9, 11, 13]
        .map(|q| {
            run(
                "thm2.1",
                q,
                Mode::Sample {
                    count: 2000,
                    seed: SEED,
                },
            )
        })
        .to_vec()
}

fn criterion_4() -> Outcome {
    let exhaustive = match all_pass(&["thm2.1"], &[3, 4, 5, 7], Mode::Exhaustive) {
        Ok(n) => n,
        Err(e) => return Outcome::Fail(e),
    };
    for r in thm21_samples() {
        if r.verdict() != Verdict::Pass {
            return Outcome::Fail(format!(
                "thm2.1 sample q={}: {} failures",
                r.q, r.failure_count
            ));
        }
    }
    match all_pass(&["thm2.1.y1"], &[2, 3, 4, 5, 7, 8, 9], Mode::Exhaustive) {
        Ok(y1) => Outcome::Pass(format!(
            "{exhaustive} exhaustive cases (q <= 7), 4 x 2000 samples (q = 8, 9, 11, 13), {y1} y = 1 cases"
        )),
        Err(e) => Outcome::Fail(e),
    }
}

fn criterion_5() -> Outcome {
    match all_pass(
        &["thm3.red.b", "thm3.red.bp"],
        &[3, 4, 5, 7, 8],
        Mode::Exhaustive,
    ) {
        Ok(n) => Outcome::Pass(format!("{n} cases, q in 3, 4, 5, 7, 8")),
        Err(e) => Outcome::Fail(e),
    }
}

/// The printed nine-term form is swept at full scale. Where it fails, each
/// report's residual must fit one integer combination of the nine terms and
/// the recombined form must hold on the same domains.
fn criterion_6() -> Outcome {
    let runs: Vec<(u32, Mode)> = [3, 4, 5]
        .map(|q| (q, Mode::Exhaustive))
        .into_iter()
        .chain([7, 8, 9].map(|q| {
            (
                q,
                Mode::Sample {
                    count: 500,
                    seed: SEED,
                },
            )
        }))
        .collect();
    let mut failing = Vec::new();
    let mut fits = Vec::new();
    let mut cases = 0;
    for &(q, mode) in &runs {
        let printed = run("thm4.1", q, mode);
        cases += printed.cases;
        if printed.verdict() == Verdict::Pass {
            continue;
        }
        failing.push(format!(
            "q={q}: {}/{}",
            printed.failure_count, printed.cases
        ));
        let Some(fit) = fit_residual(&printed, &[-2, -1, 1, 2], 5).unwrap() else {
            return Outcome::Fail(format!(
                "thm4.1 q={q}: residual not localized to the nine terms"
            ));
        };
        let expected: Vec<i64> = GENFUN_AMENDED_COEFFS.iter().map(|c| c - 1).collect();
        let consistent = fit.iter().zip(&expected).all(|(f, e)| *f == 0 || f == e);
        if !consistent {
            return Outcome::Fail(format!(
                "thm4.1 q={q}: residual {} is not amended minus printed",
                describe_fit(&fit)
            ));
        }
        fits.push(describe_fit(&fit));
        let amended = run("thm4.1.amended", q, mode);
        if amended.verdict() != Verdict::Pass {
            return Outcome::Fail(format!(
                "amended form fails at q={q}: {} failures",
                amended.failure_count
            ));
        }
    }
    if failing.is_empty() {
        return Outcome::Pass(format!("{cases} cases"));
    }
    fits.sort();
    fits.dedup();
    Outcome::Discrepancy(format!(
        "printed form fails ({}); residual lhs - rhs = {} localizes to terms 2, 5, 6, 7, 8; \
         amended coefficients {:?} pass on all {cases} cases",
        failing.join(", "),
        fits.join(" | "),
        GENFUN_AMENDED_COEFFS
    ))
}

fn float_jacobi(g: &CharGroup, j: i64, k: i64) -> Complex64 {
    let f = g.field();
    let m = g.m() as f64;
    let chi = |j: i64, x: FElem| match f.log(x) {
        None => Complex64::new(0.0, 0.0),
        Some(l) => Complex64::from_polar(1.0, std::f64::consts::TAU * ((j * l as i64) as f64) / m),
    };
    f.elements()
        .map(|x| chi(j, x) * chi(k, f.sub(FElem::ONE, x)))
        .sum()
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0f64;
    for q in [5u32, 7, 9, 13] {
        let g = group(q);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ q as u64);
        for _ in 0..1000 {
            let (j, k) = (
                rng.random_range(0..g.m() as i64),
                rng.random_range(0..g.m() as i64),
            );
            let exact = g.jacobi_direct(g.chi(j), g.chi(k)).to_complex();
            let err = (exact - float_jacobi(&g, j, k)).norm();
            worst = worst.max(err);
            if err >= 1e-6 {
                return Outcome::Fail(format!("J(chi_{j}, chi_{k}) at q={q} off by {err:e}"));
            }
        }
    }
    Outcome::Pass(format!(
        "4000 Jacobi sums, max |exact - float| = {worst:.2e}"
    ))
}

fn criterion_8() -> Outcome {
    let a = thm21_samples();
    let b = thm21_samples();
    for workers in [1, 4] {
        let other: Vec<_> = [8, 9, 11, 13]
            .map(|q| {
                sweep(
                    "thm2.1",
                    q,
                    Mode::Sample {
                        count: 2000,
                        seed: SEED,
                    },
                    workers,
                )
                .unwrap()
            })
            .to_vec();
        for ((x, y), z) in a.iter().zip(&b).zip(&other) {
            if x.to_json_stable() != y.to_json_stable() || x.to_json_stable() != z.to_json_stable()
            {
                return Outcome::Fail(format!("report for q={} differs between runs", x.q));
            }
        }
    }
    Outcome::Pass(format!(
        "reports identical across repeats and 1, 4, {} workers",
        jobs()
    ))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let r = run("probe.thm2.1.y0", q, Mode::Exhaustive);
        assert_eq!(r.verdict(), Verdict::None);
        parts.push(format!("q={q}: {}/{}", r.agreements(), r.cases));
    }
    Outcome::Pass(format!(
        "equality at y = 0 recorded (no verdict): {}",
        parts.join(", ")
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, u64);
    let criteria: [Criterion; 9] = [
        ("characters and binomials", criterion_1, 60),
        ("hypergeometric layer", criterion_2, 300),
        ("F1 definition layer", criterion_3, 120),
        ("double-sum expansion of F1", criterion_4, 600),
        ("reductions with a trivial B or B'", criterion_5, 300),
        ("generating function", criterion_6, 600),
        ("exact vs float Jacobi sums", criterion_7, 60),
        ("determinism of sampled sweeps", criterion_8, 600),
        ("probe at y = 0", criterion_9, 120),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::Fail(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            o if took <= Duration::from_secs(*limit) => o,
            _ => Outcome::Fail(format!("took {took:.1?}, limit {limit} s")),
        };
        let (tag, detail) = match &outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Discrepancy(d) => ("DOCUMENTED DISCREPANCY", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} ({name}): {tag} [{took:.2?}] {detail}", i + 1);
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria met");
}
