use std::path::Path;
use std::process::{Command, Output};

fn ffhyper(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ffhyper"));
    cmd.args(args).env_remove("FFHYPER_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("FFHYPER_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn field_info_reports_modulus_and_generator() {
    let o = ffhyper(&["field-info", "--q", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("modulus: x^2 + x + 1"),
        "{}",
        stdout(&o)
    );

    let o = ffhyper(&["field-info", "--q", "5"], None);
    assert!(stdout(&o).contains("generator: 2"));

    let o = ffhyper(&["field-info", "--q", "5", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["generator"], 2);
}

#[test]
fn field_info_rejects_non_prime_powers() {
    let o = ffhyper(&["field-info", "--q", "6"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a prime power"));
}

#[test]
fn eval_prints_exact_and_approximate_values() {
    let o = ffhyper(
        &[
            "eval", "f1double", "--q", "3", "A=1", "B=1", "Bp=1", "C=0", "x=1", "y=2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("2"));
    assert!(
        out.contains("approx: 2.000000000000 +0.000000000000i"),
        "{out}"
    );

    let o = ffhyper(&["eval", "binom", "--q", "5", "A=1", "B=0"], None);
    assert_eq!(stdout(&o).lines().next(), Some("-1"));

    let o = ffhyper(
        &["eval", "f21", "--q", "3", "A=1", "B=1", "C=0", "x=0"],
        None,
    );
    assert_eq!(stdout(&o).lines().next(), Some("0"));

    let o = ffhyper(&["eval", "jacobi", "--q", "5", "A=1", "B=1"], None);
    assert!(stdout(&o).contains("\"den\":1"));
}

#[test]
fn eval_reports_argument_errors() {
    for args in [
        &["eval", "f21", "--q", "3", "A=1", "B=1", "C=0"][..],
        &["eval", "f21", "--q", "3", "A=1", "B=1", "C=0", "x=3"],
        &["eval", "f21", "--q", "3", "A=1", "B=1", "C=0", "x=1", "z=1"],
        &["eval", "binom", "--q", "5", "A1"],
        &["eval", "nope", "--q", "5"],
    ] {
        assert_eq!(ffhyper(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = ffhyper(&["verify", "eq1.2", "--q", "3,4,5"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = ffhyper(&["verify", "thm4.1", "--q", "2"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty domain"));

    let o = ffhyper(&["verify", "no.such.id", "--q", "3"], None);
    assert_eq!(o.status.code(), Some(2));

    let o = ffhyper(&["verify", "eq1.2", "--q", "3", "--jobs", "0"], None);
    assert_eq!(o.status.code(), Some(2));

    // the nine-term generating function has counterexamples
    let o = ffhyper(&["verify", "thm4.1", "--q", "3"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("residual lhs - rhs = -2*T5 -2*T6 -1*T7"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn verify_all_runs_every_identity() {
    let o = ffhyper(&["verify", "all", "--q", "3"], None);
    let out = stdout(&o);
    for id in ffhyper::verify::IDENTITY_IDS {
        assert!(
            out.lines().any(|l| l.starts_with(&format!("{id} "))),
            "{id} missing:\n{out}"
        );
    }
    let failing: Vec<&str> = out.lines().filter(|l| l.contains("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{out}");
    assert!(failing[0].starts_with("thm4.1 "));
    assert_eq!(o.status.code(), Some(1));

    let o = ffhyper(&["verify", "all", "--q", "2"], None);
    assert!(stdout(&o).contains("skipped (empty domain)"));
}

#[test]
fn verify_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = ffhyper(
        &[
            "verify",
            "thm2.1",
            "--q",
            "8",
            "--mode",
            "sample",
            "--count",
            "200",
            "--seed",
            "5",
            "--format",
            "json",
            "--out",
            json.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v[0]["mode"], "sample");
    assert_eq!(v[0]["seed"], 5);
    assert_eq!(v[0]["cases"], 200);

    let csv = dir.path().join("r.csv");
    ffhyper(
        &[
            "verify",
            "eq1.2",
            "--q",
            "3",
            "--format",
            "csv",
            "--out",
            csv.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "identity,q,param_json,lhs,rhs\n"
    );

    let o = ffhyper(&["verify", "thm4.1", "--q", "3", "--format", "csv"], None);
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let first = rows.records().next().unwrap().unwrap();
    assert_eq!(&first[0], "thm4.1");
    assert_eq!(&first[2], r#"{"B":0,"Bp":0,"C":0,"x":1,"y":2,"A":0,"t":2}"#);
    // lhs = 1 at this tuple; at q = 3 zeta = -1, so value = (c0 - c1) / den
    let lhs: serde_json::Value = serde_json::from_str(&first[3]).unwrap();
    let c: Vec<i64> = lhs["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    assert_eq!(c[0] - c[1], lhs["den"].as_i64().unwrap());
}

#[test]
fn verify_output_is_stable_for_fixed_seed() {
    let args = [
        "verify", "thm2.1", "--q", "9", "--mode", "sample", "--count", "150", "--seed", "3",
        "--format", "json",
    ];
    let strip = |o: Output| {
        stdout(&o)
            .lines()
            .filter(|l| !l.contains("duration_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(ffhyper(&args, None));
    let mut more = args.to_vec();
    more.extend(["--jobs", "3"]);
    assert_eq!(a, strip(ffhyper(&more, None)));
}

#[test]
fn cache_build_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cold = stdout(&ffhyper(&["field-info", "--q", "13"], None));
    let o = ffhyper(
        &[
            "cache",
            "build",
            "--q",
            "13,16",
            "--cache-dir",
            dir.path().to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("field-q13.json").exists());
    let warm = ffhyper(&["field-info", "--q", "13"], Some(dir.path()));
    assert_eq!(stdout(&warm), cold);
    assert!(stderr(&warm).is_empty());

    let o = ffhyper(&["cache", "clear"], Some(dir.path()));
    assert!(stdout(&o).contains("removed 2"));
    assert!(!dir.path().join("field-q13.json").exists());
    assert_eq!(
        stdout(&ffhyper(&["field-info", "--q", "13"], Some(dir.path()))),
        cold
    );
}

#[test]
fn corrupted_cache_is_rejected_and_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    ffhyper(&["cache", "build", "--q", "9"], Some(dir.path()));
    let path = dir.path().join("field-q9.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["log_table"][2] = serde_json::json!(0);
    std::fs::write(&path, v.to_string()).unwrap();

    let o = ffhyper(&["field-info", "--q", "9"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        stdout(&ffhyper(&["field-info", "--q", "9"], None))
    );

    let again = ffhyper(&["field-info", "--q", "9"], Some(dir.path()));
    assert!(stderr(&again).is_empty());
}

#[test]
fn cache_needs_a_directory() {
    assert_eq!(
        ffhyper(&["cache", "build", "--q", "5"], None).status.code(),
        Some(2)
    );
    let o = ffhyper(
        &[
            "cache",
            "build",
            "--q",
            "5",
            "--cache-dir",
            "/proc/ffhyper-no-such/x",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_mentions_character_convention() {
    let o = ffhyper(&["--help"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("canonical generator"));
}
