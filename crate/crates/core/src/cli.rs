//! Command-line front end behind the `ffhyper` binary.
//!
//! Characters are given by index `j` and mean `chi_j(g^k) = zeta^(jk)` for
//! the canonical generator `g` printed by `field-info`. Indices are reduced
//! mod `q-1`. Field points are integers in `[0, q)` using the base-p digit
//! encoding (digit `i` is the coefficient of `x^i`).
//!
//! Exit codes: 0 success, 1 a counterexample was found, 2 usage or domain error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::appell::{f1_double, f1_single, F1Params};
use crate::chars::CharGroup;
use crate::cyclo::CycVal;
use crate::error::{Error, Result};
use crate::field::{cache_path, CacheStatus, FElem, FieldCtx, CACHE_ENV};
use crate::hyper::f21_point;
use crate::verify::{self, Mode, SweepOptions, Verdict, VerifyReport, IDENTITY_IDS};

const CHAR_HELP: &str = "Characters are addressed by index j against the canonical generator g \
(see field-info): chi_j(g^k) = zeta_{q-1}^(jk), j = 0 is the trivial character. \
Field elements are integers 0..q whose base-p digits are polynomial coefficients.";

#[derive(Parser, Debug)]
#[command(name = "ffhyper", version, about = "Exact character sums and F1 identities over F_q", after_help = CHAR_HELP)]
struct Cli {
    /// Table cache directory (defaults to $FFHYPER_CACHE_DIR).
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the modulus, generator and table summary of F_q.
    FieldInfo {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = InfoFormat::Human)]
        format: InfoFormat,
    },
    /// Evaluate one quantity exactly, e.g. `eval f1double --q 3 A=1 B=1 Bp=1 C=0 x=1 y=2`.
    Eval {
        #[arg(value_enum)]
        kind: EvalKind,
        #[arg(long)]
        q: u32,
        /// NAME=VALUE pairs: characters A B Bp C, points x y.
        #[arg(value_name = "NAME=VALUE")]
        args: Vec<String>,
    },
    /// Sweep identities over each listed q.
    Verify {
        /// Identity id, comma-separated ids, or `all`.
        identity: String,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Manage the on-disk field table cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InfoFormat {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalKind {
    F21,
    F1double,
    F1single,
    Jacobi,
    Binom,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CacheAction {
    Build,
    Clear,
}

/// Runs the CLI with process stdout/stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] but writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let cache_dir = cli
        .cache_dir
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let ctx = Ctx {
        cache_dir,
        out,
        err,
    };
    match ctx.dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Ctx<'a> {
    cache_dir: Option<PathBuf>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn dispatch(mut self, cmd: Command) -> Result<i32> {
        match cmd {
            Command::FieldInfo { q, format } => self.field_info(q, format),
            Command::Eval { kind, q, args } => self.eval(kind, q, &args),
            Command::Verify {
                identity,
                q,
                mode,
                count,
                seed,
                jobs,
                format,
                out,
            } => {
                let mode = match mode {
                    ModeArg::Exhaustive => Mode::Exhaustive,
                    ModeArg::Sample => Mode::Sample { count, seed },
                };
                let jobs = jobs.map(|j| j as usize).unwrap_or_else(default_jobs);
                self.verify(&identity, &q, mode, jobs, format, out.as_deref())
            }
            Command::Cache { action, q } => self.cache(action, &q),
        }
    }

    fn field(&mut self, q: u32) -> Result<FieldCtx> {
        let (field, status) = FieldCtx::load_or_build(q, self.cache_dir.as_deref())?;
        if let CacheStatus::Rejected(why) = status {
            writeln!(
                self.err,
                "warning: ignoring cache for q={q}: {why}; rebuilt tables"
            )?;
            if let Some(dir) = &self.cache_dir {
                field.write_cache(dir)?;
            }
        }
        Ok(field)
    }

    fn field_info(&mut self, q: u32, format: InfoFormat) -> Result<i32> {
        let f = self.field(q)?;
        let head = |t: &[u32]| t.iter().take(16).copied().collect::<Vec<_>>();
        match format {
            InfoFormat::Human => {
                writeln!(self.out, "q = {} = {}^{}", f.q(), f.p(), f.n())?;
                writeln!(self.out, "modulus: {}", f.modulus_string())?;
                writeln!(self.out, "generator: {}", f.generator().0)?;
                let more = if f.order() > 16 { ", ..." } else { "" };
                let fmt = |v: Vec<u32>| {
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                writeln!(
                    self.out,
                    "exp table (g^k): [{}{more}]",
                    fmt(head(f.exp_table()))
                )?;
                let logs: Vec<String> = f
                    .elements()
                    .take(16)
                    .map(|a| f.log(a).map_or("-".to_string(), |l| l.to_string()))
                    .collect();
                let more = if f.q() > 16 { ", ..." } else { "" };
                writeln!(self.out, "log table: [{}{more}]", logs.join(", "))?;
                writeln!(self.out, "log(-1): {}", f.log_neg_one())?;
            }
            InfoFormat::Json => {
                let v = json!({
                    "q": f.q(),
                    "p": f.p(),
                    "n": f.n(),
                    "modulus": f.modulus(),
                    "modulus_string": f.modulus_string(),
                    "generator": f.generator().0,
                    "exp_table_head": head(f.exp_table()),
                    "log_neg_one": f.log_neg_one(),
                });
                writeln!(
                    self.out,
                    "{}",
                    serde_json::to_string_pretty(&v).expect("json")
                )?;
            }
        }
        Ok(0)
    }

    fn eval(&mut self, kind: EvalKind, q: u32, args: &[String]) -> Result<i32> {
        let g = CharGroup::new(Arc::new(self.field(q)?));
        let mut given = BTreeMap::new();
        for a in args {
            let (k, v) = a
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected NAME=VALUE, got {a:?}")))?;
            let v: i64 = v
                .parse()
                .map_err(|_| Error::Usage(format!("{k}: {v:?} is not an integer")))?;
            if given.insert(k.to_string(), v).is_some() {
                return Err(Error::Usage(format!("{k} given twice")));
            }
        }
        let names: &[&str] = match kind {
            EvalKind::F21 => &["A", "B", "C", "x"],
            EvalKind::F1double | EvalKind::F1single => &["A", "B", "Bp", "C", "x", "y"],
            EvalKind::Jacobi | EvalKind::Binom => &["A", "B"],
        };
        if let Some(extra) = given.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::Usage(format!("unexpected argument {extra}")));
        }
        let get = |name: &str| -> Result<i64> {
            given.get(name).copied().ok_or(Error::ArityMismatch {
                expected: names.len(),
                got: given.len(),
            })
        };
        let chi = |name: &str| get(name).map(|j| g.chi(j));
        let point = |name: &str| -> Result<FElem> {
            let v = get(name)?;
            if v < 0 || v >= q as i64 {
                return Err(Error::DomainRestriction(format!(
                    "{name}={v} is not in [0, {q})"
                )));
            }
            Ok(FElem(v as u32))
        };
        let f1p = || -> Result<F1Params> {
            Ok(F1Params {
                a: chi("A")?,
                b: chi("B")?,
                bp: chi("Bp")?,
                c: chi("C")?,
                x: point("x")?,
                y: point("y")?,
            })
        };
        let value = match kind {
            EvalKind::F21 => f21_point(&g, chi("A")?, chi("B")?, chi("C")?, point("x")?),
            EvalKind::F1double => f1_double(&g, &f1p()?),
            EvalKind::F1single => f1_single(&g, &f1p()?),
            EvalKind::Jacobi => g.jacobi(chi("A")?, chi("B")?).into_owned(),
            EvalKind::Binom => g.binom(chi("A")?, chi("B")?).into_owned(),
        };
        self.print_value(&value)?;
        Ok(0)
    }

    fn print_value(&mut self, v: &CycVal) -> Result<()> {
        writeln!(self.out, "{v}")?;
        writeln!(
            self.out,
            "exact: {}",
            serde_json::to_string(&verify::ExactJson(v)).expect("json")
        )?;
        let z = v.to_complex();
        writeln!(self.out, "approx: {:.12} {:+.12}i", z.re, z.im)?;
        Ok(())
    }

    fn verify(
        &mut self,
        id: &str,
        qs: &[u32],
        mode: Mode,
        jobs: usize,
        format: Format,
        out_path: Option<&Path>,
    ) -> Result<i32> {
        let all = id == "all";
        let ids: Vec<&str> = if all {
            IDENTITY_IDS.to_vec()
        } else {
            id.split(',').collect()
        };
        for id in &ids {
            verify::lookup(id)?;
        }
        let mut reports = Vec::new();
        for &q in qs {
            let g = CharGroup::new(Arc::new(self.field(q)?));
            for &id in &ids {
                let identity = verify::lookup(id)?;
                let opts = SweepOptions {
                    jobs,
                    ..Default::default()
                };
                match verify::sweep_identity(&identity, &g, mode, opts) {
                    Ok(r) => reports.push(r),
                    Err(Error::EmptyDomain { .. }) if all => {
                        writeln!(self.out, "{id:<16} q={q:<3} skipped (empty domain)")?;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        let rendered = match format {
            Format::Json => render_json(&reports),
            Format::Csv => render_csv(&reports)?,
            Format::Human => render_human(&reports),
        };
        match out_path {
            Some(path) => {
                std::fs::write(path, &rendered)?;
                for r in &reports {
                    writeln!(self.out, "{}", r.summary())?;
                }
            }
            None if format == Format::Human => write!(self.out, "{rendered}")?,
            None => {
                write!(self.out, "{rendered}")?;
                for r in &reports {
                    writeln!(self.err, "{}", r.summary())?;
                }
            }
        }
        let failed = reports.iter().any(|r| r.verdict() == Verdict::Fail);
        Ok(if failed { 1 } else { 0 })
    }

    fn cache(&mut self, action: CacheAction, qs: &[u32]) -> Result<i32> {
        let dir = self.cache_dir.clone().ok_or_else(|| {
            Error::Usage(format!(
                "no cache directory: pass --cache-dir or set {CACHE_ENV}"
            ))
        })?;
        match action {
            CacheAction::Build => {
                if qs.is_empty() {
                    return Err(Error::Usage("cache build needs --q".into()));
                }
                for &q in qs {
                    let path = FieldCtx::build(q)?.write_cache(&dir)?;
                    writeln!(self.out, "wrote {}", path.display())?;
                }
            }
            CacheAction::Clear => {
                let targets: Vec<PathBuf> = if qs.is_empty() {
                    match std::fs::read_dir(&dir) {
                        Ok(rd) => rd
                            .filter_map(|e| e.ok().map(|e| e.path()))
                            .filter(|p| is_cache_file(p))
                            .collect(),
                        Err(_) => Vec::new(),
                    }
                } else {
                    qs.iter().map(|&q| cache_path(&dir, q)).collect()
                };
                let mut removed = 0;
                for p in targets {
                    if p.exists() {
                        std::fs::remove_file(&p)?;
                        removed += 1;
                    }
                }
                writeln!(
                    self.out,
                    "removed {removed} cache file(s) from {}",
                    dir.display()
                )?;
            }
        }
        Ok(0)
    }
}

fn is_cache_file(p: &Path) -> bool {
    p.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with("field-q") && n.ends_with(".json"))
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn render_json(reports: &[VerifyReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

fn render_csv(reports: &[VerifyReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["identity", "q", "param_json", "lhs", "rhs"])
        .map_err(io)?;
    for r in reports {
        for f in &r.failures {
            let exact = |v| serde_json::to_string(&verify::ExactJson(v)).expect("json");
            w.write_record([
                r.identity.clone(),
                r.q.to_string(),
                f.params_json(),
                exact(&f.lhs),
                exact(&f.rhs),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn render_human(reports: &[VerifyReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.summary());
        s.push('\n');
        if r.verdict() == Verdict::Fail {
            for f in r.failures.iter().take(3) {
                s.push_str(&format!(
                    "    {}: lhs = {}, rhs = {}\n",
                    f.params_json(),
                    f.lhs,
                    f.rhs
                ));
            }
            if let Ok(Some(fit)) = verify::fit_residual(r, &[-2, -1, 1, 2], 5) {
                s.push_str(&format!(
                    "    residual lhs - rhs = {} on every stored failure\n",
                    verify::describe_fit(&fit)
                ));
            }
        }
    }
    s
}
