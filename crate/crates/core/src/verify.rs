//! Identity registry and the sweep engine.
//!
//! Each registered identity names a parameter domain (characters and field
//! points with the exclusions its hypotheses require) and an evaluator that
//! returns the exact left side, right side and, where the right side has
//! several displayed terms, each term separately.
//!
//! Exhaustive sweeps visit every tuple of the domain once, in mixed-radix
//! order with the last parameter varying fastest. Sampled sweeps draw case
//! `i` from a ChaCha stream keyed by `(seed, i)`, so any worker can produce
//! any case and the report does not depend on the thread count.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::appell::{
    f1_at_y1_terms, f1_double, genfun_lhs_with_table, genfun_rhs_terms, thm21_terms,
    thm21_terms_unchecked, thm31_terms, thm32_terms, F1Params, F1Table, GenFunParams,
    GENFUN_AMENDED_COEFFS,
};
use crate::chars::CharGroup;
use crate::cyclo::{Coeff, CycVal};
use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx};
use crate::hyper::{
    f21_charsum, f21_point, f32_lhs, rhs_2f1_eps_terms, rhs_2f1_same_terms, rhs_3f2_terms,
    sum_terms, term,
};

/// Frozen identity keys, in the order `all` runs them.
pub const IDENTITY_IDS: &[&str] = &[
    "prop2.1.i",
    "prop2.1.ii",
    "prop2.1.iii",
    "prop2.1.iv",
    "prop2.2",
    "greene3.6",
    "eq1.1",
    "prop3.1.a",
    "prop3.1.b",
    "prop3.1.c",
    "eq1.2",
    "thm2.1",
    "thm2.1.y1",
    "thm3.red.b",
    "thm3.red.bp",
    "thm4.1",
    "thm4.1.amended",
    "probe.thm2.1.y0",
];

/// Which field points a parameter ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSet {
    All,
    Nonzero,
    /// `F_q^*` without `1`.
    NonzeroNotOne,
    Only(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// A character index in `[0, q-1)`.
    Char,
    Point(PointSet),
    /// A small selector `0..k` choosing between forms of one statement.
    Choice(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: &'static str,
    pub kind: ParamKind,
}

const fn ch(name: &'static str) -> Param {
    Param {
        name,
        kind: ParamKind::Char,
    }
}

const fn pt(name: &'static str, set: PointSet) -> Param {
    Param {
        name,
        kind: ParamKind::Point(set),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub params: Vec<Param>,
}

impl Domain {
    fn size_of(kind: ParamKind, q: u32) -> u64 {
        let q = q as u64;
        match kind {
            ParamKind::Char => q - 1,
            ParamKind::Point(PointSet::All) => q,
            ParamKind::Point(PointSet::Nonzero) => q - 1,
            ParamKind::Point(PointSet::NonzeroNotOne) => q.saturating_sub(2),
            ParamKind::Point(PointSet::Only(_)) => 1,
            ParamKind::Choice(k) => k as u64,
        }
    }

    /// Number of tuples at field order `q`.
    pub fn cardinality(&self, q: u32) -> u64 {
        self.params
            .iter()
            .map(|p| Self::size_of(p.kind, q))
            .product()
    }

    /// The tuple at position `index`; the last parameter varies fastest.
    pub fn decode(&self, q: u32, mut index: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.params.len()];
        for (slot, p) in out.iter_mut().zip(&self.params).rev() {
            let size = Self::size_of(p.kind, q);
            let digit = (index % size) as u32;
            index /= size;
            *slot = match p.kind {
                ParamKind::Char | ParamKind::Choice(_) => digit,
                ParamKind::Point(PointSet::All) => digit,
                ParamKind::Point(PointSet::Nonzero) => digit + 1,
                // skip the element 1 (index 1)
                ParamKind::Point(PointSet::NonzeroNotOne) => digit + 2,
                ParamKind::Point(PointSet::Only(v)) => v,
            };
        }
        out
    }
}

/// Exact values produced by one evaluation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub lhs: CycVal,
    pub rhs: CycVal,
    /// Right-hand side split into displayed terms; empty when not meaningful.
    pub terms: Vec<CycVal>,
}

impl Outcome {
    fn plain(lhs: CycVal, rhs: CycVal) -> Self {
        Outcome {
            lhs,
            rhs,
            terms: Vec::new(),
        }
    }

    fn split(g: &CharGroup, lhs: CycVal, terms: Vec<CycVal>) -> Self {
        Outcome {
            rhs: sum_terms(g, &terms),
            lhs,
            terms,
        }
    }
}

/// Per-worker memo state.
#[derive(Default)]
pub struct Scratch {
    f1_table: Option<F1Table>,
}

pub type Evaluator = fn(&CharGroup, &[u32], &mut Scratch) -> Result<Outcome>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    /// Must hold on the whole domain.
    Theorem,
    /// Equality is recorded but no verdict is attached.
    Probe,
}

#[derive(Clone)]
pub struct Identity {
    pub id: String,
    pub domain: Domain,
    pub eval: Evaluator,
    pub kind: IdentityKind,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .finish()
    }
}

fn f1(g: &CharGroup, v: &[u32]) -> F1Params {
    F1Params {
        a: g.chi(v[0] as i64),
        b: g.chi(v[1] as i64),
        bp: g.chi(v[2] as i64),
        c: g.chi(v[3] as i64),
        x: FElem(v[4]),
        y: FElem(v[5]),
    }
}

fn eval_f21_at_one(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, b, c) = (g.chi(v[0] as i64), g.chi(v[1] as i64), g.chi(v[2] as i64));
    let x = FElem(v[3]);
    let lhs = f21_point(g, a, b, c, x);
    let rhs = term(g, 1, &[g.at_neg_one(a)], &[&g.binom(b, a.conj() * c)]);
    Ok(Outcome::plain(lhs, rhs))
}

fn eval_f1_symmetry(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let p = f1(g, v);
    Ok(Outcome::plain(f1_double(g, &p), f1_double(g, &p.swapped())))
}

fn eval_binom_complement(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, b) = (g.chi(v[0] as i64), g.chi(v[1] as i64));
    Ok(Outcome::plain(
        g.binom(a, b).into_owned(),
        g.binom(a, a * b.conj()).into_owned(),
    ))
}

fn eval_binom_reflected(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, b) = (g.chi(v[0] as i64), g.chi(v[1] as i64));
    let rhs = term(g, 1, &[g.at_neg_one(b)], &[&g.binom(b * a.conj(), b)]);
    Ok(Outcome::plain(g.binom(a, b).into_owned(), rhs))
}

fn eval_binom_inverted(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, b) = (g.chi(v[0] as i64), g.chi(v[1] as i64));
    let rhs = term(
        g,
        1,
        &[g.at_neg_one(a * b)],
        &[&g.binom(b.conj(), a.conj())],
    );
    Ok(Outcome::plain(g.binom(a, b).into_owned(), rhs))
}

fn eval_binom_trivial_lower(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let a = g.chi(v[0] as i64);
    let lower = if v[1] == 0 { g.eps() } else { a };
    let lhs = g.binom(a, lower).into_owned();
    let rhs = g.int(-1 + g.m() as i64 * g.delta_char(a));
    Ok(Outcome::plain(lhs, rhs))
}

fn eval_binomial_theorem(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let a = g.chi(v[0] as i64);
    let x = FElem(v[1]);
    let lhs = g.eval(a, g.field().add(FElem::ONE, x)).to_cyc(g.m());
    Ok(Outcome::plain(lhs, g.binomial_theorem_rhs(a, x)))
}

fn eval_f21_two_ways(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, b, c) = (g.chi(v[0] as i64), g.chi(v[1] as i64), g.chi(v[2] as i64));
    let x = FElem(v[3]);
    Ok(Outcome::plain(
        f21_point(g, a, b, c, x),
        f21_charsum(g, a, b, c, x),
    ))
}

fn eval_f21_trivial_b(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, c, x) = (g.chi(v[0] as i64), g.chi(v[1] as i64), FElem(v[2]));
    let lhs = f21_charsum(g, a, g.eps(), c, x);
    Ok(Outcome::split(g, lhs, rhs_2f1_eps_terms(g, a, c, x)))
}

fn eval_f21_c_equals_a(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let (a, b, x) = (g.chi(v[0] as i64), g.chi(v[1] as i64), FElem(v[2]));
    let lhs = f21_charsum(g, a, b, a, x);
    Ok(Outcome::split(g, lhs, rhs_2f1_same_terms(g, a, b, x)))
}

fn eval_f32_reduction(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let [a, b, c, d] = [v[0], v[1], v[2], v[3]].map(|j| g.chi(j as i64));
    let x = FElem(v[4]);
    Ok(Outcome::split(
        g,
        f32_lhs(g, a, b, c, d, x),
        rhs_3f2_terms(g, a, b, c, d, x),
    ))
}

fn eval_f1_expansion(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let p = f1(g, v);
    Ok(Outcome::split(g, f1_double(g, &p), thm21_terms(g, &p)?))
}

fn eval_f1_at_y1(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let p = f1(g, v);
    let terms = f1_at_y1_terms(g, p.a, p.b, p.bp, p.c, p.x);
    Ok(Outcome::split(g, f1_double(g, &p), terms))
}

fn eval_f1_expansion_y0(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let p = f1(g, v);
    Ok(Outcome::split(
        g,
        f1_double(g, &p),
        thm21_terms_unchecked(g, &p),
    ))
}

fn eval_f1_trivial_b(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let [a, b, c] = [v[0], v[1], v[2]].map(|j| g.chi(j as i64));
    let (x, y) = (FElem(v[3]), FElem(v[4]));
    let lhs = f1_double(
        g,
        &F1Params {
            a,
            b,
            bp: g.eps(),
            c,
            x,
            y,
        },
    );
    Ok(Outcome::split(g, lhs, thm31_terms(g, a, b, c, x, y)?))
}

fn eval_f1_trivial_bp(g: &CharGroup, v: &[u32], _: &mut Scratch) -> Result<Outcome> {
    let [a, bp, c] = [v[0], v[1], v[2]].map(|j| g.chi(j as i64));
    let (x, y) = (FElem(v[3]), FElem(v[4]));
    let lhs = f1_double(
        g,
        &F1Params {
            a,
            b: g.eps(),
            bp,
            c,
            x,
            y,
        },
    );
    Ok(Outcome::split(g, lhs, thm32_terms(g, a, bp, c, x, y)?))
}

/// Parameter order is `B, B', C, x, y, A, t` so consecutive cases share an `F1` table.
fn eval_genfun(g: &CharGroup, v: &[u32], scratch: &mut Scratch) -> Result<Outcome> {
    genfun_outcome(g, v, scratch, &[1; 9])
}

fn eval_genfun_amended(g: &CharGroup, v: &[u32], scratch: &mut Scratch) -> Result<Outcome> {
    genfun_outcome(g, v, scratch, &GENFUN_AMENDED_COEFFS)
}

fn genfun_outcome(
    g: &CharGroup,
    v: &[u32],
    scratch: &mut Scratch,
    coeffs: &[i64; 9],
) -> Result<Outcome> {
    let p = GenFunParams {
        f1: F1Params {
            b: g.chi(v[0] as i64),
            bp: g.chi(v[1] as i64),
            c: g.chi(v[2] as i64),
            x: FElem(v[3]),
            y: FElem(v[4]),
            a: g.chi(v[5] as i64),
        },
        t: FElem(v[6]),
    };
    let fresh = !scratch.f1_table.as_ref().is_some_and(|t| t.matches(&p.f1));
    if fresh {
        let f = &p.f1;
        scratch.f1_table = Some(F1Table::build(g, f.b, f.bp, f.c, f.x, f.y));
    }
    let table = scratch.f1_table.as_ref().expect("filled above");
    let lhs = genfun_lhs_with_table(g, table, &p)?;
    let terms = genfun_rhs_terms(g, &p)?
        .iter()
        .zip(coeffs)
        .map(|(t, &k)| t.scale(k))
        .collect();
    Ok(Outcome::split(g, lhs, terms))
}

fn theorem(id: &str, params: Vec<Param>, eval: Evaluator) -> Identity {
    Identity {
        id: id.to_string(),
        domain: Domain { params },
        eval,
        kind: IdentityKind::Theorem,
    }
}

/// Every registered identity, in [`IDENTITY_IDS`] order.
pub fn registry() -> Vec<Identity> {
    use PointSet::*;
    let ab = || vec![ch("A"), ch("B")];
    let genfun = || {
        vec![
            ch("B"),
            ch("Bp"),
            ch("C"),
            pt("x", Nonzero),
            pt("y", NonzeroNotOne),
            ch("A"),
            pt("t", NonzeroNotOne),
        ]
    };
    let f1_params = |y: PointSet| {
        vec![
            ch("A"),
            ch("B"),
            ch("Bp"),
            ch("C"),
            pt("x", All),
            pt("y", y),
        ]
    };
    vec![
        theorem("prop2.1.i", ab(), eval_binom_complement),
        theorem("prop2.1.ii", ab(), eval_binom_reflected),
        theorem("prop2.1.iii", ab(), eval_binom_inverted),
        theorem(
            "prop2.1.iv",
            vec![
                ch("A"),
                Param {
                    name: "form",
                    kind: ParamKind::Choice(2),
                },
            ],
            eval_binom_trivial_lower,
        ),
        theorem(
            "prop2.2",
            vec![ch("A"), pt("x", All)],
            eval_binomial_theorem,
        ),
        theorem(
            "greene3.6",
            vec![ch("A"), ch("B"), ch("C"), pt("x", All)],
            eval_f21_two_ways,
        ),
        theorem(
            "eq1.1",
            vec![ch("A"), ch("B"), ch("C"), pt("x", Only(1))],
            eval_f21_at_one,
        ),
        theorem(
            "prop3.1.a",
            vec![ch("A"), ch("C"), pt("x", All)],
            eval_f21_trivial_b,
        ),
        theorem(
            "prop3.1.b",
            vec![ch("A"), ch("B"), pt("x", All)],
            eval_f21_c_equals_a,
        ),
        theorem(
            "prop3.1.c",
            vec![ch("A"), ch("B"), ch("C"), ch("D"), pt("x", All)],
            eval_f32_reduction,
        ),
        theorem("eq1.2", f1_params(All), eval_f1_symmetry),
        theorem("thm2.1", f1_params(Nonzero), eval_f1_expansion),
        theorem("thm2.1.y1", f1_params(Only(1)), eval_f1_at_y1),
        theorem(
            "thm3.red.b",
            vec![
                ch("A"),
                ch("B"),
                ch("C"),
                pt("x", All),
                pt("y", NonzeroNotOne),
            ],
            eval_f1_trivial_b,
        ),
        theorem(
            "thm3.red.bp",
            vec![
                ch("A"),
                ch("Bp"),
                ch("C"),
                pt("x", NonzeroNotOne),
                pt("y", All),
            ],
            eval_f1_trivial_bp,
        ),
        theorem("thm4.1", genfun(), eval_genfun),
        theorem("thm4.1.amended", genfun(), eval_genfun_amended),
        Identity {
            id: "probe.thm2.1.y0".into(),
            domain: Domain {
                params: f1_params(Only(0)),
            },
            eval: eval_f1_expansion_y0,
            kind: IdentityKind::Probe,
        },
    ]
}

pub fn lookup(id: &str) -> Result<Identity> {
    registry()
        .into_iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// `count` tuples drawn uniformly with replacement.
    Sample {
        count: u64,
        seed: u64,
    },
}

impl Mode {
    pub fn seed(self) -> Option<u64> {
        match self {
            Mode::Exhaustive => None,
            Mode::Sample { seed, .. } => Some(seed),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub jobs: usize,
    /// Failures beyond this many are counted but not stored.
    pub max_failures: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            jobs: 1,
            max_failures: 256,
        }
    }
}

/// Tuple index of sample `i`.
pub fn sample_index(seed: u64, i: u64, cardinality: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng.random_range(0..cardinality)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Position of the case within the sweep.
    pub case: u64,
    pub params: Vec<(&'static str, u32)>,
    pub lhs: CycVal,
    pub rhs: CycVal,
    pub terms: Vec<CycVal>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Probes record agreement counts only.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub identity: String,
    pub q: u32,
    pub mode: Mode,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub duration_ms: u64,
    /// Total number of disagreeing cases, including ones not stored.
    pub failure_count: u64,
    pub kind: IdentityKind,
}

impl VerifyReport {
    pub fn verdict(&self) -> Verdict {
        match (self.kind, self.failure_count) {
            (IdentityKind::Probe, _) => Verdict::None,
            (_, 0) => Verdict::Pass,
            _ => Verdict::Fail,
        }
    }

    pub fn agreements(&self) -> u64 {
        self.cases - self.failure_count
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `duration_ms` fixed to zero, for byte comparisons.
    pub fn to_json_stable(&self) -> String {
        VerifyReport {
            duration_ms: 0,
            ..self.clone()
        }
        .to_json()
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sample { count, seed } => format!("sample n={count} seed={seed}"),
        };
        let verdict = match self.verdict() {
            Verdict::Pass => "PASS".to_string(),
            Verdict::Fail => format!("FAIL ({} counterexamples)", self.failure_count),
            Verdict::None => format!("PROBE equal in {}/{} cases", self.agreements(), self.cases),
        };
        format!(
            "{:<16} q={:<3} {:<28} cases={:<8} {} [{} ms]",
            self.identity, self.q, mode, self.cases, verdict, self.duration_ms
        )
    }
}

/// Exact value as `{"coeffs": [...], "den": ...}`.
pub struct ExactJson<'a>(pub &'a CycVal);

const JSON_SAFE: Coeff = (1 << 53) - 1;

fn put_int<S: Serializer>(s: S, v: Coeff) -> std::result::Result<S::Ok, S::Error> {
    if v.abs() <= JSON_SAFE {
        s.serialize_i64(v as i64)
    } else {
        s.serialize_str(&v.to_string())
    }
}

struct JsonInt(Coeff);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        put_int(s, self.0)
    }
}

impl Serialize for ExactJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<JsonInt> = self.0.coeffs().iter().map(|&c| JsonInt(c)).collect();
        let mut st = s.serialize_struct("Exact", 2)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("den", &JsonInt(self.0.den()))?;
        st.end()
    }
}

struct ParamsJson<'a>(&'a [(&'static str, u32)]);

impl Serialize for ParamsJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Failure {
    pub fn params_json(&self) -> String {
        serde_json::to_string(&ParamsJson(&self.params)).expect("params serialize")
    }
}

impl Serialize for Failure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<ExactJson> = self.terms.iter().map(ExactJson).collect();
        let mut st = s.serialize_struct("Failure", 5)?;
        st.serialize_field("params", &ParamsJson(&self.params))?;
        st.serialize_field("lhs", &ExactJson(&self.lhs))?;
        st.serialize_field("rhs", &ExactJson(&self.rhs))?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("case", &self.case)?;
        st.end()
    }
}

impl Serialize for VerifyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerifyReport", 10)?;
        st.serialize_field("identity", &self.identity)?;
        st.serialize_field("q", &self.q)?;
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample { .. } => "sample",
        };
        st.serialize_field("mode", mode)?;
        st.serialize_field("seed", &self.mode.seed())?;
        st.serialize_field("cases", &self.cases)?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("duration_ms", &self.duration_ms)?;
        st.serialize_field("failure_count", &self.failure_count)?;
        st.serialize_field("agreements", &self.agreements())?;
        st.serialize_field("verdict", &self.verdict())?;
        st.end()
    }
}

/// Sweeps a registered identity over `F_q`.
pub fn sweep(id: &str, q: u32, mode: Mode, jobs: usize) -> Result<VerifyReport> {
    let identity = lookup(id)?;
    let g = CharGroup::new(Arc::new(FieldCtx::build(q)?));
    sweep_identity(
        &identity,
        &g,
        mode,
        SweepOptions {
            jobs,
            ..Default::default()
        },
    )
}

/// Sweeps any identity, registered or not, over the field of `g`.
pub fn sweep_identity(
    identity: &Identity,
    g: &CharGroup,
    mode: Mode,
    opts: SweepOptions,
) -> Result<VerifyReport> {
    let q = g.q();
    let card = identity.domain.cardinality(q);
    if card == 0 {
        return Err(Error::EmptyDomain {
            identity: identity.id.clone(),
            q,
        });
    }
    let cases = match mode {
        Mode::Exhaustive => card,
        Mode::Sample { count, .. } if count >= 1 => count,
        Mode::Sample { .. } => return Err(Error::Usage("sample count must be at least 1".into())),
    };
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(e.to_string()))?;
    let failures: Vec<Failure> = pool.install(|| {
        (0..cases)
            .into_par_iter()
            .map_init(
                Scratch::default,
                |scratch, case| -> Result<Option<Failure>> {
                    let index = match mode {
                        Mode::Exhaustive => case,
                        Mode::Sample { seed, .. } => sample_index(seed, case, card),
                    };
                    let values = identity.domain.decode(q, index);
                    let out = (identity.eval)(g, &values, scratch)?;
                    if out.lhs.try_eq(&out.rhs)? {
                        return Ok(None);
                    }
                    let params = identity
                        .domain
                        .params
                        .iter()
                        .map(|p| p.name)
                        .zip(values)
                        .collect();
                    Ok(Some(Failure {
                        case,
                        params,
                        lhs: out.lhs,
                        rhs: out.rhs,
                        terms: out.terms,
                    }))
                },
            )
            .filter_map(|r| r.transpose())
            .collect::<Result<Vec<_>>>()
    })?;
    let failure_count = failures.len() as u64;
    let mut failures = failures;
    failures.truncate(opts.max_failures);
    Ok(VerifyReport {
        identity: identity.id.clone(),
        q,
        mode,
        cases,
        failures,
        duration_ms: start.elapsed().as_millis() as u64,
        failure_count,
        kind: identity.kind,
    })
}

/// Per-term view of one stored failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakdown {
    pub lhs: CycVal,
    pub terms: Vec<CycVal>,
    /// `lhs - sum(terms)` (or `lhs - rhs` when no terms are recorded).
    pub residual: CycVal,
}

impl Breakdown {
    /// Indices `k` (1-based) and small integer factors `c` with `residual = c * term_k`.
    pub fn localize(&self) -> Vec<(usize, i64)> {
        let mut hits = Vec::new();
        for (k, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for c in [1, -1, 2, -2] {
                if self.residual.try_eq(&t.scale(c)).unwrap_or(false) {
                    hits.push((k + 1, c));
                }
            }
        }
        hits
    }
}

/// Smallest-support integer combination `c` with `residual = sum_k c_k * term_k`
/// for every stored failure, with entries drawn from `values` (zero excluded)
/// and at most `max_support` nonzero entries. Entry `k` of the result refers
/// to term `k + 1`.
pub fn fit_residual(
    report: &VerifyReport,
    values: &[i64],
    max_support: usize,
) -> Result<Option<Vec<i64>>> {
    let cases: Vec<Breakdown> = (0..report.failures.len())
        .map(|i| explain_failure(report, i))
        .collect::<Result<_>>()?;
    let Some(width) = cases.first().map(|b| b.terms.len()) else {
        return Ok(None);
    };
    if width == 0 || cases.iter().any(|b| b.terms.len() != width) {
        return Ok(None);
    }
    let values: Vec<i64> = values.iter().copied().filter(|&v| v != 0).collect();
    for support in 1..=max_support.min(width) {
        let mut found = None;
        for_each_subset(width, support, &mut |idx| {
            if found.is_some() {
                return;
            }
            let mut digits = vec![0usize; support];
            loop {
                let mut coeffs = vec![0i64; width];
                for (&i, &d) in idx.iter().zip(&digits) {
                    coeffs[i] = values[d];
                }
                let fits = cases.iter().all(|b| {
                    let combo = b
                        .terms
                        .iter()
                        .zip(&coeffs)
                        .filter(|(_, &c)| c != 0)
                        .try_fold(CycVal::zero(b.lhs.order()), |acc, (t, &c)| {
                            acc.try_add(&t.scale(c))
                        });
                    combo.and_then(|c| c.try_eq(&b.residual)).unwrap_or(false)
                });
                if fits {
                    found = Some(coeffs);
                    return;
                }
                let mut pos = 0;
                while pos < support {
                    digits[pos] += 1;
                    if digits[pos] < values.len() {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == support {
                    return;
                }
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Renders a fitted combination as `-1*T2 -2*T5`.
pub fn describe_fit(coeffs: &[i64]) -> String {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, c)| format!("{c:+}*T{}", k + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn explain_failure(report: &VerifyReport, index: usize) -> Result<Breakdown> {
    let f = report.failures.get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: report.failures.len(),
    })?;
    let n = f.lhs.order();
    let rhs = if f.terms.is_empty() {
        f.rhs.clone()
    } else {
        f.terms
            .iter()
            .try_fold(CycVal::zero(n), |acc, t| acc.try_add(t))?
    };
    Ok(Breakdown {
        lhs: f.lhs.clone(),
        terms: f.terms.clone(),
        residual: f.lhs.try_sub(&rhs)?,
    })
}
