//! Small finite fields `F_q` backed by discrete-log, antilog and Zech tables.
//!
//! Elements are encoded as an index in `[0, q)`. For a prime field the index is
//! the residue itself; for `q = p^n` with `n > 1` it is the base-`p` digit
//! string of the polynomial representative (digit `i` is the coefficient of
//! `x^i`). Construction is deterministic: the modulus is the smallest monic
//! irreducible polynomial when its lower coefficients are read as a base-`p`
//! number with `x^{n-1}` most significant, and the generator is the smallest
//! index of multiplicative order `q - 1`.
//!
//! After construction all arithmetic goes through the tables:
//! multiplication adds logarithms, addition uses the Zech logarithm
//! `Z(k) = log(1 + g^k)`.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `q` accepted by [`FieldCtx::build`].
pub const Q_MAX: u32 = 4096;

const NO_LOG: u32 = u32::MAX;

/// An element of `F_q` as its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FElem(pub u32);

impl FElem {
    pub const ZERO: FElem = FElem(0);
    pub const ONE: FElem = FElem(1);

    pub fn idx(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with its lookup tables. Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    /// Full coefficient list `c_0..c_n` (monic, `c_n = 1`); empty when `n = 1`.
    modulus: Vec<u32>,
    generator: FElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    log_neg_one: u32,
}

/// Factor `q` as `p^n`, rejecting anything that is not a prime power.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotAPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest != 1 {
        return Err(Error::NotAPrimePower(q));
    }
    Ok((p as u32, n))
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Schoolbook polynomial arithmetic over `Z_p` on digit-encoded elements.
/// Only used while building and validating tables, and as a test oracle.
#[derive(Clone, Debug)]
pub(crate) struct PolyArith {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
}

impl PolyArith {
    pub(crate) fn new(p: u32, n: u32, modulus: Vec<u32>) -> Self {
        PolyArith { p, n, modulus }
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.n as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    pub(crate) fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        self.undigits(&d)
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let n = self.n as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce with x^n = -(c_0 + ... + c_{n-1} x^{n-1})
        for k in (n..prod.len()).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let sub = lead * self.modulus[i] as u64 % p;
                prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
            }
        }
        let out: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.undigits(&out)
    }

    pub(crate) fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Remainder of `a` modulo the monic `m` over `Z_p`; coefficient lists low to high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `v` (digit `i` = coefficient of `x^i`).
fn monic_from_index(v: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    let mut v = v;
    for _ in 0..deg {
        c.push(v % p);
        v /= p;
    }
    c.push(1);
    c
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg == 0 || *poly.last().unwrap() != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for v in 0..count {
            let f = monic_from_index(v as u32, d, p);
            if poly_rem(poly, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `n` over `Z_p`.
fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = p.pow(n);
    (0..count)
        .map(|v| monic_from_index(v, n, p))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

fn has_full_order(arith: &PolyArith, g: u32, order: u32, factors: &[u32]) -> bool {
    g != 0
        && arith.pow(g, order as u64) == 1
        && factors
            .iter()
            .all(|&r| arith.pow(g, (order / r) as u64) != 1)
}

impl FieldCtx {
    /// Builds `F_q` deterministically.
    pub fn build(q: u32) -> Result<Self> {
        let (p, n) = prime_power(q as u64)?;
        if q > Q_MAX {
            return Err(Error::LimitExceeded {
                q: q as u64,
                max: Q_MAX,
            });
        }
        let modulus = if n == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, n)
        };
        let arith = PolyArith::new(p, n, modulus.clone());
        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| has_full_order(&arith, g, order, &factors))
            .expect("F_q^* is cyclic");
        Ok(Self::from_parts(p, n, modulus, FElem(generator), &arith))
    }

    fn from_parts(p: u32, n: u32, modulus: Vec<u32>, generator: FElem, arith: &PolyArith) -> Self {
        let q = p.pow(n);
        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = 1u32;
        for k in 0..order {
            exp.push(cur);
            log[cur as usize] = k as u32;
            cur = arith.mul(cur, generator.0);
        }
        let zech = exp
            .iter()
            .map(|&gk| {
                let s = arith.add(1, gk);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let log_neg_one = log[arith.neg(1) as usize];
        FieldCtx {
            p,
            n,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
            log_neg_one,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FElem {
        self.generator
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Log table with `u32::MAX` at index 0.
    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn elements(&self) -> impl Iterator<Item = FElem> + '_ {
        (0..self.q).map(FElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FElem> + '_ {
        (1..self.q).map(FElem)
    }

    /// Embeds the integer `k` through `Z -> Z_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FElem {
        FElem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn elem(&self, idx: u32) -> Result<FElem> {
        if idx < self.q {
            Ok(FElem(idx))
        } else {
            Err(Error::DomainRestriction(format!(
                "element index {idx} not below q={}",
                self.q
            )))
        }
    }

    /// `g^k`.
    #[inline]
    pub fn exp(&self, k: u32) -> FElem {
        FElem(self.exp[(k % self.order()) as usize])
    }

    /// Discrete log base the generator, or `None` for zero.
    #[inline]
    pub fn log(&self, a: FElem) -> Option<u32> {
        let l = self.log[a.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    pub fn dlog(&self, a: FElem) -> Result<u32> {
        self.log(a).ok_or(Error::DlogOfZero)
    }

    /// `dlog(-1)`: `(q-1)/2` in odd characteristic, `0` in characteristic 2.
    pub fn log_neg_one(&self) -> u32 {
        self.log_neg_one
    }

    #[inline]
    fn reduce(&self, k: u32) -> u32 {
        let m = self.order();
        if k >= m {
            k - m
        } else {
            k
        }
    }

    #[inline]
    pub fn add(&self, a: FElem, b: FElem) -> FElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let (la, lb) = (self.log[a.0 as usize], self.log[b.0 as usize]);
        let d = if lb >= la {
            lb - la
        } else {
            lb + self.order() - la
        };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            FElem::ZERO
        } else {
            FElem(self.exp[self.reduce(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: FElem) -> FElem {
        if a.0 == 0 {
            return a;
        }
        let la = self.log[a.0 as usize];
        FElem(self.exp[self.reduce(la + self.log_neg_one) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FElem, b: FElem) -> FElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FElem, b: FElem) -> FElem {
        if a.0 == 0 || b.0 == 0 {
            return FElem::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FElem(self.exp[self.reduce(s) as usize])
    }

    pub fn inv(&self, a: FElem) -> Result<FElem> {
        let la = self.log(a).ok_or(Error::DivisionByZero)?;
        Ok(FElem(
            self.exp[((self.order() - la) % self.order()) as usize],
        ))
    }

    pub fn div(&self, a: FElem, b: FElem) -> Result<FElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FElem, e: u64) -> FElem {
        match self.log(a) {
            None if e == 0 => FElem::ONE,
            None => FElem::ZERO,
            Some(l) => self.exp(((l as u64 * e) % self.order() as u64) as u32),
        }
    }

    /// Modulus rendered as e.g. `x^2 + x + 1`; the prime itself when `n = 1`.
    pub fn modulus_string(&self) -> String {
        if self.n == 1 {
            return format!("(prime field, p = {})", self.p);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let s = match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            };
            parts.push(s);
        }
        parts.join(" + ")
    }

    #[cfg(test)]
    pub(crate) fn poly_arith(&self) -> PolyArith {
        PolyArith::new(self.p, self.n, self.modulus.clone())
    }
}

/// On-disk form of the tables. Zero's log is stored as `-1`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TableCache {
    pub version: u32,
    pub q: u32,
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub generator: u32,
    pub log_table: Vec<i64>,
}

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "FFHYPER_CACHE_DIR";

/// How a field was obtained from [`FieldCtx::load_or_build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Built,
    Loaded,
    /// A cache file existed but failed validation; the field was rebuilt.
    Rejected(String),
}

impl TableCache {
    pub fn from_field(f: &FieldCtx) -> Self {
        TableCache {
            version: CACHE_VERSION,
            q: f.q,
            p: f.p,
            n: f.n,
            modulus: f.modulus.clone(),
            generator: f.generator.0,
            log_table: f
                .log
                .iter()
                .map(|&l| if l == NO_LOG { -1 } else { l as i64 })
                .collect(),
        }
    }

    /// Checks every table invariant and rebuilds the context from the cached data.
    pub fn validate(&self) -> Result<FieldCtx> {
        let bad = |m: &str| Err(Error::InvalidCache(m.to_string()));
        if self.version != CACHE_VERSION {
            return bad("unsupported version");
        }
        let (p, n) = prime_power(self.q as u64).map_err(|e| Error::InvalidCache(e.to_string()))?;
        if (p, n) != (self.p, self.n) || self.q > Q_MAX {
            return bad("inconsistent q, p, n");
        }
        if n == 1 {
            if !self.modulus.is_empty() {
                return bad("prime field must have an empty modulus");
            }
        } else if self.modulus.len() != n as usize + 1
            || self.modulus.iter().any(|&c| c >= p)
            || !is_irreducible(&self.modulus, p)
        {
            return bad("modulus is not a monic irreducible polynomial of degree n");
        }
        if self.log_table.len() != self.q as usize || self.log_table[0] != -1 {
            return bad("log table has the wrong shape");
        }
        let arith = PolyArith::new(p, n, self.modulus.clone());
        let order = self.q - 1;
        if !has_full_order(&arith, self.generator, order, &prime_factors(order)) {
            return bad("generator does not have order q-1");
        }
        let ctx = FieldCtx::from_parts(p, n, self.modulus.clone(), FElem(self.generator), &arith);
        let matches = ctx.log.iter().zip(&self.log_table).all(|(&l, &c)| {
            if l == NO_LOG {
                c == -1
            } else {
                c == l as i64
            }
        });
        if !matches {
            return bad("log table disagrees with generator powers");
        }
        Ok(ctx)
    }
}

/// Path of the cache file for `q` under `dir`.
pub fn cache_path(dir: &Path, q: u32) -> PathBuf {
    dir.join(format!("field-q{q}.json"))
}

impl FieldCtx {
    pub fn write_cache(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = cache_path(dir, self.q);
        let body = serde_json::to_string(&TableCache::from_field(self))
            .map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(&path, body)?;
        Ok(path)
    }

    /// Loads validated tables from `dir` when present, otherwise builds them.
    /// A cache that fails validation is reported and ignored.
    pub fn load_or_build(q: u32, dir: Option<&Path>) -> Result<(Self, CacheStatus)> {
        prime_power(q as u64)?;
        if q > Q_MAX {
            return Err(Error::LimitExceeded {
                q: q as u64,
                max: Q_MAX,
            });
        }
        let Some(dir) = dir else {
            return Ok((Self::build(q)?, CacheStatus::Built));
        };
        let path = cache_path(dir, q);
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Ok((Self::build(q)?, CacheStatus::Built));
        };
        let parsed = serde_json::from_str::<TableCache>(&text)
            .map_err(|e| Error::InvalidCache(e.to_string()))
            .and_then(|c| {
                if c.q != q {
                    Err(Error::InvalidCache(format!("file is for q={}", c.q)))
                } else {
                    c.validate()
                }
            });
        match parsed {
            Ok(ctx) => Ok((ctx, CacheStatus::Loaded)),
            Err(e) => Ok((Self::build(q)?, CacheStatus::Rejected(e.to_string()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q5_generator_is_two() {
        // brute force: orders of 2,3,4 mod 5 are 4,4,2
        let order = |g: u64| (1..5).find(|&k| g.pow(k) % 5 == 1).unwrap();
        assert_eq!(order(2), 4);
        let f = FieldCtx::build(5).unwrap();
        assert_eq!((f.p(), f.n(), f.q()), (5, 1, 5));
        assert_eq!(f.generator(), FElem(2));
    }

    #[test]
    fn q4_modulus_is_x2_x_1() {
        // the four monic quadratics over Z_2 are x^2, x^2+1, x^2+x, x^2+x+1; only the last has no root
        let irreducible: Vec<u32> = (0..4)
            .filter(|&v| {
                let (c0, c1) = (v & 1, v >> 1);
                (0..2).all(|r| (r * r + c1 * r + c0) % 2 != 0)
            })
            .collect();
        assert_eq!(irreducible, vec![3]);
        let f = FieldCtx::build(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.modulus_string(), "x^2 + x + 1");
    }

    #[test]
    fn rejects_non_prime_powers_and_large_q() {
        assert_eq!(FieldCtx::build(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(FieldCtx::build(1).unwrap_err(), Error::NotAPrimePower(1));
        assert_eq!(FieldCtx::build(0).unwrap_err(), Error::NotAPrimePower(0));
        assert!(matches!(
            FieldCtx::build(8192),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn small_arithmetic_examples() {
        let f5 = FieldCtx::build(5).unwrap();
        assert_eq!(f5.mul(FElem(2), FElem(3)), FElem(1));
        assert_eq!(f5.dlog(FElem(1)).unwrap(), 0);
        assert_eq!(f5.dlog(FElem(4)).unwrap(), 2);
        assert_eq!(f5.dlog(FElem(0)), Err(Error::DlogOfZero));
        assert_eq!(f5.inv(FElem(0)), Err(Error::DivisionByZero));

        let f4 = FieldCtx::build(4).unwrap();
        // x * x = x^2 = x + 1
        assert_eq!(f4.mul(FElem(2), FElem(2)), FElem(3));
    }

    #[test]
    fn modulus_choices() {
        assert_eq!(FieldCtx::build(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::build(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::build(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    fn prime_powers_up_to(limit: u32) -> Vec<u32> {
        (2..=limit)
            .filter(|&q| prime_power(q as u64).is_ok())
            .collect()
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for q in prime_powers_up_to(64) {
            let f = FieldCtx::build(q).unwrap();
            let poly = f.poly_arith();
            for a in f.elements() {
                assert_eq!(f.neg(a).0, poly.neg(a.0));
                for b in f.elements() {
                    assert_eq!(f.add(a, b).0, poly.add(a.0, b.0), "q={q} {a}+{b}");
                    assert_eq!(f.mul(a, b).0, poly.mul(a.0, b.0), "q={q} {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn exp_log_invariants() {
        for q in prime_powers_up_to(256) {
            let f = FieldCtx::build(q).unwrap();
            let mut seen = vec![false; q as usize];
            for (k, &e) in f.exp_table().iter().enumerate() {
                assert!(!seen[e as usize]);
                seen[e as usize] = true;
                assert_eq!(f.log(FElem(e)), Some(k as u32));
            }
            assert!(!seen[0]);
            assert_eq!(f.pow(f.generator(), (q - 1) as u64), FElem::ONE);
            for a in f.nonzero() {
                for b in f.nonzero() {
                    let lhs = f.dlog(f.mul(a, b)).unwrap();
                    let rhs = (f.dlog(a).unwrap() + f.dlog(b).unwrap()) % (q - 1);
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FElem::ONE);
                assert_eq!(f.add(a, f.neg(a)), FElem::ZERO);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in prime_powers_up_to(64)
            .into_iter()
            .filter(|&q| prime_power(q as u64).unwrap().1 > 1)
        {
            let f = FieldCtx::build(q).unwrap();
            let p = f.p() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn cache_round_trip_and_tamper_detection() {
        let dir = tempfile::tempdir().unwrap();
        let (_, status) = FieldCtx::load_or_build(13, Some(dir.path())).unwrap();
        assert_eq!(status, CacheStatus::Built);
        let f = FieldCtx::build(13).unwrap();
        let path = f.write_cache(dir.path()).unwrap();
        let (g, status) = FieldCtx::load_or_build(13, Some(dir.path())).unwrap();
        assert_eq!(status, CacheStatus::Loaded);
        assert_eq!(g.log_table(), f.log_table());

        let mut cache: TableCache =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        cache.log_table.swap(2, 3);
        std::fs::write(&path, serde_json::to_string(&cache).unwrap()).unwrap();
        let (g, status) = FieldCtx::load_or_build(13, Some(dir.path())).unwrap();
        assert!(matches!(status, CacheStatus::Rejected(_)));
        assert_eq!(g.log_table(), f.log_table());

        std::fs::write(&path, "{not json").unwrap();
        let (_, status) = FieldCtx::load_or_build(13, Some(dir.path())).unwrap();
        assert!(matches!(status, CacheStatus::Rejected(_)));
    }

    #[test]
    fn cache_rejects_reducible_modulus() {
        let f = FieldCtx::build(9).unwrap();
        let mut c = TableCache::from_field(&f);
        c.modulus = vec![0, 0, 1];
        assert!(c.validate().is_err());
    }
}
