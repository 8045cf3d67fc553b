//! Exact values in `(1/den) * Z[zeta_n]`.
//!
//! A [`CycVal`] is stored in the group ring `Z[x]/(x^n - 1)`: entry `e` of
//! `coeffs` is the multiplicity of `zeta_n^e`. Sums of character values land
//! here by bumping a single coefficient. Distinct group-ring vectors can name
//! the same complex number, so equality reduces the cross-multiplied numerator
//! modulo the cyclotomic polynomial `Phi_n`.
//!
//! Coefficients are `i128` with checked arithmetic on every accumulation, so an
//! overflow panics instead of corrupting a verdict. The reduction modulo
//! `Phi_n` retries in arbitrary precision if `i128` is not wide enough.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Coeff = i128;

#[inline]
fn ck_add(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

#[inline]
fn ck_mul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

fn gcd(mut a: Coeff, mut b: Coeff) -> Coeff {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// `Phi_n` as integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPoly {
    pub n: usize,
    pub coeffs: Vec<i64>,
}

impl CycloPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `num` by monic `den`; panics if the division is not exact.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = r[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                r[k + i] -= c * d;
            }
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn compute_cyclotomic(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        num = poly_div_exact(&num, &cyclotomic_poly(d).coeffs);
    }
    num
}

fn cyclo_cache() -> &'static RwLock<HashMap<usize, Arc<CycloPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, memoized process-wide.
pub fn cyclotomic_poly(n: usize) -> Arc<CycloPoly> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    if let Some(p) = cyclo_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let poly = Arc::new(CycloPoly {
        n,
        coeffs: compute_cyclotomic(n),
    });
    cyclo_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(poly)
        .clone()
}

/// Polynomial product of two coefficient lists; exposed for identity checks on `Phi_d`.
pub fn poly_product(a: &[i64], b: &[i64]) -> Vec<i64> {
    poly_mul(a, b)
}

/// An exact element of `(1/den) * Z[zeta_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycVal {
    coeffs: Vec<Coeff>,
    den: Coeff,
}

impl CycVal {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        CycVal {
            coeffs: vec![0; n],
            den: 1,
        }
    }

    /// `zeta_n^e`.
    pub fn root(n: usize, e: i64) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[e.rem_euclid(n as i64) as usize] = 1;
        v
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[0] = k as Coeff;
        v
    }

    pub fn from_parts(coeffs: Vec<Coeff>, den: Coeff) -> Self {
        assert!(!coeffs.is_empty() && den > 0);
        CycVal { coeffs, den }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn den(&self) -> Coeff {
        self.den
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    /// Adds `k * zeta^e` to the numerator (ignores `den`).
    #[inline]
    pub fn bump(&mut self, e: u32, k: Coeff) {
        let slot = &mut self.coeffs[e as usize];
        *slot = ck_add(*slot, k);
    }

    /// Adds `k * zeta^shift * other` to the numerator. Both must share `den`.
    pub fn add_rotated(&mut self, other: &CycVal, shift: u32, k: Coeff) {
        debug_assert_eq!(self.order(), other.order());
        debug_assert_eq!(self.den, other.den);
        let n = self.order();
        let shift = shift as usize % n;
        for (i, &c) in other.coeffs.iter().enumerate() {
            if c != 0 {
                let j = if i + shift >= n {
                    i + shift - n
                } else {
                    i + shift
                };
                self.coeffs[j] = ck_add(self.coeffs[j], ck_mul(c, k));
            }
        }
    }

    /// Multiplies by `zeta^shift`.
    pub fn rotate(&self, shift: u32) -> CycVal {
        let n = self.order();
        let shift = shift as usize % n;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % n] = c;
        }
        CycVal {
            coeffs,
            den: self.den,
        }
    }

    fn lift(&self, factor: Coeff) -> Vec<Coeff> {
        self.coeffs.iter().map(|&c| ck_mul(c, factor)).collect()
    }

    pub fn try_add(&self, other: &CycVal) -> Result<CycVal> {
        self.check(other)?;
        let g = gcd(self.den, other.den);
        let (fa, fb) = (other.den / g, self.den / g);
        let mut coeffs = self.lift(fa);
        for (c, &o) in coeffs.iter_mut().zip(&other.coeffs) {
            *c = ck_add(*c, ck_mul(o, fb));
        }
        Ok(CycVal {
            coeffs,
            den: ck_mul(self.den, fa),
        })
    }

    pub fn try_sub(&self, other: &CycVal) -> Result<CycVal> {
        self.try_add(&other.scale(-1))
    }

    /// Cyclic convolution of numerators; denominators multiply.
    pub fn try_mul(&self, other: &CycVal) -> Result<CycVal> {
        self.check(other)?;
        let n = self.order();
        let mut coeffs = vec![0; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = if i + j >= n { i + j - n } else { i + j };
                    coeffs[k] = ck_add(coeffs[k], ck_mul(a, b));
                }
            }
        }
        Ok(CycVal {
            coeffs,
            den: ck_mul(self.den, other.den),
        })
    }

    pub fn scale(&self, k: i64) -> CycVal {
        CycVal {
            coeffs: self.lift(k as Coeff),
            den: self.den,
        }
    }

    /// Divides by `m` by growing the denominator; coefficients are untouched.
    pub fn div_int(&self, m: u64) -> CycVal {
        assert!(m > 0, "div_int by zero");
        CycVal {
            coeffs: self.coeffs.clone(),
            den: ck_mul(self.den, m as Coeff),
        }
    }

    /// True when the value is zero in `Q(zeta_n)`.
    pub fn is_zero(&self) -> bool {
        numerator_vanishes(&self.coeffs)
    }

    pub fn try_eq(&self, other: &CycVal) -> Result<bool> {
        self.check(other)?;
        if self.den == other.den {
            let diff: Vec<Coeff> = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a.checked_sub(b).expect("cyclotomic coefficient overflow"))
                .collect();
            return Ok(numerator_vanishes(&diff));
        }
        let diff: Vec<Coeff> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| {
                ck_mul(a, other.den)
                    .checked_sub(ck_mul(b, self.den))
                    .expect("cyclotomic coefficient overflow")
            })
            .collect();
        Ok(numerator_vanishes(&diff))
    }

    /// Floating-point evaluation at `zeta_n = exp(2 pi i / n)`. Diagnostics only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        let sum: Complex64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * e as f64 / n))
            .sum();
        sum / self.den as f64
    }

    /// The canonical remainder modulo `Phi_n` of the numerator, if it fits in `i128`.
    pub fn reduced_numerator(&self) -> Option<Vec<Coeff>> {
        let phi = cyclotomic_poly(self.order());
        reduce_i128(&self.coeffs, &phi.coeffs)
    }

    /// If the value is a rational integer, returns it.
    pub fn as_integer(&self) -> Option<i128> {
        let r = self.reduced_numerator()?;
        if r.iter().skip(1).any(|&c| c != 0) {
            return None;
        }
        let c0 = r.first().copied().unwrap_or(0);
        (c0 % self.den == 0).then_some(c0 / self.den)
    }
}

fn reduce_i128(num: &[Coeff], phi: &[i64]) -> Option<Vec<Coeff>> {
    let mut r = num.to_vec();
    let dphi = phi.len() - 1;
    while r.len() > dphi {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dphi;
        if lead != 0 {
            for (i, &c) in phi.iter().enumerate() {
                let sub = lead.checked_mul(c as Coeff)?;
                r[shift + i] = r[shift + i].checked_sub(sub)?;
            }
        }
        r.pop();
    }
    Some(r)
}

fn reduce_big(num: &[Coeff], phi: &[i64]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = num.iter().map(|&c| BigInt::from(c)).collect();
    let dphi = phi.len() - 1;
    while r.len() > dphi {
        let lead = r.pop().unwrap();
        let shift = r.len() - dphi;
        if lead != BigInt::from(0) {
            for (i, &c) in phi.iter().take(dphi).enumerate() {
                r[shift + i] -= &lead * c;
            }
        }
    }
    r
}

fn numerator_vanishes(num: &[Coeff]) -> bool {
    if num.iter().all(|&c| c == 0) {
        return true;
    }
    let phi = cyclotomic_poly(num.len());
    match reduce_i128(num, &phi.coeffs) {
        Some(r) => r.iter().all(|&c| c == 0),
        None => reduce_big(num, &phi.coeffs)
            .iter()
            .all(|c| *c == BigInt::from(0)),
    }
}

impl fmt::Display for CycVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        let mut terms = Vec::new();
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match e {
                0 => format!("{c}"),
                _ if c == 1 => format!("z^{e}"),
                _ => format!("{c}*z^{e}"),
            });
        }
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if self.den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}
