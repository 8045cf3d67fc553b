//! Multiplicative characters of `F_q^*`, Jacobi sums and binomial coefficients.
//!
//! Characters are indexed against the field's canonical generator `g`:
//! `chi_j(g^k) = zeta_{q-1}^{jk}`, and every character is extended by
//! `chi(0) = 0`, the trivial character included.

use std::borrow::Cow;
use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, OnceLock};

use crate::cyclo::CycVal;
use crate::field::{FElem, FieldCtx};

/// Fields up to this order memoize every Jacobi sum and binomial.
pub const MEMO_MAX_Q: u32 = 256;

/// The character `chi_j`, `j` taken modulo `m = q - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharIdx {
    j: u32,
    m: u32,
}

impl CharIdx {
    pub fn new(j: i64, m: u32) -> Self {
        assert!(m >= 1);
        CharIdx {
            j: j.rem_euclid(m as i64) as u32,
            m,
        }
    }

    pub fn trivial(m: u32) -> Self {
        CharIdx { j: 0, m }
    }

    pub fn index(self) -> u32 {
        self.j
    }

    pub fn modulus(self) -> u32 {
        self.m
    }

    pub fn is_trivial(self) -> bool {
        self.j == 0
    }

    /// The inverse (complex conjugate) character.
    pub fn conj(self) -> Self {
        CharIdx {
            j: (self.m - self.j) % self.m,
            m: self.m,
        }
    }

    pub fn pow(self, k: i64) -> Self {
        CharIdx::new(self.j as i64 * k, self.m)
    }
}

impl Mul for CharIdx {
    type Output = CharIdx;

    fn mul(self, rhs: CharIdx) -> CharIdx {
        debug_assert_eq!(self.m, rhs.m);
        let s = self.j + rhs.j;
        CharIdx {
            j: if s >= self.m { s - self.m } else { s },
            m: self.m,
        }
    }
}

impl fmt::Display for CharIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}", self.j)
    }
}

/// The value of a character at a point: `0` or a root of unity `zeta^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root(u32),
}

impl CharValue {
    pub fn is_zero(self) -> bool {
        matches!(self, CharValue::Zero)
    }

    /// Multiplies two values of characters with the same modulus `m`.
    #[inline]
    pub fn times(self, other: CharValue, m: u32) -> CharValue {
        match (self, other) {
            (CharValue::Root(a), CharValue::Root(b)) => CharValue::Root((a + b) % m),
            _ => CharValue::Zero,
        }
    }

    pub fn to_cyc(self, m: u32) -> CycVal {
        match self {
            CharValue::Zero => CycVal::zero(m as usize),
            CharValue::Root(e) => CycVal::root(m as usize, e as i64),
        }
    }
}

/// The character group of a field, with memo tables for Jacobi sums and
/// binomials. Memo entries are filled on first use and never change.
#[derive(Debug)]
pub struct CharGroup {
    field: Arc<FieldCtx>,
    m: u32,
    jacobi_memo: Option<Vec<OnceLock<CycVal>>>,
    binom_memo: Option<Vec<OnceLock<CycVal>>>,
}

impl CharGroup {
    pub fn new(field: Arc<FieldCtx>) -> Self {
        let m = field.order();
        let memo =
            || (field.q() <= MEMO_MAX_Q).then(|| (0..(m * m)).map(|_| OnceLock::new()).collect());
        CharGroup {
            jacobi_memo: memo(),
            binom_memo: memo(),
            field,
            m,
        }
    }

    pub fn for_q(q: u32) -> crate::Result<Self> {
        Ok(Self::new(Arc::new(FieldCtx::build(q)?)))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of characters, `q - 1`; also the cyclotomic order of all values.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m as usize
    }

    pub fn chi(&self, j: i64) -> CharIdx {
        CharIdx::new(j, self.m)
    }

    pub fn eps(&self) -> CharIdx {
        CharIdx::trivial(self.m)
    }

    pub fn all(&self) -> impl Iterator<Item = CharIdx> + '_ {
        (0..self.m).map(move |j| CharIdx { j, m: self.m })
    }

    pub fn zero(&self) -> CycVal {
        CycVal::zero(self.n())
    }

    pub fn int(&self, k: i64) -> CycVal {
        CycVal::from_int(self.n(), k)
    }

    #[inline]
    pub fn eval(&self, chi: CharIdx, x: FElem) -> CharValue {
        match self.field.log(x) {
            None => CharValue::Zero,
            Some(l) => CharValue::Root(((chi.j as u64 * l as u64) % self.m as u64) as u32),
        }
    }

    /// `chi(-1)`, evaluated at the field element `-1`.
    pub fn at_neg_one(&self, chi: CharIdx) -> CharValue {
        self.eval(chi, self.field.neg(FElem::ONE))
    }

    /// `chi(-1)` as an exponent (it is never zero).
    pub fn sign_exp(&self, chi: CharIdx) -> u32 {
        match self.at_neg_one(chi) {
            CharValue::Root(e) => e,
            CharValue::Zero => unreachable!("-1 is a unit"),
        }
    }

    pub fn delta_char(&self, chi: CharIdx) -> i64 {
        chi.is_trivial() as i64
    }

    pub fn delta_point(&self, x: FElem) -> i64 {
        x.is_zero() as i64
    }

    /// `eps(x)`: 1 on nonzero points, 0 at zero.
    pub fn eps_point(&self, x: FElem) -> i64 {
        (!x.is_zero()) as i64
    }

    /// `J(chi, lam) = sum_u chi(u) lam(1 - u)`, summed directly.
    pub fn jacobi_direct(&self, chi: CharIdx, lam: CharIdx) -> CycVal {
        let f = &*self.field;
        let mut acc = self.zero();
        for u in f.elements() {
            let v = self
                .eval(chi, u)
                .times(self.eval(lam, f.sub(FElem::ONE, u)), self.m);
            if let CharValue::Root(e) = v {
                acc.bump(e, 1);
            }
        }
        acc
    }

    fn slot(&self, a: CharIdx, b: CharIdx) -> usize {
        (a.j * self.m + b.j) as usize
    }

    pub fn jacobi(&self, chi: CharIdx, lam: CharIdx) -> Cow<'_, CycVal> {
        match &self.jacobi_memo {
            Some(memo) => Cow::Borrowed(
                memo[self.slot(chi, lam)].get_or_init(|| self.jacobi_direct(chi, lam)),
            ),
            None => Cow::Owned(self.jacobi_direct(chi, lam)),
        }
    }

    fn binom_uncached(&self, a: CharIdx, b: CharIdx) -> CycVal {
        self.jacobi(a, b.conj()).rotate(self.sign_exp(b))
    }

    /// The binomial `{A choose B} = B(-1) J(A, conj B)`.
    pub fn binom(&self, a: CharIdx, b: CharIdx) -> Cow<'_, CycVal> {
        match &self.binom_memo {
            Some(memo) => {
                Cow::Borrowed(memo[self.slot(a, b)].get_or_init(|| self.binom_uncached(a, b)))
            }
            None => Cow::Owned(self.binom_uncached(a, b)),
        }
    }

    /// `delta(x) + (1/(q-1)) sum_chi {A choose chi} chi(x)`.
    pub fn binomial_theorem_rhs(&self, a: CharIdx, x: FElem) -> CycVal {
        let m = self.m as i64;
        let mut acc = self.zero();
        acc.bump(0, self.delta_point(x) as i128 * m as i128);
        for chi in self.all() {
            if let CharValue::Root(e) = self.eval(chi, x) {
                acc.add_rotated(&self.binom(a, chi), e, 1);
            }
        }
        acc.div_int(m as u64)
    }

    /// Character sum `sum_u chi(u)`; equals `(q-1) delta(chi)`.
    pub fn character_sum(&self, chi: CharIdx) -> CycVal {
        let mut acc = self.zero();
        for u in self.field.elements() {
            if let CharValue::Root(e) = self.eval(chi, u) {
                acc.bump(e, 1);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn group(q: u32) -> CharGroup {
        CharGroup::for_q(q).unwrap()
    }

    /// Float oracle: sum over u of exp(2 pi i (j1 log u + j2 log(1-u)) / m).
    fn jacobi_float(g: &CharGroup, a: u32, b: u32) -> Complex64 {
        let f = g.field();
        let m = g.m() as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for u in 1..f.q() {
            let w = f.sub(FElem::ONE, FElem(u));
            if w.is_zero() {
                continue;
            }
            let e =
                a as f64 * f.dlog(FElem(u)).unwrap() as f64 + b as f64 * f.dlog(w).unwrap() as f64;
            s += Complex64::from_polar(1.0, std::f64::consts::TAU * e / m);
        }
        s
    }

    #[test]
    fn char_eval_examples() {
        let g = group(5);
        assert_eq!(g.eval(g.chi(3), FElem(0)), CharValue::Zero);
        assert_eq!(g.eval(g.eps(), FElem(0)), CharValue::Zero);
        assert_eq!(g.eval(g.eps(), FElem(3)), CharValue::Root(0));
        // 4 = 2^2, exponent 2*2 mod 4 = 0
        assert_eq!(g.eval(g.chi(2), FElem(4)), CharValue::Root(0));
        assert_eq!(g.eval(g.chi(2), FElem(2)), CharValue::Root(2));
    }

    #[test]
    fn deltas() {
        let g = group(5);
        assert_eq!(g.delta_char(g.eps()), 1);
        assert_eq!(g.delta_char(g.chi(1)), 0);
        assert_eq!(g.delta_char(g.chi(4)), 1);
        assert_eq!(g.delta_point(FElem(0)), 1);
        assert_eq!(g.delta_point(FElem(1)), 0);
        assert_eq!(g.delta_point(FElem(4)), 0);
    }

    #[test]
    fn jacobi_examples() {
        for q in [3, 4, 5, 7, 8, 9] {
            let g = group(q);
            assert_eq!(g.jacobi(g.eps(), g.eps()).as_integer(), Some(q as i128 - 2));
        }
        let g5 = group(5);
        let quad = g5.chi(2);
        assert_eq!(g5.jacobi(quad, quad).as_integer(), Some(-1));
        assert!((g5.jacobi(quad, quad).to_complex() - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        assert!((jacobi_float(&g5, 2, 2) - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        let g3 = group(3);
        assert_eq!(g3.jacobi(g3.chi(1), g3.chi(1)).as_integer(), Some(1));
    }

    #[test]
    fn binom_examples() {
        let g = group(5);
        assert_eq!(g.binom(g.chi(1), g.eps()).as_integer(), Some(-1));
        assert_eq!(g.binom(g.eps(), g.eps()).as_integer(), Some(3));
        let g3 = group(3);
        assert_eq!(g3.binom(g3.chi(1), g3.chi(1)).as_integer(), Some(-1));
    }

    #[test]
    fn binomial_theorem_examples() {
        let g = group(5);
        for a in g.all() {
            let rhs = g.binomial_theorem_rhs(a, FElem(0));
            assert_eq!(rhs.as_integer(), Some(1));
        }
        // chi_2(1 + 3) = chi_2(4) = 1
        let rhs = g.binomial_theorem_rhs(g.chi(2), FElem(3));
        assert_eq!(rhs.as_integer(), Some(1));
    }

    #[test]
    fn jacobi_matches_float_oracle() {
        for q in [7, 8, 9, 11] {
            let g = group(q);
            for a in g.all() {
                for b in g.all() {
                    let exact = g.jacobi(a, b).to_complex();
                    assert!((exact - jacobi_float(&g, a.index(), b.index())).norm() < 1e-9);
                    if !a.is_trivial() && !b.is_trivial() && !(a * b).is_trivial() {
                        assert!((exact.norm_sqr() - q as f64).abs() < 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn memo_and_direct_agree_beyond_memo_limit() {
        let f = Arc::new(FieldCtx::build(257).unwrap());
        let g = CharGroup::new(f);
        let (a, b) = (g.chi(5), g.chi(100));
        assert!(matches!(g.jacobi(a, b), Cow::Owned(_)));
        assert_eq!(*g.jacobi(a, b), g.jacobi_direct(a, b));
    }

    #[test]
    fn char_arithmetic() {
        let g = group(7);
        let a = g.chi(4);
        assert_eq!((a * a.conj()), g.eps());
        assert_eq!(a.pow(3), g.chi(0));
        assert_eq!(g.chi(-1), g.chi(5));
    }
}
