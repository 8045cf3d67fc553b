//! Gauss `2F1` and generalized `n+1Fn` over `F_q`, plus the three classical
//! reductions of `2F1(A, eps; C)`, `2F1(A, B; A)` and `3F2(A, B, C; A, D)`.
//!
//! `2F1` has two independent evaluators: a `q`-term point sum and a
//! `(q-1)`-term sum of binomial products. Character-sum values carry `den = q-1`.

use crate::chars::{CharGroup, CharIdx, CharValue};
use crate::cyclo::CycVal;
use crate::error::{Error, Result};
use crate::field::FElem;

/// `k * (product of character values) * (product of exact factors)`.
/// Any zero character value makes the whole term zero.
pub fn term(g: &CharGroup, k: i64, chars: &[CharValue], factors: &[&CycVal]) -> CycVal {
    let mut shift = 0u32;
    for c in chars {
        match c {
            CharValue::Zero => return g.zero(),
            CharValue::Root(e) => shift = (shift + e) % g.m(),
        }
    }
    if k == 0 {
        return g.zero();
    }
    let mut acc = g.int(1);
    for f in factors {
        acc = acc.try_mul(f).expect("factors share the field's order");
    }
    acc.rotate(shift).scale(k)
}

/// Sum of exact values with a common denominator.
pub fn sum_terms(g: &CharGroup, terms: &[CycVal]) -> CycVal {
    terms.iter().fold(g.zero(), |acc, t| {
        acc.try_add(t).expect("terms share the field's order")
    })
}

/// `eps(x) BC(-1) sum_y B(y) conj(B)C(1-y) conj(A)(1-xy)`.
pub fn f21_point(g: &CharGroup, a: CharIdx, b: CharIdx, c: CharIdx, x: FElem) -> CycVal {
    let f = g.field();
    let mut acc = g.zero();
    if x.is_zero() {
        return acc;
    }
    let m = g.m();
    let (bc, a_bar) = (b.conj() * c, a.conj());
    for y in f.elements() {
        let v = g
            .eval(b, y)
            .times(g.eval(bc, f.sub(FElem::ONE, y)), m)
            .times(g.eval(a_bar, f.sub(FElem::ONE, f.mul(x, y))), m);
        if let CharValue::Root(e) = v {
            acc.bump(e, 1);
        }
    }
    acc.rotate(g.sign_exp(b * c))
}

/// `(1/(q-1)) sum_chi {A chi choose chi} {B chi choose C chi} chi(x)`.
pub fn f21_charsum(g: &CharGroup, a: CharIdx, b: CharIdx, c: CharIdx, x: FElem) -> CycVal {
    let mut acc = g.zero();
    for chi in g.all() {
        if let CharValue::Root(e) = g.eval(chi, x) {
            let prod = g
                .binom(a * chi, chi)
                .try_mul(&g.binom(b * chi, c * chi))
                .expect("same order");
            acc.add_rotated(&prod, e, 1);
        }
    }
    acc.div_int(g.m() as u64)
}

/// Parameters of `n+1Fn(A_0, ..., A_n; B_1, ..., B_n | x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperParams {
    pub upper: Vec<CharIdx>,
    pub lower: Vec<CharIdx>,
    pub x: FElem,
}

impl HyperParams {
    pub fn new(upper: Vec<CharIdx>, lower: Vec<CharIdx>, x: FElem) -> Result<Self> {
        if upper.is_empty() || upper.len() != lower.len() + 1 {
            return Err(Error::ArityMismatch {
                expected: upper.len().saturating_sub(1),
                got: lower.len(),
            });
        }
        Ok(HyperParams { upper, lower, x })
    }
}

/// `(1/(q-1)) sum_chi {A_0 chi choose chi} prod_i {A_i chi choose B_i chi} chi(x)`.
pub fn hyper_charsum(g: &CharGroup, params: &HyperParams) -> Result<CycVal> {
    if params.upper.len() != params.lower.len() + 1 {
        return Err(Error::ArityMismatch {
            expected: params.upper.len().saturating_sub(1),
            got: params.lower.len(),
        });
    }
    let mut acc = g.zero();
    for chi in g.all() {
        let CharValue::Root(e) = g.eval(chi, params.x) else {
            continue;
        };
        let mut prod = g.binom(params.upper[0] * chi, chi).into_owned();
        for (&a, &b) in params.upper[1..].iter().zip(&params.lower) {
            prod = prod.try_mul(&g.binom(a * chi, b * chi))?;
        }
        acc.add_rotated(&prod, e, 1);
    }
    Ok(acc.div_int(g.m() as u64))
}

/// Terms of `2F1(A, eps; C | x)`:
/// `{C choose A} A(-1) conj(C)(x) conj(A)C(1-x)`, `-C(-1) eps(x)`,
/// `(q-1) A(-1) delta(1-x) delta(conj(A) C)`.
pub fn rhs_2f1_eps_terms(g: &CharGroup, a: CharIdx, c: CharIdx, x: FElem) -> Vec<CycVal> {
    let f = g.field();
    let one_minus_x = f.sub(FElem::ONE, x);
    let q1 = g.m() as i64;
    vec![
        term(
            g,
            1,
            &[
                g.at_neg_one(a),
                g.eval(c.conj(), x),
                g.eval(a.conj() * c, one_minus_x),
            ],
            &[&g.binom(c, a)],
        ),
        term(g, -g.eps_point(x), &[g.at_neg_one(c)], &[]),
        term(
            g,
            q1 * g.delta_point(one_minus_x) * g.delta_char(a.conj() * c),
            &[g.at_neg_one(a)],
            &[],
        ),
    ]
}

pub fn rhs_2f1_eps(g: &CharGroup, a: CharIdx, c: CharIdx, x: FElem) -> CycVal {
    sum_terms(g, &rhs_2f1_eps_terms(g, a, c, x))
}

/// Terms of `2F1(A, B; A | x)`:
/// `{B choose A} eps(x) conj(B)(1-x)`, `-conj(A)(-x)`, `(q-1) A(-1) delta(1-x) delta(B)`.
pub fn rhs_2f1_same_terms(g: &CharGroup, a: CharIdx, b: CharIdx, x: FElem) -> Vec<CycVal> {
    let f = g.field();
    let one_minus_x = f.sub(FElem::ONE, x);
    let q1 = g.m() as i64;
    vec![
        term(
            g,
            g.eps_point(x),
            &[g.eval(b.conj(), one_minus_x)],
            &[&g.binom(b, a)],
        ),
        term(g, -1, &[g.eval(a.conj(), f.neg(x))], &[]),
        term(
            g,
            q1 * g.delta_point(one_minus_x) * g.delta_char(b),
            &[g.at_neg_one(a)],
            &[],
        ),
    ]
}

pub fn rhs_2f1_same(g: &CharGroup, a: CharIdx, b: CharIdx, x: FElem) -> CycVal {
    sum_terms(g, &rhs_2f1_same_terms(g, a, b, x))
}

/// Terms of `3F2(A, B, C; A, D | x)`:
/// `{B choose A} 2F1(B, C; D | x)`, `-conj(A)(-x) {C conj(A) choose D conj(A)}`,
/// `(q-1) A(-1) conj(D)(x) conj(C)D(1-x) delta(B)`.
pub fn rhs_3f2_terms(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    c: CharIdx,
    d: CharIdx,
    x: FElem,
) -> Vec<CycVal> {
    let f = g.field();
    let q1 = g.m() as i64;
    let f21 = f21_charsum(g, b, c, d, x);
    vec![
        term(g, 1, &[], &[&g.binom(b, a), &f21]),
        term(
            g,
            -1,
            &[g.eval(a.conj(), f.neg(x))],
            &[&g.binom(c * a.conj(), d * a.conj())],
        ),
        term(
            g,
            q1 * g.delta_char(b),
            &[
                g.at_neg_one(a),
                g.eval(d.conj(), x),
                g.eval(c.conj() * d, f.sub(FElem::ONE, x)),
            ],
            &[],
        ),
    ]
}

pub fn rhs_3f2_reduction(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    c: CharIdx,
    d: CharIdx,
    x: FElem,
) -> CycVal {
    sum_terms(g, &rhs_3f2_terms(g, a, b, c, d, x))
}

/// `3F2(A, B, C; A, D | x)` through the generic character sum.
pub fn f32_lhs(g: &CharGroup, a: CharIdx, b: CharIdx, c: CharIdx, d: CharIdx, x: FElem) -> CycVal {
    let params = HyperParams {
        upper: vec![a, b, c],
        lower: vec![a, d],
        x,
    };
    hyper_charsum(g, &params).expect("arity is fixed")
}
