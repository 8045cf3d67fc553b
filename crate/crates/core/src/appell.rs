//! The double-sum analogue of Appell's `F1` over `F_q`,
//!
//! ```text
//! F1(A; B, B'; C; x, y) = eps(xy) BB'(-1) sum_{u,v} B(u) B'(v) C conj(B) conj(B')(1-u-v) conj(A)(1-ux-vy),
//! ```
//!
//! the older single-sum analogue, and exact evaluators for the right-hand sides
//! of its expansion into binomials, the closed form at `y = 1`, the two
//! reductions to `2F1` when one of `B, B'` is trivial, and the generating
//! function over the first parameter.
//!
//! Every right-hand side is returned term by term so a disagreement can be
//! traced to one displayed term. `2F1` and binomial factors are always
//! recomputed through [`crate::hyper`] and [`crate::chars`].

use crate::chars::{CharGroup, CharIdx, CharValue};
use crate::cyclo::CycVal;
use crate::error::{Error, Result};
use crate::field::FElem;
use crate::hyper::{f21_charsum, sum_terms, term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F1Params {
    pub a: CharIdx,
    pub b: CharIdx,
    pub bp: CharIdx,
    pub c: CharIdx,
    pub x: FElem,
    pub y: FElem,
}

impl F1Params {
    /// Exchanges `(B, x)` with `(B', y)`.
    pub fn swapped(self) -> Self {
        F1Params {
            b: self.bp,
            bp: self.b,
            x: self.y,
            y: self.x,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenFunParams {
    pub f1: F1Params,
    pub t: FElem,
}

/// `F1(A; B, B'; C; x, y)` as the `q^2`-term double sum.
pub fn f1_double(g: &CharGroup, p: &F1Params) -> CycVal {
    let f = g.field();
    let m = g.m();
    let mut acc = g.zero();
    if p.x.is_zero() || p.y.is_zero() {
        return acc;
    }
    let mid = p.c * p.b.conj() * p.bp.conj();
    let a_bar = p.a.conj();
    for u in f.nonzero() {
        let bu = g.eval(p.b, u);
        let one_minus_u = f.sub(FElem::ONE, u);
        let one_minus_ux = f.sub(FElem::ONE, f.mul(u, p.x));
        for v in f.nonzero() {
            let w = bu
                .times(g.eval(p.bp, v), m)
                .times(g.eval(mid, f.sub(one_minus_u, v)), m);
            if w.is_zero() {
                continue;
            }
            let w = w.times(g.eval(a_bar, f.sub(one_minus_ux, f.mul(v, p.y))), m);
            if let CharValue::Root(e) = w {
                acc.bump(e, 1);
            }
        }
    }
    acc.rotate(g.sign_exp(p.b * p.bp))
}

/// The single-sum analogue
/// `eps(xy) AC(-1) sum_u A(u) conj(A)C(1-u) conj(B)(1-ux) conj(B')(1-uy)`.
/// A different function from [`f1_double`]; kept for comparison.
pub fn f1_single(g: &CharGroup, p: &F1Params) -> CycVal {
    let f = g.field();
    let m = g.m();
    let mut acc = g.zero();
    if p.x.is_zero() || p.y.is_zero() {
        return acc;
    }
    let ac = p.a.conj() * p.c;
    for u in f.nonzero() {
        let w = g
            .eval(p.a, u)
            .times(g.eval(ac, f.sub(FElem::ONE, u)), m)
            .times(g.eval(p.b.conj(), f.sub(FElem::ONE, f.mul(u, p.x))), m)
            .times(g.eval(p.bp.conj(), f.sub(FElem::ONE, f.mul(u, p.y))), m);
        if let CharValue::Root(e) = w {
            acc.bump(e, 1);
        }
    }
    acc.rotate(g.sign_exp(p.a * p.c))
}

/// The four parts of the binomial expansion of `F1`, without the `y != 0` check.
pub(crate) fn thm21_terms_unchecked(g: &CharGroup, p: &F1Params) -> Vec<CycVal> {
    let f = g.field();
    let q1 = g.m() as i64;
    let (a, b, bp, c) = (p.a, p.b, p.bp, p.c);
    let neg_x = f.neg(p.x);
    let neg_y = f.neg(p.y);

    // (1/(q-1)^2) sum_{lam,mu} {A lam, lam}{A lam mu, mu}{~B~B'C, ~B'C lam}{~B'C lam, C lam mu} lam(-x) mu(-y)
    let mut double = g.zero();
    let top = b.conj() * bp.conj() * c;
    for lam in g.all() {
        let CharValue::Root(el) = g.eval(lam, neg_x) else {
            continue;
        };
        let mid = bp.conj() * c * lam;
        let mut inner = g.zero();
        for mu in g.all() {
            let CharValue::Root(em) = g.eval(mu, neg_y) else {
                continue;
            };
            let pair = g
                .binom(a * lam * mu, mu)
                .try_mul(&g.binom(mid, c * lam * mu))
                .expect("same order");
            inner.add_rotated(&pair, em, 1);
        }
        let outer = g
            .binom(a * lam, lam)
            .try_mul(&g.binom(top, mid))
            .expect("same order");
        double.add_rotated(&outer.try_mul(&inner).expect("same order"), el, 1);
    }
    let double = double.div_int((q1 * q1) as u64);

    let ab_c = a * bp * c.conj();
    let tail = a.conj() * bp.conj() * c;
    let one_minus_y = f.sub(FElem::ONE, p.y);
    let second = term(
        g,
        1,
        &[
            g.at_neg_one(c),
            g.eval(bp * c.conj(), p.x),
            g.eval(tail, one_minus_y),
        ],
        &[&g.binom(ab_c, bp * c.conj())],
    );
    let third = term(
        g,
        1,
        &[
            g.at_neg_one(b * c),
            g.eval(a.conj(), p.x),
            g.eval(a * c.conj(), p.y),
            g.eval(tail, one_minus_y),
        ],
        &[&g.binom(ab_c, a * b.conj())],
    );
    let delta = term(
        g,
        q1 * g.delta_char(a * c.conj() * bp) * g.delta_point(f.sub(p.y, FElem::ONE)),
        &[g.eval(a.conj(), p.x), g.at_neg_one(bp)],
        &[],
    );
    vec![double, second, third, delta]
}

/// Right-hand side of the binomial expansion of `F1`, term by term.
/// Requires `y != 0`.
pub fn thm21_terms(g: &CharGroup, p: &F1Params) -> Result<Vec<CycVal>> {
    if p.y.is_zero() {
        return Err(Error::DomainRestriction("y must be nonzero".into()));
    }
    Ok(thm21_terms_unchecked(g, p))
}

pub fn thm21_rhs(g: &CharGroup, p: &F1Params) -> Result<CycVal> {
    Ok(sum_terms(g, &thm21_terms(g, p)?))
}

/// Closed form of `F1(A; B, B'; C; x, 1)`:
/// `AB'(-1) {B' choose conj(A)C} 2F1(A, B; C conj(B') | x)` and
/// `(q-1) conj(A)(x) B'(-1) delta(A conj(C) B')`.
pub fn f1_at_y1_terms(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    bp: CharIdx,
    c: CharIdx,
    x: FElem,
) -> Vec<CycVal> {
    let q1 = g.m() as i64;
    let f21 = f21_charsum(g, a, b, c * bp.conj(), x);
    vec![
        term(
            g,
            1,
            &[g.at_neg_one(a * bp)],
            &[&g.binom(bp, a.conj() * c), &f21],
        ),
        term(
            g,
            q1 * g.delta_char(a * c.conj() * bp),
            &[g.eval(a.conj(), x), g.at_neg_one(bp)],
            &[],
        ),
    ]
}

pub fn f1_at_y1_rhs(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    bp: CharIdx,
    c: CharIdx,
    x: FElem,
) -> CycVal {
    sum_terms(g, &f1_at_y1_terms(g, a, b, bp, c, x))
}

/// Reduction of `F1(A; B, eps; C; x, y)`, valid for `y` outside `{0, 1}`.
pub fn thm31_terms(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    c: CharIdx,
    x: FElem,
    y: FElem,
) -> Result<Vec<CycVal>> {
    if y.is_zero() || y == FElem::ONE {
        return Err(Error::DomainRestriction(
            "y must lie in F_q^* minus {1}".into(),
        ));
    }
    Ok(reduction_terms(g, a, b, c, x, y))
}

/// Reduction of `F1(A; eps, B'; C; x, y)`, valid for `x` outside `{0, 1}`.
pub fn thm32_terms(
    g: &CharGroup,
    a: CharIdx,
    bp: CharIdx,
    c: CharIdx,
    x: FElem,
    y: FElem,
) -> Result<Vec<CycVal>> {
    if x.is_zero() || x == FElem::ONE {
        return Err(Error::DomainRestriction(
            "x must lie in F_q^* minus {1}".into(),
        ));
    }
    Ok(reduction_terms(g, a, bp, c, y, x))
}

/// The four-term reduction with `s` the free argument and `r` the other one.
fn reduction_terms(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    c: CharIdx,
    s: FElem,
    r: FElem,
) -> Vec<CycVal> {
    let f = g.field();
    let q1 = g.m() as i64;
    let one_minus_r = f.sub(FElem::ONE, r);
    let r_minus_s = f.sub(r, s);
    let f21 = f21_charsum(g, a, b, c, s);
    vec![
        term(g, -1, &[g.at_neg_one(c)], &[&f21]),
        term(
            g,
            g.eps_point(s),
            &[
                g.eval(b * c.conj(), r),
                g.eval(a.conj() * c, one_minus_r),
                g.eval(b.conj(), r_minus_s),
            ],
            &[&g.binom(a * c.conj(), a), &g.binom(b, c)],
        ),
        term(
            g,
            q1 * g.delta_point(r_minus_s) * g.delta_char(b),
            &[
                g.eval(c.conj(), r),
                g.eval(a.conj() * c, f.sub(r, FElem::ONE)),
            ],
            &[&g.binom(c, a)],
        ),
        term(
            g,
            q1 * g.delta_char(c),
            &[
                g.eval(c.conj(), s),
                g.eval(b * c.conj(), r),
                g.eval(a.conj() * c, one_minus_r),
                g.eval(b.conj() * c, r_minus_s),
            ],
            &[],
        ),
    ]
}

pub fn thm31_rhs(
    g: &CharGroup,
    a: CharIdx,
    b: CharIdx,
    c: CharIdx,
    x: FElem,
    y: FElem,
) -> Result<CycVal> {
    Ok(sum_terms(g, &thm31_terms(g, a, b, c, x, y)?))
}

pub fn thm32_rhs(
    g: &CharGroup,
    a: CharIdx,
    bp: CharIdx,
    c: CharIdx,
    x: FElem,
    y: FElem,
) -> Result<CycVal> {
    Ok(sum_terms(g, &thm32_terms(g, a, bp, c, x, y)?))
}

fn check_genfun_domain(p: &GenFunParams) -> Result<()> {
    let bad = |v: FElem| v.is_zero() || v == FElem::ONE;
    if p.f1.x.is_zero() || bad(p.f1.y) || bad(p.t) {
        return Err(Error::DomainRestriction(
            "need x in F_q^* and y, t in F_q^* minus {1}".into(),
        ));
    }
    Ok(())
}

/// `F1(theta; B, B'; C; x, y)` for every first character `theta`, with the
/// other parameters fixed.
#[derive(Clone, Debug)]
pub struct F1Table {
    pub b: CharIdx,
    pub bp: CharIdx,
    pub c: CharIdx,
    pub x: FElem,
    pub y: FElem,
    values: Vec<CycVal>,
}

impl F1Table {
    pub fn build(g: &CharGroup, b: CharIdx, bp: CharIdx, c: CharIdx, x: FElem, y: FElem) -> Self {
        let values = g
            .all()
            .map(|a| f1_double(g, &F1Params { a, b, bp, c, x, y }))
            .collect();
        F1Table {
            b,
            bp,
            c,
            x,
            y,
            values,
        }
    }

    pub fn get(&self, a: CharIdx) -> &CycVal {
        &self.values[a.index() as usize]
    }

    pub fn matches(&self, p: &F1Params) -> bool {
        (self.b, self.bp, self.c, self.x, self.y) == (p.b, p.bp, p.c, p.x, p.y)
    }
}

/// `(1/(q-1)) sum_theta {A theta choose theta} F1(A theta; B, B'; C; x, y) theta(t)`.
pub fn genfun_lhs(g: &CharGroup, p: &GenFunParams) -> Result<CycVal> {
    let f1 = &p.f1;
    let table = F1Table::build(g, f1.b, f1.bp, f1.c, f1.x, f1.y);
    genfun_lhs_with_table(g, &table, p)
}

/// As [`genfun_lhs`], reading `F1` values from a prebuilt table.
pub fn genfun_lhs_with_table(g: &CharGroup, table: &F1Table, p: &GenFunParams) -> Result<CycVal> {
    check_genfun_domain(p)?;
    assert!(table.matches(&p.f1), "table built for different parameters");
    let mut acc = g.zero();
    for theta in g.all() {
        let CharValue::Root(e) = g.eval(theta, p.t) else {
            continue;
        };
        let at = p.f1.a * theta;
        let prod = g
            .binom(at, theta)
            .try_mul(table.get(at))
            .expect("same order");
        acc.add_rotated(&prod, e, 1);
    }
    Ok(acc.div_int(g.m() as u64))
}

/// The nine right-hand-side terms of the generating function, in display order.
pub fn genfun_rhs_terms(g: &CharGroup, p: &GenFunParams) -> Result<Vec<CycVal>> {
    check_genfun_domain(p)?;
    let f = g.field();
    let q1 = g.m() as i64;
    let F1Params { a, b, bp, c, x, y } = p.f1;
    let t = p.t;
    let one_minus_t = f.sub(FElem::ONE, t);
    let one_minus_y = f.sub(FElem::ONE, y);
    let one_minus_t_minus_y = f.sub(one_minus_t, y);
    let neg_t = f.neg(t);
    let ab_c = a * bp * c.conj();
    let tail = a.conj() * bp.conj() * c;
    let binom_abc = g.binom(ab_c, a * b.conj());

    // 1: conj(A)(1-t) F1(A; B, B'; C; x/(1-t), y/(1-t))
    let shifted = F1Params {
        x: f.div(x, one_minus_t)?,
        y: f.div(y, one_minus_t)?,
        ..p.f1
    };
    let t1 = term(
        g,
        1,
        &[g.eval(a.conj(), one_minus_t)],
        &[&f1_double(g, &shifted)],
    );

    // 2: -BC(-1) B'(1-t) conj(A)(x) A conj(C)(y) {AB' conj(C) choose A conj(B)} conj(A B') C(1-t-y)
    let t2 = term(
        g,
        -1,
        &[
            g.at_neg_one(b * c),
            g.eval(bp, one_minus_t),
            g.eval(a.conj(), x),
            g.eval(a * c.conj(), y),
            g.eval(tail, one_minus_t_minus_y),
        ],
        &[&binom_abc],
    );

    // 3: -conj(A)(-t) B'(-1) conj(C)(y) conj(B')C(1-y) 2F1(A, B; conj(B')C | x(1-y)/(ty))
    let arg3 = f.div(f.mul(x, one_minus_y), f.mul(t, y))?;
    let f21_3 = f21_charsum(g, a, b, bp.conj() * c, arg3);
    let t3 = term(
        g,
        -1,
        &[
            g.eval(a.conj(), neg_t),
            g.at_neg_one(bp),
            g.eval(c.conj(), y),
            g.eval(bp.conj() * c, one_minus_y),
        ],
        &[&f21_3],
    );

    // 4: -conj(A)(-t) {conj(B')C choose C} {conj(B) conj(B') C choose conj(B')C}
    let t4 = term(
        g,
        -1,
        &[g.eval(a.conj(), neg_t)],
        &[
            &g.binom(bp.conj() * c, c),
            &g.binom(b.conj() * bp.conj() * c, bp.conj() * c),
        ],
    );

    // 5: -conj(A)(-t) F1(eps; B, B'; C; x, y)
    let f1_eps = f1_double(g, &F1Params { a: g.eps(), ..p.f1 });
    let t5 = term(g, -1, &[g.eval(a.conj(), neg_t)], &[&f1_eps]);

    // 6: (q-1) conj(A)(-t) C(-1) delta(B' conj(C))
    let t6 = term(
        g,
        q1 * g.delta_char(bp * c.conj()),
        &[g.eval(a.conj(), neg_t), g.at_neg_one(c)],
        &[],
    );

    // 7: (q-1) AC(-1) B' conj(C)(x) delta(1-y-t) delta(AB' conj(C))
    let t7 = term(
        g,
        q1 * g.delta_point(one_minus_t_minus_y) * g.delta_char(ab_c),
        &[g.at_neg_one(a * c), g.eval(bp * c.conj(), x)],
        &[],
    );

    // 8: B(-1) conj(A)(-x) {AB' conj(C) choose A conj(B)} A conj(C)(y) conj(A B')C(1-t-y) B'(1-t)
    let t8 = term(
        g,
        1,
        &[
            g.at_neg_one(b),
            g.eval(a.conj(), f.neg(x)),
            g.eval(a * c.conj(), y),
            g.eval(tail, one_minus_t_minus_y),
            g.eval(bp, one_minus_t),
        ],
        &[&binom_abc],
    );

    // 9: BC(-1) conj(A)(x) A conj(C)(y) conj(A B')C(1-y) 2F1(A, AB' conj(C); A conj(B) | ty/(x(1-y)))
    let arg9 = f.div(f.mul(t, y), f.mul(x, one_minus_y))?;
    let f21_9 = f21_charsum(g, a, ab_c, a * b.conj(), arg9);
    let t9 = term(
        g,
        1,
        &[
            g.at_neg_one(b * c),
            g.eval(a.conj(), x),
            g.eval(a * c.conj(), y),
            g.eval(tail, one_minus_y),
        ],
        &[&f21_9],
    );

    Ok(vec![t1, t2, t3, t4, t5, t6, t7, t8, t9])
}

pub fn genfun_rhs(g: &CharGroup, p: &GenFunParams) -> Result<CycVal> {
    Ok(sum_terms(g, &genfun_rhs_terms(g, p)?))
}

/// Coefficients on the nine terms under which the sum equals [`genfun_lhs`]:
/// terms 2, 7 and 8 drop out and terms 5 and 6 change sign.
///
/// Term 7 is cancelled by the `delta(y - 1)` correction of the double-sum
/// expansion applied at `(x/(1-t), y/(1-t))`. Terms 2 and 8 differ only by the
/// factor `-C(-1)` versus `A(-1)` and cancel each other.
pub const GENFUN_AMENDED_COEFFS: [i64; 9] = [1, 0, 1, 1, -1, -1, 0, 0, 1];

/// The nine terms recombined with [`GENFUN_AMENDED_COEFFS`].
pub fn genfun_rhs_amended(g: &CharGroup, p: &GenFunParams) -> Result<CycVal> {
    let terms = genfun_rhs_terms(g, p)?;
    Ok(terms
        .iter()
        .zip(GENFUN_AMENDED_COEFFS)
        .fold(g.zero(), |acc, (t, k)| {
            acc.try_add(&t.scale(k)).expect("same order")
        }))
}
