//! The associative instances: `F`, `F × C`, cubic étale algebras and `M_3(F)`.

use std::sync::Arc;

use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::scalars::linalg::{self, MatQ};
use crate::scalars::{q, qi, vec as v, QAlg, Scalar, Q};

use super::{AssocCns, Cns};

/// `F` itself with `N(x) = x^3`, `x^# = x^2` and `(x, y) = 3 x y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrivialF;

impl<S: Scalar> Cns<S> for TrivialF {
    fn dim(&self) -> usize {
        1
    }
    fn label(&self) -> String {
        "F".into()
    }
    fn identity(&self) -> Vec<S> {
        vec![S::one()]
    }
    fn norm(&self, x: &[S]) -> S {
        x[0].sq().mul(&x[0])
    }
    fn adjoint(&self, x: &[S]) -> Vec<S> {
        vec![x[0].sq()]
    }
    fn pair(&self, x: &[S], y: &[S]) -> S {
        x[0].mul(&y[0]).scale(&qi(3))
    }
    fn triple_sym(&self, x: &[S], y: &[S], z: &[S]) -> Option<Vec<S>> {
        Some(vec![y[0].mul(&x[0]).mul(&z[0]).scale(&qi(2))])
    }
}

impl<S: Scalar> AssocCns<S> for TrivialF {
    fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        vec![x[0].mul(&y[0])]
    }
    fn is_commutative(&self) -> bool {
        true
    }
}

/// `F × C` for a composition algebra `C`, with coordinates `[α, x]`.
///
/// `N((α, x)) = α n(x)`, `(α, x)^# = (n(x), α x*)` and the pairing is
/// `αβ + tr_C(x y)`. With `C = F` this is the split quadratic case `F × F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FxC {
    /// The composition algebra factor.
    pub comp: CompDesc,
}

impl FxC {
    /// `F × C`.
    pub fn new(comp: CompDesc) -> Self {
        FxC { comp }
    }
}

impl<S: Scalar> Cns<S> for FxC {
    fn dim(&self) -> usize {
        1 + self.comp.dim()
    }
    fn label(&self) -> String {
        format!("F x C{:?}", self.comp.gammas.iter().map(crate::scalars::q_to_string).collect::<Vec<_>>())
    }
    fn identity(&self) -> Vec<S> {
        [vec![S::one()], self.comp.one()].concat()
    }
    fn norm(&self, x: &[S]) -> S {
        x[0].mul(&self.comp.norm(&x[1..]))
    }
    fn adjoint(&self, x: &[S]) -> Vec<S> {
        [vec![self.comp.norm(&x[1..])], v::smul(&x[0], &self.comp.conj(&x[1..]))].concat()
    }
    fn pair(&self, x: &[S], y: &[S]) -> S {
        x[0].mul(&y[0]).add(&self.comp.trace(&self.comp.mul(&x[1..], &y[1..])))
    }
    fn triple_sym(&self, x: &[S], y: &[S], z: &[S]) -> Option<Vec<S>> {
        if !self.comp.is_associative() {
            return None;
        }
        let m = |a: &[S], b: &[S]| AssocCns::<S>::mul(self, a, b);
        Some(v::add(&m(&m(y, x), z), &m(&m(z, x), y)))
    }
}

impl<S: Scalar> AssocCns<S> for FxC {
    fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        [vec![x[0].mul(&y[0])], self.comp.mul(&x[1..], &y[1..])].concat()
    }
    fn is_commutative(&self) -> bool {
        self.comp.is_commutative()
    }
}

/// A commutative associative cubic algebra given by a structure table.
///
/// The norm, trace and adjoint come from the characteristic polynomial:
/// `x^# = x^2 - tr(x) x + s_2(x)` with `s_2(x) = (tr(x)^2 - tr(x^2)) / 2`,
/// and `N(x) = tr(x x^#) / 3`. The pairing is the trace form `tr(x y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleCubic {
    table: Vec<Vec<Vec<Q>>>,
    one: Vec<Q>,
    traces: Vec<Q>,
}

impl EtaleCubic {
    /// Builds the algebra from `table[i][j] = e_i e_j`, checking that it is
    /// three dimensional, commutative, associative and unital.
    pub fn from_table(table: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let n = table.len();
        if n != 3 || table.iter().any(|r| r.len() != 3 || r.iter().any(|c| c.len() != 3)) {
            return Err(Error::Descriptor("a cubic structure table must be 3 x 3 x 3".into()));
        }
        let mul = |x: &[Q], y: &[Q]| table_mul(&table, x, y);
        let e = |i: usize| v::unit::<Q>(3, i);
        for i in 0..3 {
            for j in 0..3 {
                if mul(&e(i), &e(j)) != mul(&e(j), &e(i)) {
                    return Err(Error::Descriptor("structure table is not commutative".into()));
                }
                for k in 0..3 {
                    if mul(&mul(&e(i), &e(j)), &e(k)) != mul(&e(i), &mul(&e(j), &e(k))) {
                        return Err(Error::Descriptor("structure table is not associative".into()));
                    }
                }
            }
        }
        // Solve u e_j = e_j for all j, a 9 x 3 linear system in u.
        let mut m: MatQ = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..3 {
            for k in 0..3 {
                m.push((0..3).map(|i| table[i][j][k].clone()).collect());
                rhs.push(if j == k { qi(1) } else { qi(0) });
            }
        }
        let one = linalg::solve(&m, &rhs)
            .ok_or_else(|| Error::Descriptor("structure table has no identity".into()))?;
        let traces = (0..3)
            .map(|i| {
                let reg: MatQ = (0..3).map(|r| (0..3).map(|c| table[i][c][r].clone()).collect()).collect();
                (0..3).fold(qi(0), |acc, d| acc + &reg[d][d])
            })
            .collect();
        Ok(EtaleCubic { table, one, traces })
    }

    /// The split algebra `F × F × F` in idempotent coordinates.
    pub fn split() -> Self {
        let table = (0..3)
            .map(|i| (0..3).map(|j| if i == j { v::unit::<Q>(3, i) } else { v::zero(3) }).collect())
            .collect();
        Self::from_table(table).expect("split table is valid")
    }

    /// The cubic algebra attached to the binary cubic form
    /// `a x^3 + b x^2 y + c x y^2 + d y^3`, on the basis `1, ω, θ`.
    pub fn from_form(f: &[Q; 4]) -> Self {
        Self::from_alg(&QAlg::cubic_form(f)).expect("form table is valid")
    }

    /// The algebra underlying a three dimensional [`QAlg`].
    pub fn from_alg(alg: &Arc<QAlg>) -> Result<Self> {
        Self::from_table(alg.table().clone())
    }

    /// The structure table.
    pub fn table(&self) -> &Vec<Vec<Vec<Q>>> {
        &self.table
    }

    /// The same algebra as a [`QAlg`] usable as a scalar ring, when its
    /// first basis vector is the identity.
    pub fn to_alg(&self) -> Result<Arc<QAlg>> {
        QAlg::from_table(self.table.clone())
    }

    fn tr<S: Scalar>(&self, x: &[S]) -> S {
        x.iter().zip(&self.traces).fold(S::zero(), |acc, (a, t)| acc.add(&a.scale(t)))
    }
}

/// Product through a structure table, `table[i][j] = e_i e_j`.
pub fn table_mul<S: Scalar>(table: &[Vec<Vec<Q>>], x: &[S], y: &[S]) -> Vec<S> {
    let n = x.len();
    let mut out = v::zero::<S>(n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let p = xi.mul(yj);
            for (k, o) in out.iter_mut().enumerate() {
                let t = &table[i][j][k];
                if !num::Zero::is_zero(t) {
                    *o = o.add(&p.scale(t));
                }
            }
        }
    }
    out
}

impl<S: Scalar> Cns<S> for EtaleCubic {
    fn dim(&self) -> usize {
        3
    }
    fn label(&self) -> String {
        "cubic algebra".into()
    }
    fn identity(&self) -> Vec<S> {
        v::from_q(&self.one)
    }
    fn norm(&self, x: &[S]) -> S {
        self.tr(&AssocCns::<S>::mul(self, x, &Cns::<S>::adjoint(self, x))).scale(&q(1, 3))
    }
    fn adjoint(&self, x: &[S]) -> Vec<S> {
        let x2 = AssocCns::<S>::mul(self, x, x);
        let t = self.tr(x);
        let s2 = t.sq().sub(&self.tr(&x2)).scale(&q(1, 2));
        let one: Vec<S> = v::from_q(&self.one);
        v::add(&v::sub(&x2, &v::smul(&t, x)), &v::smul(&s2, &one))
    }
    fn pair(&self, x: &[S], y: &[S]) -> S {
        self.tr(&AssocCns::<S>::mul(self, x, y))
    }
    fn trace(&self, x: &[S]) -> S {
        self.tr(x)
    }
    fn triple_sym(&self, x: &[S], y: &[S], z: &[S]) -> Option<Vec<S>> {
        let m = |a: &[S], b: &[S]| AssocCns::<S>::mul(self, a, b);
        Some(v::qmul(&qi(2), &m(&m(x, y), z)))
    }
}

impl<S: Scalar> AssocCns<S> for EtaleCubic {
    fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        table_mul(&self.table, x, y)
    }
    fn is_commutative(&self) -> bool {
        true
    }
}

/// The matrix algebra `M_3(F)` with coordinates in row-major order.
///
/// `N` is the determinant, `x^#` the classical adjugate and
/// `(x, y) = tr(x y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matrix3;

/// Product of two row-major 3 x 3 matrices.
pub fn m3_mul<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut s = S::zero();
            for k in 0..3 {
                s = s.add(&x[3 * i + k].mul(&y[3 * k + j]));
            }
            out.push(s);
        }
    }
    out
}

/// Adjugate of a row-major 3 x 3 matrix.
pub fn m3_adj<S: Scalar>(x: &[S]) -> Vec<S> {
    let e = |i: usize, j: usize| &x[3 * i + j];
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            // adj[i][j] is the (j, i) cofactor.
            let (r1, r2) = ((j + 1) % 3, (j + 2) % 3);
            let (c1, c2) = ((i + 1) % 3, (i + 2) % 3);
            out.push(e(r1, c1).mul(e(r2, c2)).sub(&e(r1, c2).mul(e(r2, c1))));
        }
    }
    out
}

impl<S: Scalar> Cns<S> for Matrix3 {
    fn dim(&self) -> usize {
        9
    }
    fn label(&self) -> String {
        "M3(F)".into()
    }
    fn identity(&self) -> Vec<S> {
        (0..9).map(|i| if i % 4 == 0 { S::one() } else { S::zero() }).collect()
    }
    fn norm(&self, x: &[S]) -> S {
        let a = m3_adj(x);
        (0..3).fold(S::zero(), |acc, k| acc.add(&x[k].mul(&a[3 * k])))
    }
    fn adjoint(&self, x: &[S]) -> Vec<S> {
        m3_adj(x)
    }
    fn pair(&self, x: &[S], y: &[S]) -> S {
        let mut s = S::zero();
        for i in 0..3 {
            for k in 0..3 {
                s = s.add(&x[3 * i + k].mul(&y[3 * k + i]));
            }
        }
        s
    }
    fn triple_sym(&self, x: &[S], y: &[S], z: &[S]) -> Option<Vec<S>> {
        Some(v::add(&m3_mul(&m3_mul(y, x), z), &m3_mul(&m3_mul(z, x), y)))
    }
}

impl<S: Scalar> AssocCns<S> for Matrix3 {
    fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        m3_mul(x, y)
    }
    fn is_commutative(&self) -> bool {
        false
    }
}
