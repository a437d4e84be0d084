//! Pairs `J ⊂ B` of a cubic norm structure fixed by an involution of the
//! second kind, and the second Tits construction `U(S, λ) = J ⊕ B`.
//!
//! `K = Q[s]/(s^2 - D)` is the quadratic algebra with involution `s -> -s`.
//! Two shapes are supported:
//!
//! * [`JbkShape::Hermitian`]: `B = M_3(K)` with conjugate transpose and
//!   `J = H_3(K)`. When `D` is a square, `K` splits and `B` is isomorphic to
//!   `A × A^opp` for `A = M_3(Q)`.
//! * [`JbkShape::Tensor`]: `B = A ⊗ K` for a commutative associative `A`,
//!   with the involution acting on `K`, and `J = A`.
//!
//! Coordinates on `J` are rational; coordinates on `B` are vectors of
//! [`QElem`] in `K`.

use std::fmt;
use std::sync::Arc;

use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::scalars::{vec as v, QAlg, QElem, Scalar, Q};

use super::basic::Matrix3;
use super::h3::{CMat, H3};
use super::{AssocCns, Cns};

/// Which of the supported `(J, B, K)` shapes a pair has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JbkShape {
    /// `J = H_3(K)` inside `B = M_3(K)`.
    Hermitian,
    /// `J = A` inside `B = A ⊗ K`.
    Tensor,
}

/// A pair `J ⊂ B` over the quadratic algebra `K`.
pub struct JbkPair {
    shape: JbkShape,
    k: Arc<QAlg>,
    d: Q,
    j: Box<dyn Cns<Q>>,
    b: Box<dyn AssocCns<QElem>>,
    h3: Option<H3>,
}

impl fmt::Debug for JbkPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JbkPair({:?}, D = {}, J = {})", self.shape, crate::scalars::q_to_string(&self.d), self.j.label())
    }
}

impl JbkPair {
    /// `J = H_3(K) ⊂ M_3(K)` with `K = Q[s]/(s^2 - d)`.
    pub fn hermitian(d: Q) -> Result<Self> {
        let k = QAlg::quadratic(&d)?;
        let h3 = H3::new(CompDesc::new(vec![d.clone()])?);
        Ok(JbkPair {
            shape: JbkShape::Hermitian,
            k,
            d,
            j: Box::new(h3.clone()),
            b: Box::new(Matrix3),
            h3: Some(h3),
        })
    }

    /// `J = A ⊂ A ⊗ K` with `K = Q[s]/(s^2 - d)` for a commutative `A`, given
    /// over `Q` and over `K`.
    pub fn tensor(a_q: Box<dyn Cns<Q>>, a_k: Box<dyn AssocCns<QElem>>, d: Q) -> Result<Self> {
        if !a_k.is_commutative() {
            return Err(Error::Descriptor("A ⊗ K needs a commutative A".into()));
        }
        let k = QAlg::quadratic(&d)?;
        Ok(JbkPair { shape: JbkShape::Tensor, k, d, j: a_q, b: a_k, h3: None })
    }

    /// The shape.
    pub fn shape(&self) -> &JbkShape {
        &self.shape
    }

    /// The quadratic algebra `K`.
    pub fn k(&self) -> &Arc<QAlg> {
        &self.k
    }

    /// `D` with `K = Q[s]/(s^2 - D)`.
    pub fn d(&self) -> &Q {
        &self.d
    }

    /// The element `s` of `K` with `s^2 = D` and `s* = -s`.
    pub fn sqrt_d(&self) -> QElem {
        QElem::basis(&self.k, 1)
    }

    /// The cubic norm structure `J` over `Q`.
    pub fn j(&self) -> &dyn Cns<Q> {
        self.j.as_ref()
    }

    /// The associative cubic norm structure `B` over `K`.
    pub fn b(&self) -> &dyn AssocCns<QElem> {
        self.b.as_ref()
    }

    /// `dim_K B`.
    pub fn b_dim(&self) -> usize {
        self.b.dim()
    }

    /// The inclusion `J -> B`.
    pub fn embed(&self, x: &[Q]) -> Vec<QElem> {
        match &self.h3 {
            Some(h) => h.to_mat(x).entries.into_iter().map(|e| QElem::new(&self.k, e)).collect(),
            None => x.iter().map(|t| QElem::new(&self.k, vec![t.clone(), Q::from_i64(0)])).collect(),
        }
    }

    /// The projection of a `*`-fixed element of `B` back to `J`, or `None`
    /// when the element is not fixed.
    pub fn project(&self, y: &[QElem]) -> Option<Vec<Q>> {
        match &self.h3 {
            Some(h) => {
                let m = CMat::from_entries(3, 3, y.iter().map(|e| e.coords_in(&self.k)).collect());
                h.is_hermitian(&m).then(|| h.from_mat(&m))
            }
            None => y.iter().map(|e| e.as_q()).collect(),
        }
    }

    /// The involution `*` on `B`.
    pub fn star(&self, y: &[QElem]) -> Vec<QElem> {
        match self.shape {
            JbkShape::Hermitian => {
                let mut out = Vec::with_capacity(9);
                for i in 0..3 {
                    for j in 0..3 {
                        out.push(y[3 * j + i].conj());
                    }
                }
                out
            }
            JbkShape::Tensor => y.iter().map(|e| e.conj()).collect(),
        }
    }

    /// Rational coordinates of an element of `B`.
    pub fn b_to_q(&self, y: &[QElem]) -> Vec<Q> {
        y.iter().flat_map(|e| e.coords_in(&self.k)).collect()
    }

    /// Element of `B` from rational coordinates.
    pub fn b_from_q(&self, c: &[Q]) -> Vec<QElem> {
        c.chunks(2).map(|p| QElem::new(&self.k, p.to_vec())).collect()
    }

    /// The element `s * 1` of `K` for a rational `s`.
    pub fn kq(&self, s: &Q) -> QElem {
        QElem::new(&self.k, vec![s.clone(), Q::from_i64(0)])
    }

    /// `B` pairing of two `*`-fixed elements, as a rational.
    pub fn pair_fixed(&self, x: &[QElem], y: &[QElem]) -> Q {
        self.b.pair(x, y).as_q().expect("pairing of fixed elements is rational")
    }
}

/// The second Tits construction `U(S, λ) = J ⊕ B` for `n(S) = λ λ*`.
///
/// With `X ∈ J` and `α ∈ B`:
/// `n((X, α)) = n(X) - (X, α S α*) + tr_{K/F}(λ n(α))`,
/// `(X, α)^# = (X^# - α S α*, -X α + λ^{-1} (α*)^# S^#)` and
/// `((X, α), (Y, β)) = (X, Y) + tr_J(α S β* + β S α*)`.
///
/// Coordinates are `[X, α]` with `α` flattened to rational coordinates.
#[derive(Debug)]
pub struct TitsU {
    pair: Arc<JbkPair>,
    s: Vec<Q>,
    lambda: QElem,
    s_b: Vec<QElem>,
    s_adj_b: Vec<QElem>,
    lambda_inv: QElem,
}

impl TitsU {
    /// Builds `U(S, λ)`, checking `n(S) = λ λ*` with `λ` a unit.
    pub fn new(pair: Arc<JbkPair>, s: Vec<Q>, lambda: QElem) -> Result<Self> {
        if s.len() != pair.j.dim() {
            return Err(Error::Descriptor(format!("S must have {} coordinates", pair.j.dim())));
        }
        let lambda = QElem::new(&pair.k, lambda.coords_in(&pair.k));
        let nl = lambda.mul(&lambda.conj()).as_q().expect("λλ* is rational");
        if pair.j.norm(&s) != nl {
            return Err(Error::Precondition("n(S) must equal λλ*".into()));
        }
        let lambda_inv = lambda.inv().ok_or_else(|| Error::Precondition("λ must be a unit".into()))?;
        let s_b = pair.embed(&s);
        let s_adj_b = pair.embed(&pair.j.adjoint(&s));
        Ok(TitsU { pair, s, lambda, s_b, s_adj_b, lambda_inv })
    }

    /// The underlying pair.
    pub fn jbk(&self) -> &Arc<JbkPair> {
        &self.pair
    }

    /// `S`.
    pub fn s(&self) -> &[Q] {
        &self.s
    }

    /// `λ`.
    pub fn lambda(&self) -> &QElem {
        &self.lambda
    }

    fn jdim(&self) -> usize {
        self.pair.j.dim()
    }

    /// Splits coordinates into `X ∈ J` and `α ∈ B`.
    pub fn split(&self, x: &[Q]) -> (Vec<Q>, Vec<QElem>) {
        let (a, b) = x.split_at(self.jdim());
        (a.to_vec(), self.pair.b_from_q(b))
    }

    /// Joins `X ∈ J` and `α ∈ B`.
    pub fn join(&self, x: &[Q], alpha: &[QElem]) -> Vec<Q> {
        [x.to_vec(), self.pair.b_to_q(alpha)].concat()
    }

    fn sandwich(&self, a: &[QElem], b: &[QElem]) -> Vec<QElem> {
        let bb = self.pair.b();
        bb.mul(&bb.mul(a, &self.s_b), &self.pair.star(b))
    }
}

impl Cns<Q> for TitsU {
    fn dim(&self) -> usize {
        self.jdim() + 2 * self.pair.b_dim()
    }
    fn label(&self) -> String {
        format!("U(S, λ) over {:?}", self.pair)
    }
    fn identity(&self) -> Vec<Q> {
        self.join(&self.pair.j.identity(), &v::zero(self.pair.b_dim()))
    }
    fn norm(&self, x: &[Q]) -> Q {
        let (xj, alpha) = self.split(x);
        let p = &self.pair;
        let asa = self.sandwich(&alpha, &alpha);
        let t = self.lambda.mul(&p.b().norm(&alpha)).trace_in(&p.k);
        p.j.norm(&xj) - p.pair_fixed(&p.embed(&xj), &asa) + t
    }
    fn adjoint(&self, x: &[Q]) -> Vec<Q> {
        let (xj, alpha) = self.split(x);
        let p = &self.pair;
        let b = p.b();
        let asa = p.project(&self.sandwich(&alpha, &alpha)).expect("α S α* is fixed");
        let top = v::sub(&p.j.adjoint(&xj), &asa);
        let left = v::neg(&b.mul(&p.embed(&xj), &alpha));
        let right = v::smul(&self.lambda_inv, &b.mul(&b.adjoint(&p.star(&alpha)), &self.s_adj_b));
        self.join(&top, &v::add(&left, &right))
    }
    fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let (xj, a) = self.split(x);
        let (yj, b) = self.split(y);
        let p = &self.pair;
        let t = v::add(&self.sandwich(&a, &b), &self.sandwich(&b, &a));
        p.j.pair(&xj, &yj) + p.b().trace(&t).as_q().expect("trace of a fixed element is rational")
    }
}
