//! Generators of the group `H(W_J)` acting on `W_J`.

use crate::cns::Cns;
use crate::error::{Error, Result};
use crate::scalars::{vec as v, Scalar};

use super::{pair, WElem};

/// A linear map on `J` given by its matrix on coordinates, `(t x)_i = Σ_k m[i][k] x_k`.
pub type LinMap<S> = Vec<Vec<S>>;

/// Applies a coordinate matrix.
pub fn apply_lin<S: Scalar>(m: &LinMap<S>, x: &[S]) -> Vec<S> {
    m.iter().map(|row| row.iter().zip(x).fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

/// A generator of `H(W_J)`.
#[derive(Clone, Debug, PartialEq)]
pub enum HOp<S> {
    /// `n_J(X)`.
    NJ(Vec<S>),
    /// `n̄_J(Y)`.
    NbarJ(Vec<S>),
    /// `m(λ)(a,b,c,d) = (λ^2 a, λ b, c, λ^{-1} d)`.
    M(S),
    /// `(α, t, t^∨, δ)(a,b,c,d) = (α a, t b, t^∨ c, δ d)` for an element of
    /// the group `M̃(J, J)`.
    MGen {
        /// Scalar on `a`.
        alpha: S,
        /// Map on `b`.
        t: LinMap<S>,
        /// Map on `c`.
        tv: LinMap<S>,
        /// Scalar on `d`.
        delta: S,
    },
    /// `w_J(a,b,c,d) = (d, -c, b, -a)`.
    WJ,
}

impl<S: Scalar> HOp<S> {
    /// Builds `(α, t, t^∨, δ)` after checking the defining identities of
    /// `M̃(J, J)`. Bilinear identities are checked on basis pairs, quadratic
    /// ones on `e_i` and `e_i + e_j`, cubic ones on `e_i + e_j + e_k` with
    /// repetition, which decides them exactly.
    pub fn mgen(j: &dyn Cns<S>, alpha: S, t: LinMap<S>, tv: LinMap<S>, delta: S) -> Result<Self> {
        let n = j.dim();
        let ad = alpha.mul(&delta);
        let e = |i: usize| v::unit::<S>(n, i);
        let sums2: Vec<Vec<S>> = (0..n).flat_map(|i| (i..n).map(move |k| (i, k))).map(|(i, k)| v::add(&e(i), &e(k))).collect();
        for i in 0..n {
            for k in 0..n {
                if j.pair(&apply_lin(&t, &e(i)), &apply_lin(&tv, &e(k))) != ad.mul(&j.pair(&e(i), &e(k))) {
                    return Err(Error::Precondition("(t b, t^∨ c) must equal αδ (b, c)".into()));
                }
            }
        }
        for x in (0..n).map(e).chain(sums2.iter().cloned()) {
            if j.adjoint(&apply_lin(&t, &x)) != v::smul(&alpha, &apply_lin(&tv, &j.adjoint(&x))) {
                return Err(Error::Precondition("t(b)# must equal α t^∨(b#)".into()));
            }
            if j.adjoint(&apply_lin(&tv, &x)) != v::smul(&delta, &apply_lin(&t, &j.adjoint(&x))) {
                return Err(Error::Precondition("t^∨(c)# must equal δ t(c#)".into()));
            }
        }
        for i in 0..n {
            for k in i..n {
                for l in k..n {
                    let x = v::add(&v::add(&e(i), &e(k)), &e(l));
                    if j.norm(&apply_lin(&t, &x)) != alpha.sq().mul(&delta).mul(&j.norm(&x)) {
                        return Err(Error::Precondition("N(t b) must equal α^2 δ N(b)".into()));
                    }
                    if j.norm(&apply_lin(&tv, &x)) != alpha.mul(&delta.sq()).mul(&j.norm(&x)) {
                        return Err(Error::Precondition("N(t^∨ c) must equal α δ^2 N(c)".into()));
                    }
                }
            }
        }
        Ok(HOp::MGen { alpha, t, tv, delta })
    }

    /// The similitude `ν(g)` with `⟨gv, gw⟩ = ν(g) ⟨v, w⟩`.
    pub fn similitude(&self) -> S {
        match self {
            HOp::NJ(_) | HOp::NbarJ(_) | HOp::WJ => S::one(),
            HOp::M(l) => l.clone(),
            HOp::MGen { alpha, delta, .. } => alpha.mul(delta),
        }
    }

    /// Applies the operator. `m(λ)` needs `λ` to be a unit.
    pub fn apply(&self, j: &dyn Cns<S>, x: &WElem<S>) -> Result<WElem<S>> {
        let WElem { a, b, c, d } = x;
        Ok(match self {
            HOp::NJ(xx) => {
                let xs = j.adjoint(xx);
                WElem::new(
                    a.clone(),
                    v::add(b, &v::smul(a, xx)),
                    v::add(&v::add(c, &j.cross(b, xx)), &v::smul(a, &xs)),
                    d.add(&j.pair(c, xx)).add(&j.pair(b, &xs)).add(&a.mul(&j.norm(xx))),
                )
            }
            HOp::NbarJ(y) => {
                let ys = j.adjoint(y);
                WElem::new(
                    a.add(&j.pair(b, y)).add(&j.pair(c, &ys)).add(&d.mul(&j.norm(y))),
                    v::add(&v::add(b, &j.cross(c, y)), &v::smul(d, &ys)),
                    v::add(c, &v::smul(d, y)),
                    d.clone(),
                )
            }
            HOp::M(l) => {
                let li = l.inv().ok_or_else(|| Error::Precondition("m(λ) needs λ to be a unit".into()))?;
                WElem::new(l.sq().mul(a), v::smul(l, b), c.clone(), li.mul(d))
            }
            HOp::MGen { alpha, t, tv, delta } => {
                WElem::new(alpha.mul(a), apply_lin(t, b), apply_lin(tv, c), delta.mul(d))
            }
            HOp::WJ => WElem::new(d.clone(), v::neg(c), b.clone(), a.neg()),
        })
    }

    /// Applies a word of operators, the last one first.
    pub fn apply_word(word: &[HOp<S>], j: &dyn Cns<S>, x: &WElem<S>) -> Result<WElem<S>> {
        word.iter().rev().try_fold(x.clone(), |acc, g| g.apply(j, &acc))
    }
}

/// The similitude of a word of operators.
pub fn word_similitude<S: Scalar>(word: &[HOp<S>]) -> S {
    word.iter().fold(S::one(), |acc, g| acc.mul(&g.similitude()))
}

/// Checks `⟨gv, gw⟩ = ν ⟨v, w⟩` for one pair.
pub fn preserves_pairing<S: Scalar>(j: &dyn Cns<S>, g: &HOp<S>, x: &WElem<S>, y: &WElem<S>) -> Result<bool> {
    Ok(pair(j, &g.apply(j, x)?, &g.apply(j, y)?) == g.similitude().mul(&pair(j, x, y)))
}
