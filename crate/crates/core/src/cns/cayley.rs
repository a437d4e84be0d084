//! The structure `U(γ) = H_3(C) ⊕ V_3(C)` attached to an associative
//! composition algebra `C` and a nonzero scalar `γ`.
//!
//! With `X` Hermitian and `v` a row vector,
//! `n((X, v)) = n(X) + γ v X v*`, `(X, v)^# = (X^# + γ v* v, -v X)` and
//! `((X, v), (Y, w)) = (X, Y) - γ (v, w)`. The map `φ` sends `(X, v)` to the
//! Hermitian matrix over the doubled algebra `C(γ)` with diagonal `X_ii` and
//! off-diagonal entries `a_i = (a_i(X), v_i)`.
//!
//! Coordinates are `[X, v1, v2, v3]` with `X` in the `H_3(C)` layout.

use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::scalars::{vec as v, Scalar, Q};

use super::h3::{CMat, H3};
use super::Cns;

/// `U(γ)` over an associative composition algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyU {
    h3: H3,
    gamma: Q,
    doubled: H3,
}

impl CayleyU {
    /// Builds `U(γ)`, rejecting a zero `γ` and nonassociative `C`.
    pub fn new(comp: CompDesc, gamma: Q) -> Result<Self> {
        if !comp.is_associative() {
            return Err(Error::Unsupported("U(γ) needs an associative composition algebra".into()));
        }
        if Scalar::is_zero(&gamma) {
            return Err(Error::Descriptor("γ must be nonzero".into()));
        }
        let doubled = H3::new(comp.double(gamma.clone())?);
        Ok(CayleyU { h3: H3::new(comp), gamma, doubled })
    }

    /// The `H_3(C)` summand.
    pub fn h3(&self) -> &H3 {
        &self.h3
    }

    /// The parameter `γ`.
    pub fn gamma(&self) -> &Q {
        &self.gamma
    }

    /// `H_3(C(γ))`, the target of [`Self::phi`].
    pub fn doubled(&self) -> &H3 {
        &self.doubled
    }

    fn hdim(&self) -> usize {
        3 + 3 * self.h3.k()
    }

    /// Splits coordinates into `X` and the row vector `v`.
    pub fn split<'a, S>(&self, x: &'a [S]) -> (&'a [S], &'a [S]) {
        x.split_at(self.hdim())
    }

    /// Joins `X` and `v`.
    pub fn join<S: Scalar>(&self, x: &[S], row: &[S]) -> Vec<S> {
        [x, row].concat()
    }

    /// The row vector `v` as a 1 x 3 matrix.
    pub fn row<S: Scalar>(&self, row: &[S]) -> CMat<S> {
        let k = self.h3.k();
        CMat::from_entries(1, 3, row.chunks(k).map(|c| c.to_vec()).collect())
    }

    /// The isomorphism `φ: U(γ) -> H_3(C(γ))`.
    pub fn phi<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let (xm, row) = self.split(x);
        let k = self.h3.k();
        let c = [xm[0].clone(), xm[1].clone(), xm[2].clone()];
        let blocks = [1usize, 2, 3].map(|i| [self.h3.a(xm, i), &row[(i - 1) * k..i * k]].concat());
        self.doubled.assemble(c, blocks)
    }

    /// Inverse of [`Self::phi`].
    pub fn phi_inv<S: Scalar>(&self, y: &[S]) -> Vec<S> {
        let k = self.h3.k();
        let c = [y[0].clone(), y[1].clone(), y[2].clone()];
        let blocks = [1usize, 2, 3].map(|i| self.doubled.a(y, i).to_vec());
        let xm = self.h3.assemble(c, blocks.clone().map(|b| b[..k].to_vec()));
        let row: Vec<S> = blocks.iter().flat_map(|b| b[k..].to_vec()).collect();
        self.join(&xm, &row)
    }
}

impl<S: Scalar> Cns<S> for CayleyU {
    fn dim(&self) -> usize {
        self.hdim() + 3 * self.h3.k()
    }
    fn label(&self) -> String {
        format!("U(γ={}) over {}", crate::scalars::q_to_string(&self.gamma), Cns::<S>::label(&self.h3))
    }
    fn identity(&self) -> Vec<S> {
        self.join(&Cns::<S>::identity(&self.h3), &v::zero(3 * self.h3.k()))
    }
    fn norm(&self, x: &[S]) -> S {
        let cm = &self.h3.comp;
        let (xm, row) = self.split(x);
        let r = self.row(row);
        let vxv = r.mul(cm, &self.h3.to_mat(xm)).mul(cm, &r.conj_t(cm));
        self.h3.norm(xm).add(&vxv.get(0, 0)[0].scale(&self.gamma))
    }
    fn adjoint(&self, x: &[S]) -> Vec<S> {
        let cm = &self.h3.comp;
        let (xm, row) = self.split(x);
        let r = self.row(row);
        let vsv = self.h3.from_mat(&r.conj_t(cm).mul(cm, &r));
        let top = v::add(&self.h3.adjoint(xm), &v::qmul(&self.gamma, &vsv));
        let vx = r.mul(cm, &self.h3.to_mat(xm));
        let bottom: Vec<S> = vx.entries.iter().flat_map(|e| v::neg(e)).collect();
        self.join(&top, &bottom)
    }
    fn pair(&self, x: &[S], y: &[S]) -> S {
        let cm = &self.h3.comp;
        let k = self.h3.k();
        let (xm, xr) = self.split(x);
        let (ym, yr) = self.split(y);
        let mut vw = S::zero();
        for i in 0..3 {
            vw = vw.add(&cm.pair(&xr[i * k..(i + 1) * k], &yr[i * k..(i + 1) * k]));
        }
        self.h3.pair(xm, ym).sub(&vw.scale(&self.gamma))
    }
}
