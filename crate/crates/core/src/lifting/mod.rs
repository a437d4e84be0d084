//! Lifting laws: constructions that send an element of one prehomogeneous
//! space to a rank one element of a larger one, each returned together with
//! a certificate of the identities it satisfies.
//!
//! * [`law1`]: `W_J` lifted to `W_{J ⊗ E}` for `E = F[ω]/(ω^2 - q(v))`, and
//!   the refined identity over an associative `A`.
//! * [`law2`]: pairs `(A, B)` in `J ⊕ J` lifted to `J ⊗ T` for the cubic
//!   ring `T` of the binary cubic `n(Ax + By)`, and the refined identity for
//!   `J = H_3(C)`.
//! * [`second`]: the second lifting law through the Tits construction, the
//!   quotient `Ũ / I(v, ω)` and the commutative structure on `A ⊕ A^2`.
//! * [`lowrank`]: lifts of rank two and rank three elements.

pub mod law1;
pub mod law2;
pub mod lowrank;
pub mod second;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cns::{Cns, CnsVariant};
use crate::error::Result;
use crate::report::Certificate;
use crate::scalars::{q_to_rats, QAlg, QElem, Rat, Q};

/// A structure over `Q` together with its base change to quotient algebras.
#[derive(Debug)]
pub struct Structure {
    /// Over `Q`.
    pub q: Box<dyn Cns<Q>>,
    /// Over any quotient algebra, through [`QElem`] scalars.
    pub e: Box<dyn Cns<QElem>>,
}

impl Structure {
    /// Builds both versions of a variant.
    pub fn new(variant: &CnsVariant) -> Result<Self> {
        Ok(Structure { q: variant.build_q()?, e: variant.build_generic::<QElem>()? })
    }
}

/// Serializable outcome of a lifting construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftResult {
    /// Multiplication table of the extension, `table[i][j] = e_i e_j`.
    pub extension: Vec<Vec<Vec<Rat>>>,
    /// Coordinates of the lifted element, each an element of the extension
    /// written on its basis.
    pub lifted: Vec<Vec<Rat>>,
    /// The identities that were checked.
    pub certificate: Certificate,
}

impl LiftResult {
    /// Packages a lifted element over `alg`.
    pub fn new(alg: &Arc<QAlg>, lifted: &[QElem], certificate: Certificate) -> Self {
        let extension = alg.table().iter().map(|row| row.iter().map(|e| q_to_rats(e)).collect()).collect();
        let lifted = lifted.iter().map(|e| q_to_rats(&e.coords_in(alg))).collect();
        LiftResult { extension, lifted, certificate }
    }
}

/// Lifts rational coordinates to constants.
pub(crate) fn consts(x: &[Q]) -> Vec<QElem> {
    x.iter().map(|t| QElem::Const(t.clone())).collect()
}
