//! Cubic norm structures: the norm, adjoint, cross product, pairing, trace,
//! U-operator and rank of a cubic Jordan-type structure, together with the
//! concrete instances used throughout the crate.
//!
//! Elements are flat coordinate vectors over a [`Scalar`]. Every instance
//! documents its canonical basis. Most instances are generic in the scalar
//! type, so base change to a quotient algebra `Q[x]/(f)` is just a change of
//! the type parameter to [`QElem`](crate::scalars::QElem).

pub mod axioms;
pub mod basic;
pub mod cayley;
pub mod desc;
pub mod h3;
pub mod tensor;
pub mod tits;

use std::fmt::Debug;

use crate::scalars::{qi, vec as v, Scalar, Q};

pub use basic::{EtaleCubic, FxC, Matrix3, TrivialF};
pub use cayley::CayleyU;
pub use desc::{BuiltCns, CnsDesc, CnsElement, CnsVariant};
pub use h3::H3;
pub use tits::{JbkPair, JbkShape, TitsU};

/// Rank of an element of a cubic norm structure, from 0 to 3.
pub type RankValue = u8;

/// A cubic norm structure on `S^dim`.
///
/// Implementors provide the norm, adjoint and pairing; everything else has a
/// default derived from those three.
pub trait Cns<S: Scalar>: Debug + Send + Sync {
    /// Dimension of the coordinate space.
    fn dim(&self) -> usize;
    /// Short human readable name.
    fn label(&self) -> String;
    /// Coordinates of the identity `1`.
    fn identity(&self) -> Vec<S>;
    /// Cubic norm `N(x)`.
    fn norm(&self, x: &[S]) -> S;
    /// Quadratic adjoint `x^#`.
    fn adjoint(&self, x: &[S]) -> Vec<S>;
    /// Symmetric bilinear pairing `(x, y)`.
    fn pair(&self, x: &[S], y: &[S]) -> S;

    /// Cross product `x × y = (x + y)^# - x^# - y^#`.
    fn cross(&self, x: &[S], y: &[S]) -> Vec<S> {
        let s = v::add(x, y);
        v::sub(&v::sub(&self.adjoint(&s), &self.adjoint(x)), &self.adjoint(y))
    }
    /// Trace `tr(x) = (1, x)`.
    fn trace(&self, x: &[S]) -> S {
        self.pair(&self.identity(), x)
    }
    /// `U_x y = -x^# × y + (x, y) x`.
    fn u_op(&self, x: &[S], y: &[S]) -> Vec<S> {
        let t = v::neg(&self.cross(&self.adjoint(x), y));
        v::add(&t, &v::smul(&self.pair(x, y), x))
    }
    /// Rank by the cascade `x = 0`, `x^# = 0`, `N(x) = 0`.
    fn rank(&self, x: &[S]) -> RankValue {
        if v::is_zero(x) {
            0
        } else if v::is_zero(&self.adjoint(x)) {
            1
        } else if self.norm(x).is_zero() {
            2
        } else {
            3
        }
    }
    /// For special structures, the Jordan triple term `y x z + z x y`
    /// computed in an associative envelope. `None` when no envelope is
    /// available.
    fn triple_sym(&self, _x: &[S], _y: &[S], _z: &[S]) -> Option<Vec<S>> {
        None
    }
}

/// A cubic norm structure that is an associative algebra, with
/// `x x^# = x^# x = N(x)` and `U_x y = x y x`.
pub trait AssocCns<S: Scalar>: Cns<S> {
    /// Algebra product.
    fn mul(&self, x: &[S], y: &[S]) -> Vec<S>;
    /// True when the product is commutative.
    fn is_commutative(&self) -> bool;
    /// Inverse `x^# / N(x)` when `N(x)` is a unit.
    fn inverse(&self, x: &[S]) -> Option<Vec<S>> {
        let n = self.norm(x).inv()?;
        Some(v::smul(&n, &self.adjoint(x)))
    }
    /// The scalar `s * 1`.
    fn scalar(&self, s: &S) -> Vec<S> {
        v::smul(s, &self.identity())
    }
}

/// The symmetric trilinear form `(x, y, z) = (x, y × z)`.
pub fn trilinear<S: Scalar, J: Cns<S> + ?Sized>(j: &J, x: &[S], y: &[S], z: &[S]) -> S {
    j.pair(x, &j.cross(y, z))
}

/// True when `y` is a scalar multiple of the identity with scalar `s`.
pub fn is_scalar_multiple_of_one<S: Scalar, J: Cns<S> + ?Sized>(j: &J, y: &[S], s: &S) -> bool {
    y == v::smul(s, &j.identity()).as_slice()
}

/// `(x, x^#) / 3`, which equals the norm in any cubic norm structure.
pub fn norm_from_pairing<S: Scalar, J: Cns<S> + ?Sized>(j: &J, x: &[S]) -> S {
    j.pair(x, &j.adjoint(x)).scale(&Q::new(1.into(), 3.into()))
}

/// The coordinates of `2 x` and similar small integer multiples.
pub fn times<S: Scalar>(n: i64, x: &[S]) -> Vec<S> {
    v::qmul(&qi(n), x)
}
