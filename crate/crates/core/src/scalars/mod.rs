//! Exact scalars: rationals, finite quotient algebras over the rationals, and
//! the small dense linear algebra used by every other module.
//!
//! Every structure in the crate is generic over the [`Scalar`] trait so the
//! same formulas run over `Q` and over base changes such as `Q[x]/(x^2 - D)`
//! or a cubic ring tensored with `Q`.

pub mod linalg;
pub mod qalg;

use std::fmt::Debug;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub use qalg::{QAlg, QElem};

/// Arbitrary precision rational numbers, always in lowest terms.
pub type Q = BigRational;

/// Builds the rational `n / d`.
///
/// # Panics
/// Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// True when the rational is an integer.
pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// Ring operations needed by the generic formulas.
///
/// Implementations are commutative rings containing `Q`. Multiplication by a
/// rational is exposed separately because it never needs a context.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Embeds a rational.
    fn from_q(x: Q) -> Self;
    /// Sum.
    fn add(&self, o: &Self) -> Self;
    /// Difference.
    fn sub(&self, o: &Self) -> Self;
    /// Product.
    fn mul(&self, o: &Self) -> Self;
    /// Additive inverse.
    fn neg(&self) -> Self;
    /// Exact zero test.
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse when the element is a unit.
    fn inv(&self) -> Option<Self>;
    /// Product with a rational.
    fn scale(&self, x: &Q) -> Self;
    /// The nontrivial involution of a quadratic algebra; the identity on `Q`.
    fn conj(&self) -> Self;
    /// The rational value when the element lies in `Q * 1`.
    fn as_q(&self) -> Option<Q>;
    /// Coordinates over `Q` (a single entry for rationals).
    fn q_coords(&self) -> Vec<Q>;

    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self {
        Self::from_q(qi(n))
    }
    /// Unit test.
    fn is_unit(&self) -> bool {
        self.inv().is_some()
    }
    /// Square.
    fn sq(&self) -> Self {
        self.mul(self)
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(x: Q) -> Self {
        x
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, x: &Q) -> Self {
        self * x
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn as_q(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn q_coords(&self) -> Vec<Q> {
        vec![self.clone()]
    }
}

/// The nonnegative rational square root of `x`, when `x` is a square.
pub fn q_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

/// Absolute value of a rational.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

/// Coordinatewise vector helpers over any [`Scalar`].
pub mod vec {
    use super::{Scalar, Q};

    /// Zero vector of length `n`.
    pub fn zero<S: Scalar>(n: usize) -> Vec<S> {
        vec![S::zero(); n]
    }
    /// The `i`-th standard basis vector of length `n`.
    pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
        let mut v = zero(n);
        v[i] = S::one();
        v
    }
    /// `x + y`.
    pub fn add<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
        debug_assert_eq!(x.len(), y.len());
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }
    /// `x - y`.
    pub fn sub<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
        debug_assert_eq!(x.len(), y.len());
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }
    /// `-x`.
    pub fn neg<S: Scalar>(x: &[S]) -> Vec<S> {
        x.iter().map(|a| a.neg()).collect()
    }
    /// `s * x`.
    pub fn smul<S: Scalar>(s: &S, x: &[S]) -> Vec<S> {
        x.iter().map(|a| s.mul(a)).collect()
    }
    /// `r * x` for a rational `r`.
    pub fn qmul<S: Scalar>(r: &Q, x: &[S]) -> Vec<S> {
        x.iter().map(|a| a.scale(r)).collect()
    }
    /// True when every entry is zero.
    pub fn is_zero<S: Scalar>(x: &[S]) -> bool {
        x.iter().all(|a| a.is_zero())
    }
    /// Sum of `coeff * vector` terms.
    pub fn lin<S: Scalar>(n: usize, terms: &[(S, &[S])]) -> Vec<S> {
        let mut out = zero::<S>(n);
        for (c, v) in terms {
            for (o, a) in out.iter_mut().zip(v.iter()) {
                *o = o.add(&c.mul(a));
            }
        }
        out
    }
    /// Embeds a rational vector.
    pub fn from_q<S: Scalar>(x: &[Q]) -> Vec<S> {
        x.iter().map(|a| S::from_q(a.clone())).collect()
    }
    /// Rational values of a vector whose entries all lie in `Q * 1`.
    pub fn as_q<S: Scalar>(x: &[S]) -> Option<Vec<Q>> {
        x.iter().map(|a| a.as_q()).collect()
    }
}


/// Serde adapters that encode rationals as `"p/q"` strings.
pub mod serde_q {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{parse_q, q_to_string, Q};

    /// Serializes one rational.
    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q_to_string(x))
    }

    /// Deserializes one rational from a string or an integer.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_q(&v).map_err(D::Error::custom)
    }

    /// Converts a JSON string or integer into a rational.
    pub fn value_to_q(v: &serde_json::Value) -> Result<Q, String> {
        match v {
            serde_json::Value::String(s) => parse_q(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) if n.is_i64() => Ok(super::qi(n.as_i64().unwrap_or(0))),
            other => Err(format!("expected a rational string, got {other}")),
        }
    }

    /// Adapters for `Vec<Q>`.
    pub mod vec {
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        use super::super::{q_to_string, Q};

        /// Serializes a list of rationals.
        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&q_to_string(x))?;
            }
            seq.end()
        }

        /// Deserializes a list of rationals.
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            let v = Vec::<serde_json::Value>::deserialize(d)?;
            v.iter().map(|x| super::value_to_q(x).map_err(D::Error::custom)).collect()
        }
    }
}

/// Converts a rational vector to its JSON string form.
pub fn qvec_to_json(xs: &[Q]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().map(|x| serde_json::Value::String(q_to_string(x))).collect())
}

/// Parses a JSON array of rational strings.
pub fn qvec_from_json(v: &serde_json::Value) -> Result<Vec<Q>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?;
    arr.iter().map(|x| serde_q::value_to_q(x).map_err(Error::Parse)).collect()
}

/// A rational that serializes as a `"p/q"` string, for use inside nested
/// containers where a field adapter is awkward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rat(pub Q);

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_q::serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_q::deserialize(d).map(Rat)
    }
}

/// Unwraps a list of [`Rat`].
pub fn rats_to_q(xs: &[Rat]) -> Vec<Q> {
    xs.iter().map(|r| r.0.clone()).collect()
}

/// Wraps a list of rationals as [`Rat`].
pub fn q_to_rats(xs: &[Q]) -> Vec<Rat> {
    xs.iter().cloned().map(Rat).collect()
}
