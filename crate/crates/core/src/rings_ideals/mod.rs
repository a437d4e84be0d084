//! Quadratic and cubic rings with good bases, balanced fractional ideals and
//! the bijections between them and integral orbits.
//!
//! * [`quad`]: `v ∈ W_A` with `q(v) = D` against balanced `S_D ⊗ A`-ideals,
//!   and the field invariant `λ`.
//! * [`cubic`]: pairs `(A, B) ∈ H_3(C)^2` against balanced `T ⊗ C`-ideals,
//!   and the field invariant `μ`.
//!
//! The base ring `R` is `Z`. An element of `A`, `C`, `S` or `T` is integral
//! when its coordinates in the chosen basis are integers.

pub mod cubic;
pub mod quad;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Certificate;
use crate::scalars::linalg::{rank, solve};
use crate::scalars::{is_integral, q, q_to_rats, qi, rats_to_q, QAlg, QElem, Rat, Scalar, Q};

pub use crate::lifting::law2::PairCubic as CubicRing;
pub use cubic::{
    balanced_check_tc, balanced_to_pair, equivalence_test_tc, field_invariant_b2, ideal_norm_tc, n6,
    pair_to_balanced, FieldInvariantB2, IdealTC, PairIdeal,
};
pub use quad::{
    balanced_check_sa, balanced_to_cube, cube_to_balanced, equivalence_test_sa, field_invariant_b1, ideal_norm_sa,
    CubeIdeal, FieldInvariantB1, IdealSA,
};

/// The quadratic ring `S_D = Z[τ]/(τ^2 - Dτ + (D^2 - D)/4)` inside
/// `E = Q[ω]/(ω^2 - D)`, with `τ = (D + ω)/2`.
#[derive(Clone, Debug)]
pub struct QuadRing {
    /// The discriminant `D`.
    pub d: Q,
    /// `E` with basis `(1, ω)`.
    pub alg: Arc<QAlg>,
}

impl QuadRing {
    /// `ω`.
    pub fn omega(&self) -> QElem {
        QElem::basis(&self.alg, 1)
    }

    /// `τ = (D + ω)/2`.
    pub fn tau(&self) -> QElem {
        QElem::new(&self.alg, vec![&self.d / qi(2), q(1, 2)])
    }

    /// `p + t τ`.
    pub fn from_tau(&self, p: &Q, t: &Q) -> QElem {
        QElem::new(&self.alg, vec![p + t * &self.d / qi(2), t / qi(2)])
    }

    /// The coordinates `(p, t)` of `x = p + t τ`.
    pub fn tau_coords(&self, x: &QElem) -> (Q, Q) {
        let c = x.coords_in(&self.alg);
        (&c[0] - &c[1] * &self.d, qi(2) * &c[1])
    }

    /// True when `x ∈ S_D`.
    pub fn is_integral(&self, x: &QElem) -> bool {
        let (p, t) = self.tau_coords(x);
        is_integral(&p) && is_integral(&t)
    }
}

/// `S_D` for an integer `D ≠ 0` congruent to a square modulo 4.
pub fn quad_ring(d: &Q) -> Result<QuadRing> {
    if d.is_zero() || !is_integral(d) {
        return Err(Error::Precondition(format!("D = {d} must be a nonzero integer")));
    }
    let r = d.numer() % 4;
    let r = if r < 0.into() { r + 4 } else { r };
    if r > 1.into() {
        return Err(Error::Precondition(format!("D = {d} is not a square modulo 4")));
    }
    Ok(QuadRing { d: d.clone(), alg: QAlg::quadratic(d)? })
}

/// Checks `τ^2 = Dτ - (D^2 - D)/4` and that `(1, τ)` spans `S_D`.
pub fn quad_ring_certificate(s: &QuadRing) -> Certificate {
    let mut cert = Certificate::new();
    let tau = s.tau();
    let c0 = (&s.d * &s.d - &s.d) / qi(4);
    cert.check("τ^2 = Dτ - (D^2 - D)/4", tau.mul(&tau) == s.from_tau(&-c0, &s.d));
    cert.check("ω = 2τ - D", s.omega() == s.from_tau(&-s.d.clone(), &qi(2)));
    cert
}

/// The based cubic ring of a binary cubic.
pub fn cubic_ring(f: &[Q; 4]) -> CubicRing {
    CubicRing::new(f.clone())
}

/// Checks the multiplication table of `(1, ω, θ)`, the table of
/// `(1, ω_0, θ_0)` and `disc(1, ω, θ) = Q(f)`.
pub fn cubic_ring_certificate(t: &CubicRing) -> Certificate {
    let [a, b, c, d] = &t.f;
    let (w, th) = (t.omega(), t.theta());
    let z = Q::zero;
    let mut cert = Certificate::new();
    cert.check("ωθ = -ad", w.mul(&th) == t.elem(-(a * d), z(), z()));
    cert.check("ω^2 = -ac + aθ - bω", w.mul(&w) == t.elem(-(a * c), -b.clone(), a.clone()));
    cert.check("θ^2 = -bd + cθ - dω", th.mul(&th) == t.elem(-(b * d), -d.clone(), c.clone()));
    let (w0, t0) = (t.omega0(), t.theta0());
    let three = qi(3);
    let rhs = t0.scale(&(b / &three)).sub(&w0.scale(&(c / &three))).add(&QElem::Const(b * c / qi(9) - a * d));
    cert.check("ω_0 θ_0 = (b/3)θ_0 - (c/3)ω_0 + (bc/9 - ad)", w0.mul(&t0) == rhs);
    cert.check("tr ω_0 = tr θ_0 = 0", w0.trace_in(&t.alg).is_zero() && t0.trace_in(&t.alg).is_zero());
    cert.check("disc(1, ω, θ) = Q(f)", t.basis_disc() == t.q);
    cert
}

/// True when `x ∈ T`, the span of `(1, ω, θ)` over `Z`.
pub fn in_cubic_order(t: &CubicRing, x: &QElem) -> bool {
    x.coords_in(&t.alg).iter().all(is_integral)
}

/// Outcome of comparing two based balanced ideals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Equivalence {
    /// `b' = x b` and `β' = n(x) β` for the returned `x`, written as
    /// coordinates over the extension.
    Witness {
        /// `x`, one extension element per coordinate of the algebra.
        x: Vec<Vec<Rat>>,
    },
    /// The data are not equivalent.
    NotEquivalent {
        /// What failed.
        reason: String,
    },
    /// The linear system does not determine `x`.
    Unknown {
        /// Why no decision was reached.
        reason: String,
    },
}

impl Equivalence {
    /// True for a witness.
    pub fn is_witness(&self) -> bool {
        matches!(self, Equivalence::Witness { .. })
    }
}

/// The ring of a serialized ideal: `{"quad": {"D": "5"}}` or
/// `{"cubic": {"form": ["1", "0", "-1", "0"]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingJson {
    /// `S_D`.
    Quad {
        /// The discriminant.
        #[serde(rename = "D")]
        d: Rat,
    },
    /// The cubic ring of a binary cubic form.
    Cubic {
        /// `[a, b, c, d]`.
        form: Vec<Rat>,
    },
}

/// A based ideal with its scalar. Each extension element is the list of its
/// coordinates on `(1, ω)` or `(1, ω, θ)`; each basis element is the list of
/// its coordinates over the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    /// The ring.
    pub ring: RingJson,
    /// The basis `b`.
    pub basis: Vec<Vec<Vec<Rat>>>,
    /// `β`.
    pub beta: Vec<Rat>,
}

impl IdealJson {
    fn new(ring: RingJson, alg: &Arc<QAlg>, basis: &[Vec<QElem>], beta: &QElem) -> Self {
        let elem = |e: &QElem| q_to_rats(&e.coords_in(alg));
        IdealJson { ring, basis: basis.iter().map(|b| b.iter().map(elem).collect()).collect(), beta: elem(beta) }
    }

    fn elements(&self, alg: &Arc<QAlg>, count: usize, n: usize) -> Result<(Vec<Vec<QElem>>, QElem)> {
        let m = alg.dim();
        let elem = |c: &[Rat]| -> Result<QElem> {
            if c.len() != m {
                return Err(Error::Parse(format!("extension elements have {m} coordinates, got {}", c.len())));
            }
            Ok(QElem::new(alg, rats_to_q(c)))
        };
        if self.basis.len() != count || self.basis.iter().any(|b| b.len() != n) {
            return Err(Error::Parse(format!("expected {count} basis elements with {n} coordinates each")));
        }
        let basis = self.basis.iter().map(|b| b.iter().map(|c| elem(c)).collect()).collect::<Result<_>>()?;
        Ok((basis, elem(&self.beta)?))
    }
}

/// Rational coordinates of a vector over an extension.
pub(crate) fn flatten(alg: &Arc<QAlg>, x: &[QElem]) -> Vec<Q> {
    x.iter().flat_map(|e| e.coords_in(alg)).collect()
}

/// Solves `Σ_k c_k span_k · b_i = b'_i` for rational `c_k` and returns
/// `x = Σ_k c_k span_k`. `Err` carries the equivalence verdict when no unique
/// solution exists.
pub(crate) fn left_multiplier(
    alg: &Arc<QAlg>,
    span: &[Vec<QElem>],
    mul: impl Fn(&[QElem], &[QElem]) -> Vec<QElem>,
    b: &[Vec<QElem>],
    b2: &[Vec<QElem>],
) -> std::result::Result<Vec<QElem>, Equivalence> {
    let cols: Vec<Vec<Q>> =
        span.iter().map(|s| b.iter().flat_map(|bi| flatten(alg, &mul(s, bi))).collect()).collect();
    let m: Vec<Vec<Q>> = (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let rhs: Vec<Q> = b2.iter().flat_map(|bi| flatten(alg, bi)).collect();
    let sol = solve(&m, &rhs).ok_or_else(|| Equivalence::NotEquivalent { reason: "no x with b' = x b".into() })?;
    if rank(&m) < span.len() {
        return Err(Equivalence::Unknown { reason: "b does not determine x".into() });
    }
    let n = span[0].len();
    Ok((0..n)
        .map(|i| span.iter().zip(&sol).fold(QElem::zero(), |acc, (s, c)| acc.add(&s[i].scale(c))))
        .collect())
}

/// Packages a witness.
pub(crate) fn witness(alg: &Arc<QAlg>, x: &[QElem]) -> Equivalence {
    Equivalence::Witness { x: x.iter().map(|e| q_to_rats(&e.coords_in(alg))).collect() }
}
