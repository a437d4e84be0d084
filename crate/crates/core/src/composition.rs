//! Composition algebras built by Cayley–Dickson doubling.
//!
//! A descriptor is a chain of nonzero rationals `(g1, ..., gk)` with `k <= 3`.
//! The algebra for the chain is `C(gk)` where `C` is the algebra of the
//! shorter chain `(g1, ..., g(k-1))`, so the last entry is the outermost
//! doubling. Elements of `C(g) = C^2` multiply as
//! `(x1, y1)(x2, y2) = (x1 x2 + g y2* y1, y2 x1 + y1 x2*)`, with conjugate
//! `(x, y)* = (x*, -y)` and norm `n(x) - g n(y)`.
//!
//! Coordinates are stored flat: the first half holds `x`, the second `y`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::AxiomReport;
use crate::scalars::{qi, vec as v, Scalar, Q};

/// Cayley–Dickson chain describing a composition algebra over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompDesc {
    /// The doubling parameters, innermost first.
    #[serde(with = "crate::scalars::serde_q::vec")]
    pub gammas: Vec<Q>,
}

impl CompDesc {
    /// Builds a descriptor, rejecting zero parameters and chains longer than three.
    pub fn new(gammas: Vec<Q>) -> Result<Self> {
        if gammas.len() > 3 {
            return Err(Error::Unsupported(
                "doubling an octonion algebra does not give a composition algebra".into(),
            ));
        }
        if gammas.iter().any(|g| g == &qi(0)) {
            return Err(Error::Descriptor("doubling parameters must be nonzero".into()));
        }
        Ok(CompDesc { gammas })
    }

    /// The base field `Q`.
    pub fn rationals() -> Self {
        CompDesc { gammas: vec![] }
    }

    /// The quadratic algebra `Q(sqrt d)`.
    pub fn quadratic(d: i64) -> Self {
        CompDesc { gammas: vec![qi(d)] }
    }

    /// The quaternion algebra `(a, b)`.
    pub fn quaternion(a: i64, b: i64) -> Self {
        CompDesc { gammas: vec![qi(a), qi(b)] }
    }

    /// The octonion algebra `(a, b, c)`.
    pub fn octonion(a: i64, b: i64, c: i64) -> Self {
        CompDesc { gammas: vec![qi(a), qi(b), qi(c)] }
    }

    /// Appends one more doubling.
    pub fn double(&self, gamma: Q) -> Result<Self> {
        let mut g = self.gammas.clone();
        g.push(gamma);
        CompDesc::new(g)
    }

    /// Dimension `2^len`.
    pub fn dim(&self) -> usize {
        1 << self.gammas.len()
    }

    /// Chains of length at most two give associative algebras.
    pub fn is_associative(&self) -> bool {
        self.gammas.len() <= 2
    }

    /// Chains of length at most one give commutative algebras.
    pub fn is_commutative(&self) -> bool {
        self.gammas.len() <= 1
    }

    fn inner(&self) -> CompDesc {
        CompDesc { gammas: self.gammas[..self.gammas.len() - 1].to_vec() }
    }

    /// The identity element.
    pub fn one<S: Scalar>(&self) -> Vec<S> {
        v::unit(self.dim(), 0)
    }

    /// Embeds a scalar as `s * 1`.
    pub fn scalar<S: Scalar>(&self, s: S) -> Vec<S> {
        let mut out = v::zero(self.dim());
        out[0] = s;
        out
    }

    /// Product.
    pub fn mul<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        if self.gammas.is_empty() {
            return vec![x[0].mul(&y[0])];
        }
        let h = self.dim() / 2;
        let c = self.inner();
        let g = self.gammas.last().expect("nonempty chain");
        let (x1, y1) = x.split_at(h);
        let (x2, y2) = y.split_at(h);
        let a = v::add(&c.mul(x1, x2), &v::qmul(g, &c.mul(&c.conj(y2), y1)));
        let b = v::add(&c.mul(y2, x1), &c.mul(y1, &c.conj(x2)));
        [a, b].concat()
    }

    /// Conjugate `(x, y)* = (x*, -y)`.
    pub fn conj<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut out = v::neg(x);
        out[0] = x[0].clone();
        out
    }

    /// Norm `n(x) = x x*`.
    pub fn norm<S: Scalar>(&self, x: &[S]) -> S {
        if self.gammas.is_empty() {
            return x[0].sq();
        }
        let h = self.dim() / 2;
        let c = self.inner();
        let g = self.gammas.last().expect("nonempty chain");
        c.norm(&x[..h]).sub(&c.norm(&x[h..]).scale(g))
    }

    /// Trace `x + x*`, a scalar.
    pub fn trace<S: Scalar>(&self, x: &[S]) -> S {
        x[0].scale(&qi(2))
    }

    /// Polarized norm `(x, y) = n(x + y) - n(x) - n(y) = tr(x y*)`.
    pub fn pair<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        self.norm(&v::add(x, y)).sub(&self.norm(x)).sub(&self.norm(y))
    }

    /// Inverse `x* / n(x)` when the norm is a unit.
    pub fn inv<S: Scalar>(&self, x: &[S]) -> Option<Vec<S>> {
        let n = self.norm(x).inv()?;
        Some(v::smul(&n, &self.conj(x)))
    }

    /// Random element with integer coordinates in `[-bound, bound]`.
    pub fn random_q<R: Rng>(&self, rng: &mut R, bound: i64) -> Vec<Q> {
        (0..self.dim()).map(|_| qi(rng.gen_range(-bound..=bound))).collect()
    }

    /// Standard basis vector `e_i`.
    pub fn basis<S: Scalar>(&self, i: usize) -> Vec<S> {
        v::unit(self.dim(), i)
    }
}

/// An element together with its descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompElement {
    /// The algebra.
    pub comp: CompDesc,
    /// Coordinates in the Cayley–Dickson basis.
    #[serde(with = "crate::scalars::serde_q::vec")]
    pub coords: Vec<Q>,
}

impl CompElement {
    /// Wraps coordinates, checking the length.
    pub fn new(comp: CompDesc, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != comp.dim() {
            return Err(Error::Descriptor(format!(
                "expected {} coordinates, got {}",
                comp.dim(),
                coords.len()
            )));
        }
        Ok(CompElement { comp, coords })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.comp != o.comp {
            return Err(Error::TypeMismatch("composition descriptors differ".into()));
        }
        Ok(())
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CompElement { comp: self.comp.clone(), coords: self.comp.mul(&self.coords, &o.coords) })
    }

    /// Conjugate.
    pub fn conj(&self) -> Self {
        CompElement { comp: self.comp.clone(), coords: self.comp.conj(&self.coords) }
    }

    /// Norm.
    pub fn norm(&self) -> Q {
        self.comp.norm(&self.coords)
    }

    /// Trace.
    pub fn trace(&self) -> Q {
        self.comp.trace(&self.coords)
    }
}

fn fmt_q(x: &[Q]) -> String {
    let s: Vec<String> = x.iter().map(crate::scalars::q_to_string).collect();
    format!("[{}]", s.join(", "))
}

/// Checks the composition algebra identities on seeded random elements:
/// multiplicativity of the norm, `x x* = n(x)`, `(xy)* = y* x*`, scalar
/// trace, trace associativity, and full associativity for chains of length at
/// most two.
pub fn comp_axioms_check(desc: &CompDesc, trials: usize, seed: u64) -> AxiomReport {
    let mut rng = crate::random::rng(seed);
    let mut rep = AxiomReport::new(format!("composition {}", fmt_q(&desc.gammas)), trials);
    for _ in 0..trials {
        let x = desc.random_q(&mut rng, 5);
        let y = desc.random_q(&mut rng, 5);
        let z = desc.random_q(&mut rng, 5);
        let wit = || format!("x={} y={} z={}", fmt_q(&x), fmt_q(&y), fmt_q(&z));
        let xy = desc.mul(&x, &y);
        rep.record("norm multiplicative", desc.norm(&xy) == desc.norm(&x) * desc.norm(&y), wit);
        rep.record("x x* = n(x)", desc.mul(&x, &desc.conj(&x)) == desc.scalar(desc.norm(&x)), wit);
        rep.record(
            "(xy)* = y* x*",
            desc.conj(&xy) == desc.mul(&desc.conj(&y), &desc.conj(&x)),
            wit,
        );
        let sum = v::add(&x, &desc.conj(&x));
        rep.record("x + x* scalar", sum == desc.scalar(desc.trace(&x)), wit);
        let t1 = desc.trace(&desc.mul(&x, &desc.mul(&y, &z)));
        let t2 = desc.trace(&desc.mul(&desc.mul(&x, &y), &z));
        rep.record("trace associative", t1 == t2, wit);
        rep.record("identity", desc.mul(&x, &desc.one::<Q>()) == x, wit);
        if desc.is_associative() {
            let a = desc.mul(&x, &desc.mul(&y, &z));
            let b = desc.mul(&desc.mul(&x, &y), &z);
            rep.record("associative", a == b, wit);
        }
    }
    rep
}

/// Searches basis triples for a witness `(xy)z != x(yz)`.
pub fn nonassociative_triple(desc: &CompDesc) -> Option<(usize, usize, usize)> {
    let n = desc.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (desc.basis::<Q>(i), desc.basis::<Q>(j), desc.basis::<Q>(k));
                if desc.mul(&desc.mul(&x, &y), &z) != desc.mul(&x, &desc.mul(&y, &z)) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
