//! The Freudenthal construction `W_J = F ⊕ J ⊕ J ⊕ F` over a cubic norm
//! structure `J`: the symplectic pairing, the quartic form, the trilinear map
//! `t`, the flat map and the rank stratification.
//!
//! Elements are [`WElem`] values `(a, b, c, d)` over a [`Scalar`]; every
//! operation takes the structure `J` explicitly.

pub mod assoc;
pub mod hop;
pub mod json;

use rand::Rng;

use crate::cns::{Cns, CnsVariant};
use crate::error::Result;
use crate::random;
use crate::report::AxiomReport;
use crate::scalars::{q, qi, vec as v, Scalar, Q};

pub use assoc::{M2, Side};
pub use hop::HOp;
pub use json::{CubeJson, WElementJson};

/// Rank of an element of `W_J`, from 0 to 4.
pub type WRank = u8;

/// An element `(a, b, c, d)` of `W_J`.
#[derive(Clone, Debug, PartialEq)]
pub struct WElem<S> {
    /// First scalar component.
    pub a: S,
    /// Component in `J`.
    pub b: Vec<S>,
    /// Component in `J^∨ = J`.
    pub c: Vec<S>,
    /// Last scalar component.
    pub d: S,
}

impl<S: Scalar> WElem<S> {
    /// `(a, b, c, d)`.
    pub fn new(a: S, b: Vec<S>, c: Vec<S>, d: S) -> Self {
        WElem { a, b, c, d }
    }

    /// The zero element for `dim J = n`.
    pub fn zero(n: usize) -> Self {
        WElem::new(S::zero(), v::zero(n), v::zero(n), S::zero())
    }

    /// `dim J`.
    pub fn jdim(&self) -> usize {
        self.b.len()
    }

    /// Flat coordinates `[a, b, c, d]`.
    pub fn to_vec(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(2 + 2 * self.jdim());
        out.push(self.a.clone());
        out.extend(self.b.iter().cloned());
        out.extend(self.c.iter().cloned());
        out.push(self.d.clone());
        out
    }

    /// Inverse of [`Self::to_vec`].
    pub fn from_vec(x: &[S]) -> Self {
        let n = (x.len() - 2) / 2;
        WElem::new(x[0].clone(), x[1..1 + n].to_vec(), x[1 + n..1 + 2 * n].to_vec(), x[1 + 2 * n].clone())
    }

    /// The `k`-th basis vector for `dim J = n`.
    pub fn basis(n: usize, k: usize) -> Self {
        Self::from_vec(&v::unit(2 + 2 * n, k))
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        WElem::new(self.a.add(&o.a), v::add(&self.b, &o.b), v::add(&self.c, &o.c), self.d.add(&o.d))
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        WElem::new(self.a.neg(), v::neg(&self.b), v::neg(&self.c), self.d.neg())
    }

    /// Multiplication by a base scalar.
    pub fn smul(&self, s: &S) -> Self {
        WElem::new(self.a.mul(s), v::smul(s, &self.b), v::smul(s, &self.c), self.d.mul(s))
    }

    /// Multiplication by a rational.
    pub fn qmul(&self, r: &crate::scalars::Q) -> Self {
        WElem::new(self.a.scale(r), v::qmul(r, &self.b), v::qmul(r, &self.c), self.d.scale(r))
    }

    /// True when every component vanishes.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.d.is_zero() && v::is_zero(&self.b) && v::is_zero(&self.c)
    }

    /// Applies a map to every coordinate.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> WElem<T> {
        WElem::new(f(&self.a), self.b.iter().map(&f).collect(), self.c.iter().map(&f).collect(), f(&self.d))
    }
}

/// A random element with coordinates drawn from `gen`.
pub fn random_w<S: Scalar, R: Rng>(n: usize, rng: &mut R, mut gen: impl FnMut(&mut R) -> S) -> WElem<S> {
    let x: Vec<S> = (0..2 + 2 * n).map(|_| gen(rng)).collect();
    WElem::from_vec(&x)
}

/// The symplectic pairing `⟨v, w⟩ = ad' - (b, c') + (c, b') - da'`.
pub fn pair<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>, y: &WElem<S>) -> S {
    x.a.mul(&y.d).sub(&j.pair(&x.b, &y.c)).add(&j.pair(&x.c, &y.b)).sub(&x.d.mul(&y.a))
}

/// The quartic form `q(v) = (ad - (b,c))^2 + 4a n(c) + 4d n(b) - 4(b#, c#)`.
pub fn quartic<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>) -> S {
    let m = x.a.mul(&x.d).sub(&j.pair(&x.b, &x.c));
    let four = qi(4);
    m.sq()
        .add(&x.a.mul(&j.norm(&x.c)).scale(&four))
        .add(&x.d.mul(&j.norm(&x.b)).scale(&four))
        .sub(&j.pair(&j.adjoint(&x.b), &j.adjoint(&x.c)).scale(&four))
}

/// The flat map `v -> v^♭ = t(v, v, v)`.
pub fn flat<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>) -> WElem<S> {
    let WElem { a, b, c, d } = x;
    let bc = j.pair(b, c);
    let m = a.mul(d).sub(&bc);
    let bs = j.adjoint(b);
    let cs = j.adjoint(c);
    let two = qi(2);
    let af = a.sq().mul(d).neg().add(&a.mul(&bc)).sub(&j.norm(b).scale(&two));
    let bf = v::sub(
        &v::add(&v::qmul(&qi(-2), &j.cross(c, &bs)), &v::qmul(&two, &v::smul(a, &cs))),
        &v::smul(&m, b),
    );
    let cf = v::add(
        &v::sub(&v::qmul(&two, &j.cross(b, &cs)), &v::qmul(&two, &v::smul(d, &bs))),
        &v::smul(&m, c),
    );
    let df = a.mul(&d.sq()).sub(&d.mul(&bc)).add(&j.norm(c).scale(&two));
    WElem::new(af, bf, cf, df)
}

/// The symmetric trilinear map `t` with `t(v, v, v) = v^♭`, by polarization:
/// `24 t(x,y,z) = f(x+y+z) - f(-x+y+z) - f(x-y+z) - f(x+y-z)` for `f = ♭`.
pub fn trilinear<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>, y: &WElem<S>, z: &WElem<S>) -> WElem<S> {
    let f = |w: WElem<S>| flat(j, &w);
    let s = f(x.add(y).add(z))
        .sub(&f(y.add(z).sub(x)))
        .sub(&f(x.add(z).sub(y)))
        .sub(&f(x.add(y).sub(z)));
    s.qmul(&q(1, 24))
}

/// True when `u` and `w` are proportional in the sense that all 2 x 2
/// minors `u_i w_j - u_j w_i` vanish.
pub fn parallel<S: Scalar>(u: &WElem<S>, w: &WElem<S>) -> bool {
    let (x, y) = (u.to_vec(), w.to_vec());
    let nz: Vec<usize> = (0..y.len()).filter(|&i| !y[i].is_zero() || !x[i].is_zero()).collect();
    for (p, &i) in nz.iter().enumerate() {
        for &k in &nz[p + 1..] {
            if x[i].mul(&y[k]) != x[k].mul(&y[i]) {
                return false;
            }
        }
    }
    true
}

/// `t(v, v, w)`, from `24 t(v, v, w) = f(2v + w) - f(2v - w) - 2 f(w)` for
/// `f = ♭`.
pub fn t_vvw<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>, w: &WElem<S>) -> WElem<S> {
    let two_v = x.qmul(&qi(2));
    flat(j, &two_v.add(w)).sub(&flat(j, &two_v.sub(w))).sub(&flat(j, w).qmul(&qi(2))).qmul(&q(1, 24))
}

/// True when `t(v, v, w)` is proportional to `v` for every basis vector `w`.
pub fn is_rank_at_most_one<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>) -> bool {
    let n = x.jdim();
    (0..2 + 2 * n).all(|k| parallel(&t_vvw(j, x, &WElem::basis(n, k)), x))
}

/// The rank of `v` by the cascade `v = 0`, `t(v,v,·) ∈ F v`, `v^♭ = 0`,
/// `q(v) = 0`.
pub fn rank<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>) -> WRank {
    if x.is_zero() {
        0
    } else if is_rank_at_most_one(j, x) {
        1
    } else if flat(j, x).is_zero() {
        2
    } else if quartic(j, x).is_zero() {
        3
    } else {
        4
    }
}

/// The necessary conditions `b# = ac`, `c# = db`, `(b, c) = 3ad` for rank
/// at most one.
pub fn rank_one_conditions<S: Scalar>(j: &dyn Cns<S>, x: &WElem<S>) -> bool {
    j.adjoint(&x.b) == v::smul(&x.a, &x.c)
        && j.adjoint(&x.c) == v::smul(&x.d, &x.b)
        && j.pair(&x.b, &x.c) == x.a.mul(&x.d).scale(&qi(3))
}

/// Runs the Freudenthal identities on random elements of `W_J`:
/// `⟨v, v^♭⟩ = 2 q(v)` and `(v^♭)^♭ = -q(v)^2 v` for every variant, and for
/// associative variants `R(v)^2 = q(v) 1_2` and `S(v) = 0` exactly when
/// `v` has rank at most one. Every other trial uses a rank one element
/// `(s, t)!` so that both sides of the last equivalence occur.
pub fn check_identities(variant: &CnsVariant, trials: usize, seed: u64) -> Result<AxiomReport> {
    let j = variant.build_q()?;
    let assoc = variant.build_assoc::<Q>().ok();
    let n = j.dim();
    let mut rng = random::rng(seed);
    let mut rep = AxiomReport::new(format!("W_J for {}", j.label()), trials);
    for k in 0..trials {
        let x = match (&assoc, k % 2) {
            (Some(a), 1) => {
                let (s, t) = (random::int_vec(&mut rng, n, 2), random::int_vec(&mut rng, n, 2));
                assoc::shriek_row(a.as_ref(), &s, &t)
            }
            _ => random_w(n, &mut rng, |r| random::int(r, 3)),
        };
        let show = || format!("{:?}", x.to_vec().iter().map(|c| c.to_string()).collect::<Vec<_>>());
        let qx = quartic(j.as_ref(), &x);
        let fx = flat(j.as_ref(), &x);
        rep.record("⟨v, v♭⟩ = 2q(v)", pair(j.as_ref(), &x, &fx) == qi(2) * &qx, show);
        rep.record("(v♭)♭ = -q(v)² v", flat(j.as_ref(), &fx) == x.smul(&-(&qx * &qx)), show);
        if let Some(a) = &assoc {
            let a = a.as_ref();
            let r = assoc::r_of(a, &x);
            rep.record("R(v)² = q(v) 1₂", r.mul(a, &r) == M2::identity(a).smul(&qx), show);
            let low = rank(j.as_ref(), &x) <= 1;
            rep.record("S(v) = 0 ⟺ rank(v) ≤ 1", assoc::s_of(a, &x).is_zero() == low, show);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cns::{Matrix3, TrivialF, H3};
    use crate::composition::CompDesc;

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn pairing_examples() {
        let j = Matrix3;
        let e = |k| WElem::<Q>::basis(9, k);
        assert_eq!(pair(&j, &e(0), &e(19)), qi(1));
        let b = qv(&[1, 2, 0, 0, 1, 0, 3, 0, 1]);
        let c = qv(&[0, 1, 0, 1, 0, 2, 0, 0, 1]);
        let x = WElem::new(qi(0), b.clone(), v::zero(9), qi(0));
        let y = WElem::new(qi(0), v::zero(9), c.clone(), qi(0));
        assert_eq!(pair(&j, &x, &y), -Cns::<Q>::pair(&j, &b, &c));
    }

    #[test]
    fn quartic_and_flat_on_diagonal_elements() {
        let j = H3::new(CompDesc::rationals());
        let n = 6;
        let x = WElem::new(qi(2), v::zero(n), v::zero(n), qi(3));
        assert_eq!(quartic(&j, &x), qi(36));
        assert_eq!(flat(&j, &x), WElem::new(qi(-12), v::zero(n), v::zero(n), qi(18)));
        let c = qv(&[1, 2, -1, 1, 0, 1]);
        let y = WElem::new(qi(1), v::zero(n), c.clone(), qi(5));
        let nc = Cns::<Q>::norm(&j, &c);
        assert_eq!(quartic(&j, &y), qi(25) + qi(4) * &nc);
        let expect = WElem::new(qi(-5), v::qmul(&qi(2), &Cns::<Q>::adjoint(&j, &c)), v::qmul(&qi(5), &c), qi(25) + qi(2) * nc);
        assert_eq!(flat(&j, &y), expect);
    }

    #[test]
    fn flat_identities_on_random_elements() {
        let j = H3::new(CompDesc::quaternion(-1, -1));
        let mut rng = random::rng(3);
        for _ in 0..5 {
            let x = random_w(Cns::<Q>::dim(&j), &mut rng, |r| random::int(r, 3));
            let qx = quartic(&j, &x);
            let fx = flat(&j, &x);
            assert_eq!(pair(&j, &x, &fx), qi(2) * &qx);
            assert_eq!(flat(&j, &fx), x.qmul(&-(qx.clone() * &qx)));
            assert_eq!(trilinear(&j, &x, &x, &x), fx);
        }
    }

    #[test]
    fn rank_examples() {
        let j = Matrix3;
        let n = 9;
        assert_eq!(rank::<Q>(&j, &WElem::basis(n, 0)), 1);
        assert_eq!(rank(&j, &WElem::new(qi(1), v::zero(n), v::zero(n), qi(2))), 4);
        let c = qv(&[1, 0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(rank(&j, &WElem::new(qi(1), v::zero(n), c, qi(0))), 3);
        let c1 = qv(&[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(rank(&j, &WElem::new(qi(0), v::zero(n), c1, qi(0))), 1);
        assert_eq!(rank::<Q>(&TrivialF, &WElem::zero(1)), 0);
    }
}
