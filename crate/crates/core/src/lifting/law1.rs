//! The first lifting law: a rank four `v ∈ W_J` becomes the rank one element
//! `X(v) = (ω v + v^♭) / 2` of `W_J ⊗ E` with `E = F[ω]/(ω^2 - q(v))`.

use std::sync::Arc;

use crate::cns::{AssocCns, Cns};
use crate::error::{Error, Result};
use crate::freudenthal::assoc::{r_of, r_right, shriek_col, shriek_row};
use crate::freudenthal::{flat, pair, quartic, rank, t_vvw, WElem, M2};
use crate::report::Certificate;
use crate::scalars::{q, qi, QAlg, QElem, Scalar, Q};

use super::LiftResult;

/// The lift of a rank four element of `W_J`.
#[derive(Clone, Debug)]
pub struct WjLift {
    /// `E = Q[ω]/(ω^2 - q(v))`.
    pub alg: Arc<QAlg>,
    /// `ω ∈ E`.
    pub omega: QElem,
    /// `q(v)`.
    pub q: Q,
    /// `X(v) = (ω v + v^♭) / 2`.
    pub x: WElem<QElem>,
    /// `X̄(v) = (-ω v + v^♭) / 2`.
    pub xbar: WElem<QElem>,
    /// Checked identities.
    pub certificate: Certificate,
}

impl WjLift {
    /// Serializable form with `X(v)` as the lifted element.
    pub fn to_result(&self) -> LiftResult {
        LiftResult::new(&self.alg, &self.x.to_vec(), self.certificate.clone())
    }
}

/// Embeds a rational element of `W_J` into `W_J ⊗ E`.
pub fn to_e(v: &WElem<Q>) -> WElem<QElem> {
    v.map(|t| QElem::Const(t.clone()))
}

/// `(± ω v + v^♭) / 2` over `E`.
pub fn x_of(je: &dyn Cns<QElem>, v: &WElem<QElem>, omega: &QElem) -> WElem<QElem> {
    v.smul(omega).add(&flat(je, v)).qmul(&q(1, 2))
}

/// Builds `E`, `X(v)` and `X̄(v)` and checks that `X(v)` has rank one,
/// that `3 t(X, X, x) = ⟨x, X⟩ X` for every basis vector `x` and that
/// `⟨X, X̄⟩ = ω q(v)`.
pub fn lift_wj(je: &dyn Cns<QElem>, v: &WElem<Q>) -> Result<WjLift> {
    let ve = to_e(v);
    let qv = quartic(je, &ve).as_q().expect("q of a rational element is rational");
    if qv.is_zero() {
        return Err(Error::Precondition("the first lifting law needs q(v) ≠ 0".into()));
    }
    let alg = QAlg::quadratic(&qv)?;
    let omega = QElem::basis(&alg, 1);
    let x = x_of(je, &ve, &omega);
    let xbar = x_of(je, &ve, &omega.neg());
    let mut cert = Certificate::new();
    cert.check("rank X(v) = 1", rank(je, &x) == 1);
    let n = v.jdim();
    let all = (0..2 + 2 * n).all(|k| {
        let w = WElem::basis(n, k);
        t_vvw(je, &x, &w).qmul(&qi(3)) == x.smul(&pair(je, &w, &x))
    });
    cert.check("3t(X, X, x) = ⟨x, X⟩ X for every basis vector x", all);
    cert.check("⟨X, X̄⟩ = ω q(v)", pair(je, &x, &xbar) == omega.scale(&qv));
    Ok(WjLift { alg, omega, q: qv, x, xbar, certificate: cert })
}

/// `(ω + M) / 2` for a matrix `M` over `A ⊗ E`.
pub(crate) fn half_shift(a: &dyn AssocCns<QElem>, m: &M2<QElem>, omega: &QElem) -> M2<QElem> {
    let z = QElem::zero();
    m.add(&M2::scalars(a, omega.clone(), z.clone(), z, omega.clone())).qmul(&q(1, 2))
}

/// A column or row vector over `A ⊗ E`.
pub type Pair2 = (Vec<QElem>, Vec<QElem>);

/// Checks the refined identities over an associative `A`:
/// `((ω + R(v))/2 η)! = ⟨X(v), η!⟩ X̄(v)` for the column `η` and
/// `(ℓ (ω + R_r(v))/2)! = ⟨ℓ!, X̄(v)⟩ X(v)` for the row `ℓ`, where
/// `R_r = J_2 R(v) J_2^{-1}`.
pub fn lift_wa_refined(a: &dyn AssocCns<QElem>, v: &WElem<Q>, eta: &Pair2, ell: &Pair2) -> Result<Certificate> {
    let lift = lift_wj(a, v)?;
    let ve = to_e(v);
    let u = half_shift(a, &r_of(a, &ve), &lift.omega);
    let ur = half_shift(a, &r_right(a, &ve), &lift.omega);
    let mut cert = Certificate::new();
    let ue = u.apply_col(a, eta);
    let lhs = shriek_col(a, &ue.0, &ue.1);
    let rhs = lift.xbar.smul(&pair(a, &lift.x, &shriek_col(a, &eta.0, &eta.1)));
    cert.check("((ω + R(v))/2 η)! = ⟨X(v), η!⟩ X̄(v)", lhs == rhs);
    let lu = ur.apply_row(a, ell);
    let lhs = shriek_row(a, &lu.0, &lu.1);
    let rhs = lift.x.smul(&pair(a, &shriek_row(a, &ell.0, &ell.1), &lift.xbar));
    cert.check("(ℓ (ω + R_r(v))/2)! = ⟨ℓ!, X̄(v)⟩ X(v)", lhs == rhs);
    Ok(cert)
}

/// Given `ω v1 + v2` of rank one with `q(v1) ≠ 0`, where `ω^2 = omega_sq`,
/// returns the `t ∈ F^×` with `v2 = t v1^♭` and `t^2 q(v1) = ω^2`.
pub fn unique_lift_recover(je: &dyn Cns<QElem>, v1: &WElem<Q>, v2: &WElem<Q>, omega_sq: &Q) -> Result<Q> {
    let alg = QAlg::quadratic(omega_sq)?;
    let omega = QElem::basis(&alg, 1);
    let (e1, e2) = (to_e(v1), to_e(v2));
    let q1 = quartic(je, &e1).as_q().expect("rational");
    if q1.is_zero() {
        return Err(Error::Precondition("q(v1) must be nonzero".into()));
    }
    if rank(je, &e1.smul(&omega).add(&e2)) != 1 {
        return Err(Error::NoSolution("ω v1 + v2 is not rank one".into()));
    }
    let f1: Vec<Q> = flat(je, &e1).to_vec().iter().map(|x| x.as_q().expect("rational")).collect();
    let w2 = v2.to_vec();
    let i = f1.iter().position(|x| !x.is_zero()).expect("v1^♭ ≠ 0 when q(v1) ≠ 0");
    let t = &w2[i] / &f1[i];
    if f1.iter().zip(&w2).any(|(a, b)| &t * a != *b) {
        return Err(Error::NoSolution("v2 is not a multiple of v1^♭".into()));
    }
    if &t * &t * &q1 != *omega_sq {
        return Err(Error::NoSolution("t^2 q(v1) differs from ω^2".into()));
    }
    Ok(t)
}

/// Returns `α v + β v^♭` after checking
/// `q(α v + β v^♭) = (α^2 - q β^2)^2 q` and
/// `(α v + β v^♭)^♭ = (α^2 - q β^2)(α v^♭ + q β v)` with `q = q(v)`.
pub fn admissible_scale(j: &dyn Cns<Q>, v: &WElem<Q>, alpha: &Q, beta: &Q) -> (WElem<Q>, Certificate) {
    let qv = quartic(j, v);
    let vf = flat(j, v);
    let w = v.qmul(alpha).add(&vf.qmul(beta));
    let k = alpha * alpha - &qv * beta * beta;
    let mut cert = Certificate::new();
    cert.check("q(αv + βv♭) = (α² - qβ²)² q", quartic(j, &w) == &k * &k * &qv);
    let rhs = vf.qmul(alpha).add(&v.qmul(&(&qv * beta))).qmul(&k);
    cert.check("(αv + βv♭)♭ = (α² - qβ²)(αv♭ + qβv)", flat(j, &w) == rhs);
    (w, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cns::{EtaleCubic, Matrix3, H3};
    use crate::composition::CompDesc;
    use crate::freudenthal::random_w;
    use crate::random;
    use crate::lifting::consts;
    use crate::scalars::vec as v;

    fn diag_elem(n: usize, a: i64, d: i64) -> WElem<Q> {
        WElem::new(qi(a), v::zero(n), v::zero(n), qi(d))
    }

    #[test]
    fn lift_of_a_diagonal_element() {
        let j = H3::new(CompDesc::rationals());
        let x = diag_elem(6, 2, 3);
        let l = lift_wj(&j, &x).unwrap();
        assert!(l.certificate.all_passed(), "{:?}", l.certificate);
        let w = &l.omega;
        let (a, d) = (qi(2), qi(3));
        let ad = QElem::Const(&a * &d);
        let expect = WElem::new(
            w.sub(&ad).scale(&a).scale(&q(1, 2)),
            v::zero(6),
            v::zero(6),
            w.add(&ad).scale(&d).scale(&q(1, 2)),
        );
        assert_eq!(l.x, expect);
    }

    #[test]
    fn lift_rejects_q_zero() {
        let j = H3::new(CompDesc::rationals());
        assert!(matches!(lift_wj(&j, &diag_elem(6, 1, 0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_lifts_pass_over_several_structures() {
        let mut rng = random::rng(5);
        let js: Vec<Box<dyn Cns<QElem>>> = vec![
            Box::new(H3::new(CompDesc::quaternion(-1, -3))),
            Box::new(Matrix3),
            Box::new(H3::new(CompDesc::octonion(-1, -1, -1))),
        ];
        for (k, j) in js.iter().enumerate() {
            for _ in 0..(if k == 2 { 1 } else { 3 }) {
                let x = random_w(j.dim(), &mut rng, |r| random::int(r, 3));
                let l = lift_wj(j.as_ref(), &x).unwrap();
                assert!(l.certificate.all_passed(), "{:?}", l.certificate);
            }
        }
    }

    fn col(u: &[Q], w: &[Q]) -> Pair2 {
        (consts(u), consts(w))
    }

    #[test]
    fn refined_identity_on_a_diagonal_element() {
        let a = EtaleCubic::split();
        let x = diag_elem(3, 1, 2);
        let eta = col(&[qi(1), qi(1), qi(1)], &[qi(0), qi(0), qi(0)]);
        let ell = col(&[qi(0), qi(1), qi(0)], &[qi(1), qi(2), qi(1)]);
        assert!(lift_wa_refined(&a, &x, &eta, &ell).unwrap().all_passed());
        // (ω + R(v))/2 η with R(v) = diag(ad, -ad) and η = (1; 0).
        let l = lift_wj(&a, &x).unwrap();
        let s = l.omega.add(&QElem::Const(qi(2))).scale(&q(1, 2));
        let ue = half_shift(&a, &r_of(&a, &to_e(&x)), &l.omega).apply_col(&a, &eta);
        assert_eq!(shriek_col(&a, &ue.0, &ue.1), WElem::new(s.mul(&s).mul(&s), v::zero(3), v::zero(3), QElem::zero()));
        let zero = col(&v::zero(3), &v::zero(3));
        assert!(lift_wa_refined(&a, &x, &zero, &zero).unwrap().all_passed());
    }

    #[test]
    fn refined_identity_on_random_cubes() {
        let a = EtaleCubic::split();
        let mut rng = random::rng(9);
        for _ in 0..20 {
            let x = random_w(3, &mut rng, |r| random::int(r, 3));
            if quartic(&a as &dyn Cns<Q>, &x).is_zero() {
                continue;
            }
            let e = col(&random::int_vec(&mut rng, 3, 3), &random::int_vec(&mut rng, 3, 3));
            let l = col(&random::int_vec(&mut rng, 3, 3), &random::int_vec(&mut rng, 3, 3));
            let cert = lift_wa_refined(&a, &x, &e, &l).unwrap();
            assert!(cert.all_passed(), "{cert:?}");
        }
    }

    #[test]
    fn refined_identity_over_matrices() {
        let a = Matrix3;
        let mut rng = random::rng(10);
        for _ in 0..3 {
            let x = random_w(9, &mut rng, |r| random::int(r, 2));
            let e = col(&random::int_vec(&mut rng, 9, 2), &random::int_vec(&mut rng, 9, 2));
            let l = col(&random::int_vec(&mut rng, 9, 2), &random::int_vec(&mut rng, 9, 2));
            let cert = lift_wa_refined(&a, &x, &e, &l).unwrap();
            assert!(cert.all_passed(), "{cert:?}");
        }
    }

    #[test]
    fn unique_lift_recovery() {
        let j = H3::new(CompDesc::rationals());
        let mut rng = random::rng(3);
        let x = random_w(6, &mut rng, |r| random::int(r, 3));
        let jq: &dyn Cns<Q> = &j;
        let qv = quartic(jq, &x);
        assert!(!qv.is_zero());
        let f = flat(jq, &x);
        assert_eq!(unique_lift_recover(&j, &x, &f, &qv).unwrap(), qi(1));
        assert_eq!(unique_lift_recover(&j, &x, &f.qmul(&qi(2)), &(qi(4) * &qv)).unwrap(), qi(2));
        let bad = f.add(&WElem::basis(6, 0));
        assert!(matches!(unique_lift_recover(&j, &x, &bad, &qv), Err(Error::NoSolution(_))));
    }

    #[test]
    fn admissible_scaling() {
        let j = H3::new(CompDesc::quadratic(-1));
        let jq: &dyn Cns<Q> = &j;
        let mut rng = random::rng(4);
        let x = random_w(9, &mut rng, |r| random::int(r, 3));
        let (w, cert) = admissible_scale(jq, &x, &qi(1), &qi(0));
        assert!(cert.all_passed());
        assert_eq!(quartic(jq, &w), quartic(jq, &x));
        let (_, cert) = admissible_scale(jq, &x, &qi(2), &qi(3));
        assert!(cert.all_passed());
        let (a, d, al, be) = (qi(2), qi(-3), qi(5), qi(7));
        let (w, _) = admissible_scale(jq, &diag_elem(9, 2, -3), &al, &be);
        let ad = &a * &d;
        assert_eq!(w, WElem::new((&al - &be * &ad) * &a, v::zero(9), v::zero(9), (&al + &be * &ad) * &d));
    }
}
