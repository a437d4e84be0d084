//! The second family of lifting laws: a pair `(A, B)` in `J ⊕ J` becomes the
//! rank one element `X = -Aθ + Bω + A# × B#` of `J ⊗ T`, where `T` is the
//! cubic ring of `f(x, y) = n(Ax + By)` with good basis `(1, ω, θ)`.
//!
//! For `J = H_3(C)` with `C` associative the ring maps `S_r, S_ℓ: T -> M_3(C)`
//! and the element `ε ∈ M_3(C) ⊗ L` refine this to
//! `Q (vε)* (vε) = (v Y v*) X` for row vectors `v ∈ C^3`.

use std::sync::Arc;

use crate::cns::h3::CMat;
use crate::cns::tensor::cross_t;
use crate::cns::{Cns, EtaleCubic, H3};
use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::report::Certificate;
use crate::scalars::linalg::{det, inverse, rank};
use crate::scalars::{q, qi, vec as v, QAlg, QElem, Scalar, Q};

use super::{consts, LiftResult, Structure};

/// `Q(f) = -27a²d² + 18abcd + b²c² - 4ac³ - 4db³`.
pub fn q_disc(f: &[Q; 4]) -> Q {
    let [a, b, c, d] = f;
    -qi(27) * a * a * d * d + qi(18) * a * b * c * d + b * b * c * c - qi(4) * a * c * c * c - qi(4) * d * b * b * b
}

/// `f(x, y) = n(Ax + By)` as `[n(A), (A#, B), (A, B#), n(B)]`.
pub fn binary_cubic(j: &dyn Cns<Q>, a: &[Q], b: &[Q]) -> [Q; 4] {
    [j.norm(a), j.pair(&j.adjoint(a), b), j.pair(a, &j.adjoint(b)), j.norm(b)]
}

/// A binary cubic together with its based cubic ring.
#[derive(Clone, Debug)]
pub struct PairCubic {
    /// `[a, b, c, d]`.
    pub f: [Q; 4],
    /// `L = T ⊗ Q` with basis `(1, ω, θ)` as a scalar ring.
    pub alg: Arc<QAlg>,
    /// The same algebra as a cubic norm structure.
    pub t: EtaleCubic,
    /// `Q(f)`.
    pub q: Q,
}

impl PairCubic {
    /// The ring of `f`.
    pub fn new(f: [Q; 4]) -> Self {
        let alg = QAlg::cubic_form(&f);
        let t = EtaleCubic::from_alg(&alg).expect("form tables are valid");
        let q = q_disc(&f);
        PairCubic { f, alg, t, q }
    }

    /// The element with coordinates `x0 + x1 ω + x2 θ`.
    pub fn elem(&self, x0: Q, x1: Q, x2: Q) -> QElem {
        QElem::new(&self.alg, vec![x0, x1, x2])
    }

    /// `ω`.
    pub fn omega(&self) -> QElem {
        QElem::basis(&self.alg, 1)
    }

    /// `θ`.
    pub fn theta(&self) -> QElem {
        QElem::basis(&self.alg, 2)
    }

    /// `ω_0 = ω + b/3`.
    pub fn omega0(&self) -> QElem {
        self.elem(&self.f[1] / qi(3), qi(1), qi(0))
    }

    /// `θ_0 = θ - c/3`.
    pub fn theta0(&self) -> QElem {
        self.elem(-&self.f[2] / qi(3), qi(0), qi(1))
    }

    /// `disc(1, ω, θ)`, the determinant of the trace form.
    pub fn basis_disc(&self) -> Q {
        det(&self.alg.trace_gram())
    }
}

/// The binary cubic of `(A, B)` and its ring.
pub fn pair_cubic(j: &dyn Cns<Q>, a: &[Q], b: &[Q]) -> PairCubic {
    PairCubic::new(binary_cubic(j, a, b))
}

/// The lift of a pair `(A, B)`.
#[derive(Clone, Debug)]
pub struct PairLift {
    /// The cubic ring.
    pub cubic: PairCubic,
    /// `A`.
    pub a: Vec<Q>,
    /// `B`.
    pub b: Vec<Q>,
    /// `X = -Aθ + Bω + A# × B#`.
    pub x: Vec<QElem>,
    /// `Y = X ×_T X / 2`.
    pub y: Vec<QElem>,
    /// Checked identities.
    pub certificate: Certificate,
}

impl PairLift {
    /// Serializable form with `X` as the lifted element.
    pub fn to_result(&self) -> LiftResult {
        LiftResult::new(&self.cubic.alg, &self.x, self.certificate.clone())
    }

    /// `tr_{L/F}(X)`.
    pub fn trace_x(&self) -> Vec<Q> {
        self.x.iter().map(|e| e.trace_in(&self.cubic.alg)).collect()
    }
}

/// `Σ_i λ_i u_i` over `L` for rational `u_i`.
fn combo(terms: &[(QElem, &[Q])]) -> Vec<QElem> {
    let n = terms[0].1.len();
    (0..n)
        .map(|k| terms.iter().fold(QElem::zero(), |acc, (l, u)| if u[k].is_zero() { acc } else { acc.add(&l.scale(&u[k])) }))
        .collect()
}

/// Builds `X` and `Y` and checks `X# = 0`, `Y# = 0`, `(X, Y) = Q(f)`, the
/// closed form of `Y`, `tr_{L/F}(X) = 3A#×B# - (A,B#)A - (A#,B)B`,
/// `n(tr_{L/F}(X)) = Q(f)`, `disc(1, ω, θ) = Q(f)` and, when `Q(f) ≠ 0`, the
/// linear independence of `A`, `B` and `A# × B#`.
pub fn pair_lift(s: &Structure, a: &[Q], b: &[Q]) -> PairLift {
    let j = s.q.as_ref();
    let je = s.e.as_ref();
    let cubic = pair_cubic(j, a, b);
    let [fa, fb, fc, fd] = cubic.f.clone();
    let (w, th) = (cubic.omega(), cubic.theta());
    let (a_s, b_s) = (j.adjoint(a), j.adjoint(b));
    let cc = j.cross(&a_s, &b_s);
    let one = QElem::Const(qi(1));
    let x = combo(&[(th.neg(), a), (w.clone(), b), (one, &cc)]);
    let y: Vec<QElem> = v::qmul(&q(1, 2), &cross_t(j, &cubic.t, &cubic.alg, &x, &x));
    let mut cert = Certificate::new();
    cert.check("X# = 0", v::is_zero(&je.adjoint(&x)));
    cert.check("Y# = 0", v::is_zero(&je.adjoint(&y)));
    cert.check("(X, Y) = Q(f)", je.pair(&x, &y) == QElem::Const(cubic.q.clone()));
    let axb = j.cross(a, b);
    let closed = combo(&[
        (cubic.elem(&fb * &fd - &fc * &fc, -qi(3) * &fd, fc.clone()), &a_s),
        (cubic.elem(&fb * &fc - qi(3) * &fa * &fd, fc.clone(), -fb.clone()), &axb),
        (cubic.elem(&fa * &fc - &fb * &fb, -fb.clone(), qi(3) * &fa), &b_s),
    ]);
    cert.check("Y equals its closed form", y == closed);
    let lift = PairLift { cubic, a: a.to_vec(), b: b.to_vec(), x, y, certificate: Certificate::new() };
    let tr = lift.trace_x();
    let expect = v::sub(&v::sub(&v::qmul(&qi(3), &cc), &v::qmul(&fc, a)), &v::qmul(&fb, b));
    cert.check("tr X = 3A#×B# - (A,B#)A - (A#,B)B", tr == expect);
    cert.check("n(tr X) = Q(f)", j.norm(&tr) == lift.cubic.q);
    cert.check("disc(1, ω, θ) = Q(f)", lift.cubic.basis_disc() == lift.cubic.q);
    if !lift.cubic.q.is_zero() {
        cert.check("A, B, A#×B# are linearly independent", rank(&vec![a.to_vec(), b.to_vec(), cc]) == 3);
    }
    PairLift { certificate: cert, ..lift }
}

/// Converts a rational matrix to one over `L`.
pub fn cmat_const(m: &CMat<Q>) -> CMat<QElem> {
    CMat::from_entries(m.rows, m.cols, m.entries.iter().map(|e| consts(e)).collect())
}

/// The ring maps `S_r, S_ℓ = S_r*: T -> M_3(C)` of a pair in `H_3(C)`.
#[derive(Clone, Debug)]
pub struct SrMaps {
    comp: CompDesc,
    /// `S_r(ω) = -A# B`.
    pub omega: CMat<Q>,
    /// `S_r(θ) = B# A`.
    pub theta: CMat<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

impl SrMaps {
    /// `S_r(x0 + x1 ω + x2 θ)`.
    pub fn sr(&self, x: &[Q]) -> CMat<Q> {
        CMat::identity(&self.comp, 3).scale(&x[0]).add(&self.omega.scale(&x[1])).add(&self.theta.scale(&x[2]))
    }

    /// `S_ℓ(x) = S_r(x)*`.
    pub fn sl(&self, x: &[Q]) -> CMat<Q> {
        self.sr(x).conj_t(&self.comp)
    }
}

/// Builds `S_r` and `S_ℓ` for a lift in `H_3(C)` and checks that `S_r`
/// respects the multiplication table of `T`, the eigen identities
/// `S_ℓ(λ)X = λX = XS_r(λ)` and `S_r(λ)Y = λY = YS_ℓ(λ)`, the expression
/// `X = -(AS(θ0) - BS(ω0))/2 - Aθ0 + Bω0` and `Y_0 = -3Y`.
pub fn sr_maps(comp: &CompDesc, lift: &PairLift) -> Result<SrMaps> {
    if !comp.is_associative() {
        return Err(Error::Unsupported("S_r needs an associative composition algebra".into()));
    }
    let h = H3::new(comp.clone());
    let hq: &dyn Cns<Q> = &h;
    let he: &dyn Cns<QElem> = &h;
    let am = h.to_mat(&lift.a);
    let bm = h.to_mat(&lift.b);
    let a_s = h.to_mat(&hq.adjoint(&lift.a));
    let b_s = h.to_mat(&hq.adjoint(&lift.b));
    let maps = SrMaps {
        comp: comp.clone(),
        omega: a_s.mul(comp, &bm).scale(&qi(-1)),
        theta: b_s.mul(comp, &am),
        certificate: Certificate::new(),
    };
    let mut cert = Certificate::new();
    let table = lift.cubic.alg.table();
    let basis = |i: usize| v::unit::<Q>(3, i);
    let hom = (1..3).all(|i| (i..3).all(|k| maps.sr(&basis(i)).mul(comp, &maps.sr(&basis(k))) == maps.sr(&table[i][k])));
    cert.check("S_r respects the multiplication table of T", hom);
    cert.check("S_r(ω) S_r(θ) = S_r(θ) S_r(ω)", maps.omega.mul(comp, &maps.theta) == maps.theta.mul(comp, &maps.omega));

    let xm = h.to_mat(&lift.x);
    let ym = h.to_mat(&lift.y);
    let mut eig_x = true;
    let mut eig_y = true;
    for i in 1..3 {
        let lam = QElem::basis(&lift.cubic.alg, i);
        let sr = cmat_const(&maps.sr(&basis(i)));
        let sl = cmat_const(&maps.sl(&basis(i)));
        let lx = xm.scale(&lam);
        eig_x &= sl.mul(comp, &xm) == lx && xm.mul(comp, &sr) == lx;
        let ly = ym.scale(&lam);
        eig_y &= sr.mul(comp, &ym) == ly && ym.mul(comp, &sl) == ly;
    }
    cert.check("S_ℓ(λ) X = λ X = X S_r(λ)", eig_x);
    cert.check("S_r(λ) Y = λ Y = Y S_ℓ(λ)", eig_y);

    let [_, fb, fc, _] = &lift.cubic.f;
    let id = CMat::identity(comp, 3);
    let s_theta0 = maps.theta.sub(&id.scale(&(fc / qi(3))));
    let s_omega0 = maps.omega.add(&id.scale(&(fb / qi(3))));
    let m = am.mul(comp, &s_theta0).sub(&bm.mul(comp, &s_omega0));
    cert.check("A S(θ0) - B S(ω0) is Hermitian", h.is_hermitian(&m));
    let mh = h.from_mat(&m);
    let (w0, t0) = (lift.cubic.omega0(), lift.cubic.theta0());
    let half = QElem::Const(q(-1, 2));
    let x0 = combo(&[(half, &mh), (t0.neg(), &lift.a), (w0.clone(), &lift.b)]);
    cert.check("X = -(A S(θ0) - B S(ω0))/2 - Aθ0 + Bω0", x0 == lift.x);
    let p = v::qmul(&qi(3), &combo(&[(t0, &lift.a), (w0.neg(), &lift.b)]));
    let y0 = v::add(&he.adjoint(&p), &he.cross(&p, &consts(&v::qmul(&qi(3), &mh))));
    cert.check("Y_0 = -3Y", y0 == v::qmul(&qi(-3), &lift.y));
    Ok(SrMaps { certificate: cert, ..maps })
}

/// The element `ε = Σ_α S_r(v_α) ⊗ w_α ∈ M_3(C) ⊗ L` for a basis `v_α` of
/// `L` and its dual basis `w_α` under the trace form.
#[derive(Clone, Debug)]
pub struct Epsilon {
    /// `ε` as a matrix over `C ⊗ L`.
    pub eps: CMat<QElem>,
    /// Checked identities.
    pub certificate: Certificate,
}

fn epsilon_in_basis(comp: &CompDesc, alg: &Arc<QAlg>, sr: &SrMaps, basis: &[Vec<Q>]) -> Result<CMat<QElem>> {
    let gram: Vec<Vec<Q>> = basis.iter().map(|x| basis.iter().map(|y| alg.trace(&alg.mul(x, y))).collect()).collect();
    let ginv = inverse(&gram).ok_or_else(|| Error::Precondition("ε needs disc(1, ω, θ) ≠ 0".into()))?;
    let dual: Vec<QElem> = (0..basis.len())
        .map(|al| {
            let c = (0..basis.len()).fold(v::zero::<Q>(3), |acc, be| v::add(&acc, &v::qmul(&ginv[al][be], &basis[be])));
            QElem::new(alg, c)
        })
        .collect();
    let mut out = CMat::<QElem>::zero(comp, 3, 3);
    for (va, wa) in basis.iter().zip(&dual) {
        let term = cmat_const(&sr.sr(va)).scale(wa);
        out = out.add(&term);
    }
    Ok(out)
}

/// Builds `ε` on the basis `(1, ω, θ)` and checks `S_r(x) ε = ε x` for the
/// basis elements and agreement with the construction on `(1, ω0, θ0)`.
pub fn epsilon_element(comp: &CompDesc, cubic: &PairCubic, sr: &SrMaps) -> Result<Epsilon> {
    let alg = &cubic.alg;
    let basis: Vec<Vec<Q>> = (0..3).map(|i| v::unit(3, i)).collect();
    let eps = epsilon_in_basis(comp, alg, sr, &basis)?;
    let mut cert = Certificate::new();
    let ok = basis.iter().all(|x| cmat_const(&sr.sr(x)).mul(comp, &eps) == eps.scale(&QElem::new(alg, x.clone())));
    cert.check("S_r(x) ε = ε x", ok);
    let other = vec![basis[0].clone(), cubic.omega0().coords_in(alg), cubic.theta0().coords_in(alg)];
    cert.check("ε does not depend on the basis", epsilon_in_basis(comp, alg, sr, &other)? == eps);
    Ok(Epsilon { eps, certificate: cert })
}

/// `v M` for a row `v ∈ C^3` with rational coordinates.
fn row_times(comp: &CompDesc, row: &[Q], m: &CMat<QElem>) -> CMat<QElem> {
    let r = CMat::from_entries(1, 3, row.chunks(comp.dim()).map(consts).collect());
    r.mul(comp, m)
}

/// Checks `Q (vε)* (vε) = (v Y v*) X` in `H_3(C) ⊗ L`.
pub fn pair_lift_refined(comp: &CompDesc, lift: &PairLift, eps: &Epsilon, row: &[Q]) -> Result<Certificate> {
    if lift.cubic.q.is_zero() {
        return Err(Error::Precondition("the refined identity needs Q((A, B)) ≠ 0".into()));
    }
    let h = H3::new(comp.clone());
    let ve = row_times(comp, row, &eps.eps);
    let lhs_m = ve.conj_t(comp).mul(comp, &ve).scale(&QElem::Const(lift.cubic.q.clone()));
    let vyv = row_times(comp, row, &h.to_mat(&lift.y)).mul(comp, &cmat_const(&CMat::from_entries(3, 1, row.chunks(comp.dim()).map(|c| comp.conj(c)).collect())));
    let s = vyv.get(0, 0);
    let mut cert = Certificate::new();
    cert.check("v Y v* is central", s[1..].iter().all(|c| c.is_zero()));
    let rhs = v::smul(&s[0], &lift.x);
    cert.check("(vε)* (vε) is Hermitian", h.is_hermitian(&lhs_m));
    cert.check("Q (vε)* (vε) = (v Y v*) X", h.from_mat(&lhs_m) == rhs);
    Ok(cert)
}

/// Everything for a pair in `H_3(C)`: the lift, `S_r` and `ε`.
pub fn pair_lift_h3(comp: &CompDesc, a: &[Q], b: &[Q]) -> Result<(PairLift, SrMaps, Option<Epsilon>)> {
    let h = H3::new(comp.clone());
    let s = Structure { q: Box::new(h.clone()), e: Box::new(h) };
    let lift = pair_lift(&s, a, b);
    let sr = sr_maps(comp, &lift)?;
    let eps = if lift.cubic.q.is_zero() { None } else { Some(epsilon_element(comp, &lift.cubic, &sr)?) };
    Ok((lift, sr, eps))
}

/// Bhargava's symmetric matrices `A_1 = [[0,0,1],[0,-a,0],[1,0,-c]]` and
/// `B_1 = [[0,-1,0],[-1,-b,0],[0,0,-d]]` in `H_3(Q)`, with
/// `n(A_1 x + B_1 y) = ax³ + bx²y + cxy² + dy³` and `(A_1# × B_1#)_11 = 1`.
pub fn bhargava_a1b1(f: &[Q; 4]) -> (Vec<Q>, Vec<Q>) {
    let [a, b, c, d] = f;
    let h = H3::new(CompDesc::rationals());
    let (z, o) = (vec![qi(0)], vec![qi(1)]);
    let a1 = h.assemble([qi(0), -a.clone(), -c.clone()], [z.clone(), o.clone(), z.clone()]);
    let b1 = h.assemble([qi(0), -b.clone(), -d.clone()], [z.clone(), z, vec![qi(-1)]]);
    (a1, b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn h3q() -> H3 {
        H3::new(CompDesc::rationals())
    }

    fn structure(comp: CompDesc) -> Structure {
        let h = H3::new(comp);
        Structure { q: Box::new(h.clone()), e: Box::new(h) }
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(q_disc(&[qi(1), qi(0), qi(0), qi(1)]), qi(-27));
        assert_eq!(q_disc(&[qi(1), qi(0), qi(-1), qi(0)]), qi(4));
        let c = PairCubic::new([qi(1), qi(0), qi(-1), qi(0)]);
        assert_eq!(c.basis_disc(), qi(4));
        let c = PairCubic::new([qi(2), qi(-1), qi(3), qi(5)]);
        assert_eq!(c.basis_disc(), c.q);
    }

    #[test]
    fn bhargava_matrices_give_the_form() {
        let f = [qi(2), qi(-3), qi(5), qi(7)];
        let (a1, b1) = bhargava_a1b1(&f);
        let h = h3q();
        assert_eq!(binary_cubic(&h, &a1, &b1), f);
        let lift = pair_lift(&structure(CompDesc::rationals()), &a1, &b1);
        assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
        assert_eq!(h.cross(&h.adjoint(&a1), &h.adjoint(&b1))[0], qi(1));
        assert_eq!(lift.x[0], QElem::Const(qi(1)));
    }

    #[test]
    fn identity_and_diagonal_pair() {
        let h = h3q();
        let a = h.diag([qi(1), qi(1), qi(1)]);
        let b = h.diag([qi(1), qi(-1), qi(0)]);
        let c = pair_cubic(&h, &a, &b);
        assert_eq!(c.f, [qi(1), qi(0), qi(-1), qi(0)]);
        assert_eq!(c.q, qi(4));
    }

    /// The ring map `L -> Q^3` with `ω -> (-d, d, 0)` and `θ -> (0, 0, -d²)`.
    fn to_split(x: &QElem, alg: &Arc<QAlg>, d: i64) -> [Q; 3] {
        let c = x.coords_in(alg);
        let d = qi(d);
        [&c[0] - &c[1] * &d, &c[0] + &c[1] * &d, &c[0] - &c[2] * &d * &d]
    }

    #[test]
    fn d_family_values() {
        for d in 1..=3 {
            let h = h3q();
            let a = h.diag([qi(1), qi(1), qi(1)]);
            let b = h.diag([qi(d), qi(-d), qi(0)]);
            let (lift, sr, eps) = pair_lift_h3(&CompDesc::rationals(), &a, &b).unwrap();
            assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
            assert!(sr.certificate.all_passed(), "{:?}", sr.certificate);
            let eps = eps.unwrap();
            assert!(eps.certificate.all_passed(), "{:?}", eps.certificate);
            let d2 = qi(d * d);
            let d4 = &d2 * &d2;
            assert_eq!(lift.cubic.q, &d4 * &d2 * qi(4));
            let alg = &lift.cubic.alg;
            let diag = |x: &[QElem]| [0, 1, 2].map(|i| to_split(&x[i], alg, d));
            let z = qi(0);
            assert_eq!(
                diag(&lift.x),
                [[qi(-2) * &d2, z.clone(), z.clone()], [z.clone(), qi(-2) * &d2, z.clone()], [z.clone(), z.clone(), d2.clone()]]
            );
            assert_eq!(
                diag(&lift.y),
                [[qi(-2) * &d4, z.clone(), z.clone()], [z.clone(), qi(-2) * &d4, z.clone()], [z.clone(), z.clone(), qi(4) * &d4]]
            );
            assert!(lift.x[3..].iter().chain(&lift.y[3..]).all(|e| e.is_zero()));
            assert_eq!(sr.omega, CMat::from_entries(3, 3, h.to_mat(&h.diag([qi(-d), qi(d), qi(0)])).entries));
            assert_eq!(sr.theta, h.to_mat(&h.diag([qi(0), qi(0), -&d2])));
        }
    }

    #[test]
    fn refined_identity_on_the_diagonal_pair() {
        let comp = CompDesc::quadratic(-1);
        let h = H3::new(comp.clone());
        let a = h.diag([qi(1), qi(1), qi(1)]);
        let b = h.diag([qi(1), qi(-1), qi(0)]);
        let (lift, _, eps) = pair_lift_h3(&comp, &a, &b).unwrap();
        let eps = eps.unwrap();
        let row = vec![qi(1), qi(2), qi(0), qi(-1), qi(3), qi(1)];
        let cert = pair_lift_refined(&comp, &lift, &eps, &row).unwrap();
        assert!(cert.all_passed(), "{cert:?}");
        let ve = row_times(&comp, &row, &eps.eps);
        let lhs = h.from_mat(&ve.conj_t(&comp).mul(&comp, &ve).scale(&QElem::Const(qi(4))));
        let norms = [qi(5), qi(1), qi(10)];
        for i in 0..3 {
            let mut e = [qi(0), qi(0), qi(0)];
            e[i] = qi(4) * &norms[i];
            assert_eq!(to_split(&lhs[i], &lift.cubic.alg, 1), e);
        }
        assert!(pair_lift_refined(&comp, &lift, &eps, &v::zero(6)).unwrap().all_passed());
    }

    #[test]
    fn degenerate_pair_has_q_zero() {
        let h = h3q();
        let mut rng = random::rng(2);
        let a = random::int_vec(&mut rng, 6, 3);
        let lift = pair_lift(&structure(CompDesc::rationals()), &a, &v::zero(6));
        assert_eq!(lift.cubic.q, qi(0));
        assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
        let _ = h;
    }

    #[test]
    fn random_quaternion_pairs() {
        let comp = CompDesc::quaternion(-1, -1);
        let mut rng = random::rng(8);
        for _ in 0..3 {
            let a = random::int_vec(&mut rng, 15, 2);
            let b = random::int_vec(&mut rng, 15, 2);
            let (lift, sr, eps) = pair_lift_h3(&comp, &a, &b).unwrap();
            assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
            assert!(sr.certificate.all_passed(), "{:?}", sr.certificate);
            let eps = eps.unwrap();
            assert!(eps.certificate.all_passed(), "{:?}", eps.certificate);
            let row = random::int_vec(&mut rng, 12, 2);
            assert!(pair_lift_refined(&comp, &lift, &eps, &row).unwrap().all_passed());
        }
    }

    #[test]
    fn octonion_pairs_lift_but_have_no_sr() {
        let comp = CompDesc::octonion(-1, -1, -1);
        let mut rng = random::rng(8);
        let a = random::int_vec(&mut rng, 27, 2);
        let b = random::int_vec(&mut rng, 27, 2);
        let lift = pair_lift(&structure(comp.clone()), &a, &b);
        assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
        assert!(matches!(sr_maps(&comp, &lift), Err(Error::Unsupported(_))));
    }
}
