//! Balanced `S_D ⊗ A`-ideals for an associative cubic norm structure `A`
//! over `Z`, and their bijection with `v ∈ W_A` of `q(v) = D ≠ 0`.
//!
//! From `v` one builds `ε(v) = (ω + R_r(v)) / (2ω)`, picks a row `ℓ` and sets
//! `b = ℓ ε`, `β = ω^{-3} ⟨ℓ!, X(v, -ω)⟩`. Then `β^{-1} b! = X(v)`. In the
//! other direction `β^{-1} b! = τ v + v'` recovers `v`.

use std::sync::Arc;

use super::{flatten, left_multiplier, quad_ring, witness, Equivalence, IdealJson, QuadRing, RingJson};
use crate::cns::AssocCns;
use crate::error::{Error, Result};
use crate::freudenthal::assoc::{act, det6, lambda_invariant, r_of, r_right, shriek_col, shriek_row};
use crate::freudenthal::{pair, quartic, Side, WElem, M2};
use crate::lifting::law1::{half_shift, lift_wj, to_e, x_of, Pair2};
use crate::lifting::consts;
use crate::random;
use crate::report::Certificate;
use crate::scalars::linalg::solve;
use crate::scalars::{is_integral, qi, vec as v, QAlg, QElem, Rat, Scalar, Q};

/// Clause name for the integrality half of the balanced condition.
pub const INTEGRALITY: &str = "β^{-1}(b_1, b_2)! ∈ W_A ⊗ S";
/// Clause name for the norm half of the balanced condition.
pub const NORM: &str = "N(I; τ, b) = N_{E/F}(β)";

/// A based fractional `S ⊗ A`-ideal `I = b_1 A + b_2 A ⊆ A_E` with `β ∈ E`.
#[derive(Clone, Debug)]
pub struct IdealSA {
    /// `S_D` and `E`.
    pub ring: QuadRing,
    /// `(b_1, b_2)`, each an element of `A_E` written on the basis of `A`.
    pub basis: [Vec<QElem>; 2],
    /// `β`.
    pub beta: QElem,
}

impl IdealSA {
    /// Serializable form.
    pub fn to_json(&self) -> IdealJson {
        IdealJson::new(RingJson::Quad { d: Rat(self.ring.d.clone()) }, &self.ring.alg, &self.basis, &self.beta)
    }

    /// Reads the serializable form, with `n` coordinates per basis element.
    pub fn from_json(j: &IdealJson, n: usize) -> Result<IdealSA> {
        let RingJson::Quad { d } = &j.ring else {
            return Err(Error::Parse("expected a quadratic ring {\"quad\": {\"D\": ...}}".into()));
        };
        let ring = quad_ring(&d.0)?;
        let (basis, beta) = j.elements(&ring.alg, 2, n)?;
        Ok(IdealSA { ring, basis: basis.try_into().expect("two basis elements"), beta })
    }

    /// `X(I, b, β) = β^{-1} b!`, when `β` is a unit.
    pub fn x(&self, a: &dyn AssocCns<QElem>) -> Option<WElem<QElem>> {
        let inv = self.beta.inv()?;
        Some(shriek_row(a, &self.basis[0], &self.basis[1]).smul(&inv))
    }

    /// The matrix `g ∈ M_2(A_F)` with `(b_1, b_2) = (τ, 1) g`.
    pub fn g(&self) -> M2<QElem> {
        let split = |b: &[QElem]| -> (Vec<QElem>, Vec<QElem>) {
            b.iter().map(|e| self.ring.tau_coords(e)).map(|(p, t)| (QElem::Const(t), QElem::Const(p))).unzip()
        };
        let (m11, m21) = split(&self.basis[0]);
        let (m12, m22) = split(&self.basis[1]);
        M2::new(m11, m12, m21, m22)
    }

    /// The data `(b g, β)`.
    pub fn act(&self, a: &dyn AssocCns<QElem>, g: &M2<Q>) -> IdealSA {
        let ge = m2_const(g);
        let (b1, b2) = ge.apply_row(a, &(self.basis[0].clone(), self.basis[1].clone()));
        IdealSA { ring: self.ring.clone(), basis: [b1, b2], beta: self.beta.clone() }
    }
}

/// A rational matrix as a matrix of constants.
pub fn m2_const(g: &M2<Q>) -> M2<QElem> {
    M2 { e: g.e.clone().map(|x| consts(&x)) }
}

fn m2_rational(g: &M2<QElem>) -> Option<M2<Q>> {
    let [p, q, r, s] = &g.e;
    Some(M2::new(v::as_q(p)?, v::as_q(q)?, v::as_q(r)?, v::as_q(s)?))
}

/// `N(I; τ, b) = det_6(g)` for `(b_1, b_2) = (τ, 1) g`.
pub fn ideal_norm_sa(a: &dyn AssocCns<QElem>, ideal: &IdealSA) -> Q {
    det6(a, &ideal.g()).as_q().expect("g has rational entries")
}

/// True when every coordinate of `x` lies in `S`.
pub fn w_integral(ring: &QuadRing, x: &WElem<QElem>) -> bool {
    x.to_vec().iter().all(|e| ring.is_integral(e))
}

fn m2_integral(m: &M2<Q>) -> bool {
    m.e.iter().all(|x| x.iter().all(is_integral))
}

/// The matrix `M ∈ M_2(A_F)` with `τ b = b M`, which describes the action of
/// `S` on `I` in the basis `b`. `None` when `b` is not a basis.
pub fn s_action(a: &dyn AssocCns<QElem>, ideal: &IdealSA) -> Option<M2<Q>> {
    let alg = &ideal.ring.alg;
    let n = a.dim();
    let [b1, b2] = &ideal.basis;
    let tau = ideal.ring.tau();
    let cols: Vec<Vec<Q>> = (0..2 * n)
        .map(|k| {
            let (b, i) = if k < n { (b1, k) } else { (b2, k - n) };
            flatten(alg, &a.mul(b, &v::unit(n, i)))
        })
        .collect();
    let m: Vec<Vec<Q>> = (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut out = Vec::new();
    for b in [b1, b2] {
        let sol = solve(&m, &flatten(alg, &v::smul(&tau, b)))?;
        out.push((sol[..n].to_vec(), sol[n..].to_vec()));
    }
    let [(m11, m21), (m12, m22)]: [(Vec<Q>, Vec<Q>); 2] = out.try_into().ok()?;
    Some(M2::new(m11, m12, m21, m22))
}

/// Checks the balanced condition and its companions: `β` a unit, `b` a
/// basis of `A_E` over `A_F`, `S I ⊆ I`, integrality of `β^{-1} b!`, the
/// norm equality, and `⟨X, X̄⟩ = ω^3 det_6(g) / N(β)`.
pub fn balanced_check_sa(a: &dyn AssocCns<QElem>, ideal: &IdealSA) -> Certificate {
    let ring = &ideal.ring;
    let mut cert = Certificate::new();
    let unit = cert.check("β is a unit of E", ideal.beta.is_unit());
    let nm = ideal_norm_sa(a, ideal);
    let basis = cert.check("b is a basis of A_E over A_F", !nm.is_zero());
    let closed = basis && s_action(a, ideal).is_some_and(|m| m2_integral(&m));
    cert.check("S I ⊆ I", closed);
    let x = if unit { ideal.x(a) } else { None };
    cert.check(INTEGRALITY, x.as_ref().is_some_and(|x| w_integral(ring, x)));
    cert.check(NORM, nm == ideal.beta.norm_in(&ring.alg));
    if let (Some(x), true) = (&x, unit) {
        let w = ring.omega();
        let w3 = w.mul(&w).mul(&w);
        let lhs = pair(a, x, &x.map(|e| e.conj()));
        let rhs = w3.scale(&(&nm / ideal.beta.norm_in(&ring.alg)));
        cert.check("⟨X, X̄⟩ = ω^3 det_6(g) / N(β)", lhs == rhs);
    }
    cert
}

/// The output of [`cube_to_balanced`].
#[derive(Clone, Debug)]
pub struct CubeIdeal {
    /// The balanced ideal.
    pub ideal: IdealSA,
    /// The row `ℓ` with `b = ℓ ε`.
    pub ell: (Vec<Q>, Vec<Q>),
    /// `Ω(v) = (q(v) + R_r(v))/2`, the action of `τ` on column vectors.
    pub omega_action: M2<Q>,
    /// `ε(v)`.
    pub epsilon: M2<QElem>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Canonical rows first, then seeded random integer rows of growing height.
fn candidate_rows(n: usize, bound: i64, seed: u64) -> Vec<(Vec<Q>, Vec<Q>)> {
    let z = v::zero::<Q>(n);
    let one = |i: usize| v::unit::<Q>(n, i);
    let mut rows = vec![];
    for i in 0..n {
        rows.push((one(i), z.clone()));
        rows.push((z.clone(), one(i)));
    }
    let mut rng = random::rng(seed);
    for h in 1..=bound.max(1) {
        for _ in 0..8 * n {
            rows.push((random::int_vec(&mut rng, n, h), random::int_vec(&mut rng, n, h)));
        }
    }
    rows
}

fn row_trace(alg: &Arc<QAlg>, r: &Pair2) -> (Vec<Q>, Vec<Q>) {
    let tr = |x: &[QElem]| x.iter().map(|e| e.trace_in(alg)).collect();
    (tr(&r.0), tr(&r.1))
}

/// Builds the balanced ideal of an integral `v ∈ W_A` with `q(v) = D ≠ 0`.
///
/// The row `ℓ = tr_{E/F}(ℓ_1 ε)` is searched over `ℓ_1 ∈ {r, ω r}` for
/// candidate integer rows `r` of height up to `bound`, until
/// `β(ℓ) = ω^{-3} ⟨ℓ!, X(v, -ω)⟩` is a unit.
pub fn cube_to_balanced(a: &dyn AssocCns<QElem>, v: &WElem<Q>, bound: i64) -> Result<CubeIdeal> {
    if !v.to_vec().iter().all(is_integral) {
        return Err(Error::Precondition("v must have integer coordinates".into()));
    }
    let lift = lift_wj(a, v)?;
    let ring = QuadRing { alg: lift.alg.clone(), ..quad_ring(&lift.q)? };
    let w = lift.omega.clone();
    let ve = to_e(v);
    let mut cert = Certificate::new();
    cert.absorb("lift", lift.certificate.clone());
    cert.check("X(v) ∈ W_A ⊗ S", w_integral(&ring, &lift.x));

    let rr = r_right(a, &ve);
    let d = QElem::Const(lift.q.clone());
    let z = QElem::zero();
    cert.check("R_r(v)^2 = q(v)", rr.mul(a, &rr) == M2::scalars(a, d.clone(), z.clone(), z.clone(), d.clone()));
    let big_omega = m2_rational(&rr.add(&M2::scalars(a, d.clone(), z.clone(), z.clone(), d.clone())).qmul(&qi(2).recip()))
        .expect("R_r(v) is rational");
    cert.check("Ω(v) ∈ M_2(A)", m2_integral(&big_omega));
    let oe = m2_const(&big_omega);
    let c0 = QElem::Const((&lift.q * &lift.q - &lift.q) / qi(4));
    let rel = oe.mul(a, &oe).sub(&oe.smul(&d)).add(&M2::scalars(a, c0.clone(), z.clone(), z.clone(), c0));
    cert.check("Ω^2 - DΩ + (D^2 - D)/4 = 0", rel.is_zero());

    let eps = half_shift(a, &rr, &w).smul(&w.inv().expect("ω is a unit"));
    let w3inv = w.mul(&w).mul(&w).inv().expect("ω is a unit");
    let n = a.dim();
    let mut found = None;
    'search: for r in candidate_rows(n, bound, 0x5e11) {
        let re: Pair2 = (consts(&r.0), consts(&r.1));
        for l1 in [re.clone(), (v::smul(&w, &re.0), v::smul(&w, &re.1))] {
            let ell = row_trace(&lift.alg, &eps.apply_row(a, &l1));
            let le: Pair2 = (consts(&ell.0), consts(&ell.1));
            let beta = pair(a, &shriek_row(a, &le.0, &le.1), &lift.xbar).mul(&w3inv);
            if beta.is_unit() {
                found = Some((ell, beta));
                break 'search;
            }
        }
    }
    let (ell, beta) = found.ok_or_else(|| Error::BoundExceeded(format!("no row ℓ with β(ℓ) a unit up to height {bound}")))?;
    let le: Pair2 = (consts(&ell.0), consts(&ell.1));
    let b = eps.apply_row(a, &le);
    cert.check("ℓ ε = tr_{E/F}(ℓ ε) ε", {
        let t = row_trace(&lift.alg, &b);
        eps.apply_row(a, &(consts(&t.0), consts(&t.1))) == b
    });
    let ideal = IdealSA { ring, basis: [b.0, b.1], beta };
    cert.check("β^{-1} b! = X(v)", ideal.x(a).as_ref() == Some(&lift.x));
    let w3 = w.mul(&w).mul(&w);
    cert.check("⟨X(v), X̄(v)⟩ = ω^3", pair(a, &lift.x, &lift.xbar) == w3);
    cert.check("τ b = b Ω(v)", s_action(a, &ideal).as_ref() == Some(&big_omega));
    cert.absorb("balanced", balanced_check_sa(a, &ideal));
    Ok(CubeIdeal { ideal, ell, omega_action: big_omega, epsilon: eps, certificate: cert })
}

/// Recovers `v` from balanced data through `β^{-1} b! = τ v + v'`, after
/// checking the balanced condition, and verifies `q(v) = D` and
/// `X(I, b, β) = X(v)`.
pub fn balanced_to_cube(a: &dyn AssocCns<QElem>, ideal: &IdealSA) -> Result<(WElem<Q>, Certificate)> {
    let check = balanced_check_sa(a, ideal);
    if let Some(f) = check.failures().first() {
        return Err(Error::Precondition(format!("data is not balanced: {f} fails")));
    }
    let ring = &ideal.ring;
    let x = ideal.x(a).expect("β is a unit");
    let v = x.map(|e| ring.tau_coords(e).1);
    let mut cert = check;
    let qv = quartic(a, &to_e(&v));
    cert.check("q(v) = D", qv == QElem::Const(ring.d.clone()));
    cert.check("X(I, b, β) = X(v)", x_of(a, &to_e(&v), &ring.omega()) == x);
    Ok((v, cert))
}

/// Decides whether `(b', β') = (x b, n(x) β)` for some `x ∈ A_E^×`.
pub fn equivalence_test_sa(a: &dyn AssocCns<QElem>, d1: &IdealSA, d2: &IdealSA) -> Equivalence {
    if d1.ring.d != d2.ring.d {
        return Equivalence::NotEquivalent { reason: "different quadratic rings".into() };
    }
    let alg = &d1.ring.alg;
    let n = a.dim();
    let w = d1.ring.omega();
    let span: Vec<Vec<QElem>> =
        (0..n).flat_map(|i| [v::unit(n, i), v::smul(&w, &v::unit::<QElem>(n, i))]).collect();
    let b2: Vec<Vec<QElem>> = d2.basis.iter().map(|b| b.iter().map(|e| QElem::new(alg, e.coords_in(&d2.ring.alg))).collect()).collect();
    let x = match left_multiplier(alg, &span, |s, b| a.mul(s, b), &d1.basis, &b2) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let nx = a.norm(&x);
    if !nx.is_unit() {
        return Equivalence::NotEquivalent { reason: "x is not a unit".into() };
    }
    let beta2 = QElem::new(alg, d2.beta.coords_in(&d2.ring.alg));
    if nx.mul(&d1.beta) != beta2 {
        return Equivalence::NotEquivalent { reason: "β' ≠ n(x) β".into() };
    }
    witness(alg, &x)
}

/// `v · g` for the right action of `M_2(A)` on `W_A`.
pub fn act_cube(a: &dyn AssocCns<QElem>, v: &WElem<Q>, g: &M2<Q>) -> WElem<Q> {
    act(a, &m2_const(g), &to_e(v), Side::Right).map(|e| e.as_q().expect("rational action"))
}

/// The field invariant `(E, ω, λ)` of a rank four `v ∈ W_A`.
#[derive(Clone, Debug)]
pub struct FieldInvariantB1 {
    /// `E = Q[ω]/(ω^2 - q(v))`.
    pub alg: Arc<QAlg>,
    /// `q(v)`.
    pub q: Q,
    /// `λ = ⟨ℓ_0!, X(v)⟩`.
    pub lambda: QElem,
    /// The row `ℓ_0`.
    pub row: Pair2,
    /// A column `η` with `⟨X(v), η!⟩` a unit.
    pub eta: Pair2,
    /// `x = ℓ J_2 U η` with `ℓ = ℓ̄_0` and `U = (ω + R(v))/2`.
    pub witness: Vec<QElem>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Computes `λ(X(v))` and the witness that `N_{E/F}(λ)` is a norm from
/// `A_E`: `n(ℓ J_2 U η) = ⟨X(v), η!⟩ ⟨ℓ!, X̄(v)⟩`. The column is `η = ℓ_0`
/// read as a column when that gives `⟨X(v), η!⟩ = -λ`, so that
/// `n(-x) = N_{E/F}(λ)`; otherwise it is searched and the certificate records
/// the product identity only.
pub fn field_invariant_b1(a: &dyn AssocCns<QElem>, v: &WElem<Q>, bound: i64) -> Result<FieldInvariantB1> {
    let lift = lift_wj(a, v)?;
    let rep = lambda_invariant(a, &lift.x, bound)?;
    let lambda = rep.lambda.clone();
    let conj_row = |r: &Pair2| -> Pair2 { (r.0.iter().map(|e| e.conj()).collect(), r.1.iter().map(|e| e.conj()).collect()) };
    let ell = conj_row(&rep.row);
    let lam_col = |eta: &Pair2| pair(a, &lift.x, &shriek_col(a, &eta.0, &eta.1));
    let mut eta = rep.row.clone();
    let exact = lam_col(&eta) == lambda.neg();
    if !exact {
        eta = candidate_rows(a.dim(), bound, 0x3b1)
            .into_iter()
            .map(|r| (consts(&r.0), consts(&r.1)))
            .find(|e| lam_col(e).is_unit())
            .ok_or_else(|| Error::BoundExceeded(format!("no column η with ⟨X, η!⟩ a unit up to height {bound}")))?;
    }
    let u = half_shift(a, &r_of(a, &to_e(v)), &lift.omega);
    let ue = u.apply_col(a, &eta);
    let x = v::sub(&a.mul(&ell.0, &ue.1), &a.mul(&ell.1, &ue.0));
    let mut cert = Certificate::new();
    cert.absorb("lift", lift.certificate.clone());
    cert.check("⟨ℓ!, X̄(v)⟩ = λ̄", pair(a, &shriek_row(a, &ell.0, &ell.1), &lift.xbar) == lambda.conj());
    cert.check("n(ℓ J_2 U η) = ⟨X(v), η!⟩ ⟨ℓ!, X̄(v)⟩", a.norm(&x) == lam_col(&eta).mul(&lambda.conj()));
    let witness = if exact { v::neg(&x) } else { x };
    if exact {
        cert.check("n(x) = N_{E/F}(λ)", a.norm(&witness) == QElem::Const(lambda.norm_in(&lift.alg)));
    }
    Ok(FieldInvariantB1 { alg: lift.alg.clone(), q: lift.q.clone(), lambda, row: rep.row, eta, witness, certificate: cert })
}
