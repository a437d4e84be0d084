//! Balanced `T ⊗ C`-ideals for an associative composition algebra `C` over
//! `Z`, and their bijection with non-degenerate pairs `(A, B) ∈ H_3(C)^2`.
//!
//! From `(A, B)` and a row `v_0 ∈ C^3` one sets `b_j = v_0 ε E_j` and
//! `β = (v_0^* v_0, Y)/Q`, so that `β^{-1} b^* b = X = -Aθ + Bω + A# × B#`.
//! In the other direction `β^{-1} b^* b` is split over `(1, ω, θ)`.

use super::{flatten, in_cubic_order, left_multiplier, witness, CubicRing, Equivalence, IdealJson, RingJson};
use crate::cns::h3::CMat;
use crate::cns::{Cns, H3};
use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::lifting::law2::{cmat_const, pair_lift, pair_lift_h3, PairLift};
use crate::lifting::lowrank::hermitian_rank1_decompose;
use crate::lifting::{consts, Structure};
use crate::random;
use crate::report::Certificate;
use crate::scalars::linalg::solve;
use crate::scalars::{is_integral, q_to_rats, qi, rats_to_q, vec as v, QElem, Scalar, Q};

/// Clause name for the integrality half of the balanced condition.
pub const INTEGRALITY: &str = "β^{-1} b_i^* b_j ∈ C ⊗ T";
/// Clause name for the norm half of the balanced condition.
pub const NORM: &str = "N_6(g) = N_{L/F}(β)";

/// A based fractional `T ⊗ C`-ideal `I = b_1 C + b_2 C + b_3 C ⊆ C_L` with
/// `β ∈ L`.
#[derive(Clone, Debug)]
pub struct IdealTC {
    /// `T` with its good basis, and `L = T ⊗ Q`.
    pub ring: CubicRing,
    /// `C`.
    pub comp: CompDesc,
    /// `(b_1, b_2, b_3)`, each an element of `C_L` written on the basis of `C`.
    pub basis: [Vec<QElem>; 3],
    /// `β`.
    pub beta: QElem,
}

impl IdealTC {
    /// Serializable form.
    pub fn to_json(&self) -> IdealJson {
        IdealJson::new(RingJson::Cubic { form: q_to_rats(&self.ring.f) }, &self.ring.alg, &self.basis, &self.beta)
    }

    /// Reads the serializable form over `C`.
    pub fn from_json(j: &IdealJson, comp: &CompDesc) -> Result<IdealTC> {
        let RingJson::Cubic { form } = &j.ring else {
            return Err(Error::Parse("expected a cubic ring {\"cubic\": {\"form\": [...]}}".into()));
        };
        let f: [Q; 4] = rats_to_q(form).try_into().map_err(|_| Error::Parse("a binary cubic form has four coefficients".into()))?;
        let ring = CubicRing::new(f);
        let (basis, beta) = j.elements(&ring.alg, 3, comp.dim())?;
        Ok(IdealTC { ring, comp: comp.clone(), basis: basis.try_into().expect("three basis elements"), beta })
    }

    /// `b` as a `1 x 3` matrix over `C_L`.
    pub fn row(&self) -> CMat<QElem> {
        CMat::from_entries(1, 3, self.basis.to_vec())
    }

    /// `X_{I, β} = β^{-1} b^* b`, when `β` is a unit.
    pub fn x(&self) -> Option<CMat<QElem>> {
        let inv = self.beta.inv()?;
        let r = self.row();
        Some(r.conj_t(&self.comp).mul(&self.comp, &r).scale(&inv))
    }

    /// The matrix `g ∈ M_3(C_F)` with `(b_1, b_2, b_3) = (1, ω, θ) g`.
    pub fn g(&self) -> CMat<Q> {
        let alg = &self.ring.alg;
        let mut g = CMat::zero(&self.comp, 3, 3);
        for (j, b) in self.basis.iter().enumerate() {
            let coords: Vec<Vec<Q>> = b.iter().map(|e| e.coords_in(alg)).collect();
            for i in 0..3 {
                g.set(i, j, coords.iter().map(|c| c[i].clone()).collect());
            }
        }
        g
    }

    /// The data `(b m, β)`.
    pub fn act(&self, m: &CMat<Q>) -> IdealTC {
        let bm = self.row().mul(&self.comp, &cmat_const(m));
        IdealTC { basis: [0, 1, 2].map(|j| bm.get(0, j).to_vec()), ..self.clone() }
    }
}

/// `N_6(m) = n(m m^*)`, the degree six reduced norm on `M_3(C)`.
pub fn n6<S: Scalar>(comp: &CompDesc, m: &CMat<S>) -> S {
    let h = H3::new(comp.clone());
    let mm = m.mul(comp, &m.conj_t(comp));
    Cns::<S>::norm(&h, &h.from_mat(&mm))
}

/// `N(I; (1, ω, θ), b) = N_6(g)`.
pub fn ideal_norm_tc(ideal: &IdealTC) -> Q {
    n6(&ideal.comp, &ideal.g())
}

fn cmat_integral(m: &CMat<Q>) -> bool {
    m.entries.iter().all(|e| e.iter().all(is_integral))
}

/// The matrix `S ∈ M_3(C_F)` with `λ b = b S`. `None` when `b` is not a
/// basis of `C_L` over `C_F`.
pub fn t_action(ideal: &IdealTC, lambda: &QElem) -> Option<CMat<Q>> {
    let comp = &ideal.comp;
    let alg = &ideal.ring.alg;
    let k = comp.dim();
    let cols: Vec<Vec<Q>> = (0..3 * k)
        .map(|u| flatten(alg, &comp.mul(&ideal.basis[u / k], &comp.basis::<QElem>(u % k))))
        .collect();
    let m: Vec<Vec<Q>> = (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut s = CMat::zero(comp, 3, 3);
    for j in 0..3 {
        let sol = solve(&m, &flatten(alg, &v::smul(lambda, &ideal.basis[j])))?;
        for i in 0..3 {
            s.set(i, j, sol[i * k..(i + 1) * k].to_vec());
        }
    }
    Some(s)
}

/// Checks the balanced condition and its companions: `β` a unit, `b` a basis,
/// `T I ⊆ I`, integrality of `β^{-1} b^* b`, the norm equality and
/// `(X, Y) = disc(1, ω, θ) N_6(g) / N(β)`.
pub fn balanced_check_tc(ideal: &IdealTC) -> Certificate {
    let t = &ideal.ring;
    let mut cert = Certificate::new();
    let unit = cert.check("β is a unit of L", ideal.beta.is_unit());
    let nm = ideal_norm_tc(ideal);
    let basis = cert.check("b is a basis of C_L over C_F", !nm.is_zero());
    let closed = basis
        && [t.omega(), t.theta()].iter().all(|l| t_action(ideal, l).is_some_and(|s| cmat_integral(&s)));
    cert.check("T I ⊆ I", closed);
    let x = if unit { ideal.x() } else { None };
    cert.check(INTEGRALITY, x.as_ref().is_some_and(|x| x.entries.iter().all(|e| e.iter().all(|c| in_cubic_order(t, c)))));
    let nb = ideal.beta.norm_in(&t.alg);
    cert.check(NORM, nm == nb);
    if let (Some(x), true) = (&x, unit) {
        let h = H3::new(ideal.comp.clone());
        let xs = h.from_mat(x);
        let y = v::qmul(&crate::scalars::q(1, 2), &crate::cns::tensor::cross_t(&h, &t.t, &t.alg, &xs, &xs));
        let lhs = Cns::<QElem>::pair(&h, &xs, &y);
        cert.check("(X, Y) = disc(1, ω, θ) N_6(g) / N(β)", lhs == QElem::Const(t.basis_disc() * &nm / &nb));
    }
    cert
}

/// The output of [`pair_to_balanced`].
#[derive(Clone, Debug)]
pub struct PairIdeal {
    /// The balanced ideal.
    pub ideal: IdealTC,
    /// The row `v_0` with `b = v_0 ε`.
    pub v0: Vec<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

fn row_const(comp: &CompDesc, row: &[Q]) -> CMat<QElem> {
    CMat::from_entries(1, 3, row.chunks(comp.dim()).map(consts).collect())
}

/// `v Y v^*` for a row `v` over `C_L`, which is central.
fn vyv(comp: &CompDesc, h: &H3, y: &[QElem], row: &CMat<QElem>) -> QElem {
    row.mul(comp, &h.to_mat(y)).mul(comp, &row.conj_t(comp)).get(0, 0)[0].clone()
}

fn pair_inputs_integral(a: &[Q], b: &[Q]) -> Result<()> {
    if a.iter().chain(b).all(is_integral) {
        Ok(())
    } else {
        Err(Error::Precondition("A and B must have integer coordinates".into()))
    }
}

/// Builds the balanced ideal of an integral non-degenerate pair.
///
/// When `v0` is absent it is searched as `tr_{L/F}(v_1 ε)` over
/// `v_1 ∈ {r, ω r, θ r}` for candidate integer rows `r` of height up to
/// `bound`, until `(v_0^* v_0, Y)` is a unit of `L`.
pub fn pair_to_balanced(comp: &CompDesc, a: &[Q], b: &[Q], v0: Option<&[Q]>, bound: i64) -> Result<PairIdeal> {
    pair_inputs_integral(a, b)?;
    let (lift, sr, eps) = pair_lift_h3(comp, a, b)?;
    let eps = eps.ok_or_else(|| Error::Precondition("the pair is degenerate: Q((A, B)) = 0".into()))?;
    let h = H3::new(comp.clone());
    let t = &lift.cubic;
    let k = comp.dim();
    let unit_at = |row: &[Q]| vyv(comp, &h, &lift.y, &row_const(comp, row)).is_unit();
    let v0 = match v0 {
        Some(r) => {
            if r.len() != 3 * k || !unit_at(r) {
                return Err(Error::Precondition("(v_0^* v_0, Y) must be a unit of L".into()));
            }
            r.to_vec()
        }
        None => {
            let mut rng = random::rng(0x7a3);
            let fixed = (0..3).map(|i| v::unit::<Q>(3 * k, i * k)).chain([ones(comp)]);
            let rand = (1..=bound.max(1)).flat_map(|hgt| (0..24).map(move |_| hgt)).map(|hgt| random::int_vec(&mut rng, 3 * k, hgt));
            let mut found = None;
            'search: for r in fixed.chain(rand) {
                for lam in [QElem::one(), t.omega(), t.theta()] {
                    let v1 = row_const(comp, &r).scale(&lam).mul(comp, &eps.eps);
                    let cand: Vec<Q> = v1.entries.iter().flat_map(|e| e.iter().map(|c| c.trace_in(&t.alg))).collect();
                    if unit_at(&cand) {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
            found.ok_or_else(|| Error::BoundExceeded(format!("no v_0 with (v_0^* v_0, Y) a unit up to height {bound}")))?
        }
    };
    let row = row_const(comp, &v0);
    let b = row.mul(comp, &eps.eps);
    let beta = vyv(comp, &h, &lift.y, &row).scale(&lift.cubic.q.recip());
    let ideal = IdealTC { ring: t.clone(), comp: comp.clone(), basis: [0, 1, 2].map(|j| b.get(0, j).to_vec()), beta };
    let mut cert = Certificate::new();
    cert.absorb("lift", lift.certificate.clone());
    cert.absorb("S_r", sr.certificate.clone());
    cert.absorb("ε", eps.certificate.clone());
    cert.check("β^{-1} b^* b = X(A, B)", ideal.x().map(|x| h.from_mat(&x)).as_ref() == Some(&lift.x));
    let acts = [(1, t.omega()), (2, t.theta())]
        .iter()
        .all(|(i, l)| t_action(&ideal, l).as_ref() == Some(&sr.sr(&v::unit(3, *i))));
    cert.check("T acts on I through S_r", acts);
    cert.absorb("balanced", balanced_check_tc(&ideal));
    Ok(PairIdeal { ideal, v0, certificate: cert })
}

fn ones(comp: &CompDesc) -> Vec<Q> {
    (0..3).flat_map(|_| comp.one::<Q>()).collect()
}

/// Recovers `(A', B')` from balanced data through
/// `β^{-1} b^* b = -A'θ + B'ω + C'`, after checking the balanced condition,
/// and verifies that the binary cubic of `(A', B')` is the cubic of the ring,
/// that `X(A', B') = X_{I, β}` and that `(X, Y) = disc(1, ω, θ) ≠ 0`.
pub fn balanced_to_pair(ideal: &IdealTC) -> Result<(Vec<Q>, Vec<Q>, Certificate)> {
    let check = balanced_check_tc(ideal);
    if let Some(f) = check.failures().first() {
        return Err(Error::Precondition(format!("data is not balanced: {f} fails")));
    }
    let t = &ideal.ring;
    let h = H3::new(ideal.comp.clone());
    let x = h.from_mat(&ideal.x().expect("β is a unit"));
    let coords: Vec<Vec<Q>> = x.iter().map(|e| e.coords_in(&t.alg)).collect();
    let a: Vec<Q> = coords.iter().map(|c| -c[2].clone()).collect();
    let b: Vec<Q> = coords.iter().map(|c| c[1].clone()).collect();
    let lift = pair_h3(&ideal.comp, &a, &b);
    let mut cert = check;
    cert.check("n(A'x + B'y) is the cubic of T", lift.cubic.f == t.f);
    let mapped: Vec<QElem> = lift.x.iter().map(|e| QElem::new(&t.alg, e.coords_in(&lift.cubic.alg))).collect();
    cert.check("X(A', B') = X_{I, β}", mapped == x);
    cert.check("(X, Y) = disc(1, ω, θ) ≠ 0", !t.q.is_zero() && lift.certificate.all_passed());
    Ok((a, b, cert))
}

/// The lift of a pair in `H_3(C)`.
pub fn pair_h3(comp: &CompDesc, a: &[Q], b: &[Q]) -> PairLift {
    let h = H3::new(comp.clone());
    pair_lift(&Structure { q: Box::new(h.clone()), e: Box::new(h) }, a, b)
}

/// Decides whether `(b', β') = (x b, n_C(x) β)` for some `x ∈ C_L^×`.
pub fn equivalence_test_tc(d1: &IdealTC, d2: &IdealTC) -> Equivalence {
    if d1.ring.f != d2.ring.f || d1.comp != d2.comp {
        return Equivalence::NotEquivalent { reason: "different cubic rings or composition algebras".into() };
    }
    let comp = &d1.comp;
    let alg = &d1.ring.alg;
    let span: Vec<Vec<QElem>> = (0..comp.dim())
        .flat_map(|c| (0..3).map(move |i| (c, i)))
        .map(|(c, i)| v::smul(&QElem::basis(alg, i), &comp.basis::<QElem>(c)))
        .collect();
    let x = match left_multiplier(alg, &span, |s, b| comp.mul(s, b), &d1.basis, &d2.basis) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let nx = comp.norm(&x);
    if !nx.is_unit() {
        return Equivalence::NotEquivalent { reason: "x is not a unit".into() };
    }
    if nx.mul(&d1.beta) != d2.beta {
        return Equivalence::NotEquivalent { reason: "β' ≠ n(x) β".into() };
    }
    witness(alg, &x)
}

/// The images of `(1, ω', θ')` under the isomorphism `L' -> L` that sends
/// `(ω'_0, θ'_0)` to `(ω_0, θ_0) g`, after checking that it respects the
/// multiplication tables. `None` when it does not.
pub fn basis_change(t: &CubicRing, t2: &CubicRing, g: &[[Q; 2]; 2]) -> Option<[QElem; 3]> {
    let (w0, th0) = (t.omega0(), t.theta0());
    let w = w0.scale(&g[0][0]).add(&th0.scale(&g[1][0])).sub(&QElem::Const(&t2.f[1] / qi(3)));
    let th = w0.scale(&g[0][1]).add(&th0.scale(&g[1][1])).add(&QElem::Const(&t2.f[2] / qi(3)));
    let images = [QElem::one(), w, th];
    let ok = (1..3).all(|i| {
        (i..3).all(|j| images[i].mul(&images[j]) == map_elem(&images, &t2.alg.table()[i][j]))
    });
    ok.then_some(images)
}

/// `x_0 + x_1 φ(ω') + x_2 φ(θ')`.
pub fn map_elem(images: &[QElem; 3], x: &[Q]) -> QElem {
    images.iter().zip(x).fold(QElem::zero(), |acc, (e, c)| acc.add(&e.scale(c)))
}

/// Transports data over `L'` to `L` along [`basis_change`] images.
pub fn transport(ideal: &IdealTC, t: &CubicRing, images: &[QElem; 3]) -> IdealTC {
    let alg = &ideal.ring.alg;
    let m = |e: &QElem| map_elem(images, &e.coords_in(alg));
    IdealTC {
        ring: t.clone(),
        comp: ideal.comp.clone(),
        basis: ideal.basis.clone().map(|b| b.iter().map(m).collect()),
        beta: m(&ideal.beta),
    }
}

/// `(A, B) g = (g_11 A + g_21 B, g_12 A + g_22 B)` followed by
/// `h -> m^* h m` on both entries.
pub fn act_pair(comp: &CompDesc, a: &[Q], b: &[Q], g: &[[Q; 2]; 2], m: &CMat<Q>) -> (Vec<Q>, Vec<Q>) {
    let h = H3::new(comp.clone());
    let mix = |x: &Q, y: &Q| v::add(&v::qmul(x, a), &v::qmul(y, b));
    let conj = |x: &[Q]| h.from_mat(&m.conj_t(comp).mul(comp, &h.to_mat(x)).mul(comp, m));
    (conj(&mix(&g[0][0], &g[1][0])), conj(&mix(&g[0][1], &g[1][1])))
}

/// The field invariant `(L, (1, ω, θ), μ)` of a non-degenerate pair.
#[derive(Clone, Debug)]
pub struct FieldInvariantB2 {
    /// The cubic ring and `L`.
    pub cubic: CubicRing,
    /// `μ` with `X = μ v_0 v_0^*`.
    pub mu: QElem,
    /// The column `v_0`.
    pub v0: CMat<QElem>,
    /// `m ∈ M_3(C)` with `v_0^* = (1, ω, θ) m`.
    pub m: CMat<Q>,
    /// `x ∈ C` with `n(x) = N_{L/F}(μ)`.
    pub norm_witness: Vec<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Reduces `m` to upper triangular form by row swaps and row operations
/// `r_i -> r_i - c r_k`, which leave `N_6` unchanged, and returns the product
/// `d_1 d_2 d_3` of the diagonal, so that `N_6(m) = n(d_1 d_2 d_3)`. `None`
/// when `m` is singular.
pub fn triangular_norm_element(comp: &CompDesc, m: &CMat<Q>) -> Option<Vec<Q>> {
    let mut m = m.clone();
    let mut prod = comp.one::<Q>();
    for k in 0..3 {
        let p = (k..3).find(|&i| !v::is_zero(m.get(i, k)))?;
        if p != k {
            for j in 0..3 {
                let (x, y) = (m.get(p, j).to_vec(), m.get(k, j).to_vec());
                m.set(p, j, y);
                m.set(k, j, x);
            }
        }
        let inv = comp.inv(m.get(k, k))?;
        for i in k + 1..3 {
            let c = comp.mul(m.get(i, k), &inv);
            for j in 0..3 {
                let e = v::sub(m.get(i, j), &comp.mul(&c, m.get(k, j)));
                m.set(i, j, e);
            }
        }
        prod = comp.mul(&prod, m.get(k, k));
    }
    Some(prod)
}

/// Computes `μ` from `X = μ v_0 v_0^*` and the witness that `N_{L/F}(μ)` is
/// a norm from `C`: writing `v_0^* = (1, ω, θ) m` gives
/// `N_{L/F}(μ) N_6(m) = 1`, and the witness is the inverse of the
/// [`triangular_norm_element`] of `m`.
pub fn field_invariant_b2(comp: &CompDesc, a: &[Q], b: &[Q]) -> Result<FieldInvariantB2> {
    let (lift, _, eps) = pair_lift_h3(comp, a, b)?;
    if eps.is_none() {
        return Err(Error::Precondition("the pair is degenerate: Q((A, B)) = 0".into()));
    }
    let h = H3::new(comp.clone());
    let t = lift.cubic.clone();
    let d = hermitian_rank1_decompose(comp, &h.to_mat(&lift.x))?;
    let row = d.v0.conj_t(comp);
    let mut m = CMat::zero(comp, 3, 3);
    for j in 0..3 {
        let coords: Vec<Vec<Q>> = row.get(0, j).iter().map(|e| e.coords_in(&t.alg)).collect();
        for i in 0..3 {
            m.set(i, j, coords.iter().map(|c| c[i].clone()).collect());
        }
    }
    let nm = n6(comp, &m);
    let nmu = d.mu.norm_in(&t.alg);
    let mut cert = Certificate::new();
    cert.absorb("lift", lift.certificate.clone());
    cert.check("N_{L/F}(μ) N_6(m) = 1", &nmu * &nm == qi(1));
    let d_m = triangular_norm_element(comp, &m).ok_or_else(|| Error::IdentityFailed("m is singular".into()))?;
    cert.check("N_6(m) = n(d_1 d_2 d_3)", comp.norm(&d_m) == nm);
    let norm_witness = comp.inv(&d_m).expect("pivots are units");
    cert.check("n(x) = N_{L/F}(μ)", comp.norm(&norm_witness) == nmu);
    Ok(FieldInvariantB2 { cubic: t, mu: d.mu, v0: d.v0, m, norm_witness, certificate: cert })
}

/// `(A S_r(μ), B S_r(μ))`, the pair whose lift is `μ N_{L/F}(μ) X` on the
/// good basis `N_{L/F}(μ) (ω, θ)`, after checking that both entries are
/// Hermitian.
pub fn scale_admissible(comp: &CompDesc, a: &[Q], b: &[Q], mu: &[Q]) -> Result<(Vec<Q>, Vec<Q>)> {
    let (_, sr, _) = pair_lift_h3(comp, a, b)?;
    let h = H3::new(comp.clone());
    let s = sr.sr(mu);
    let (am, bm) = (h.to_mat(a).mul(comp, &s), h.to_mat(b).mul(comp, &s));
    if !h.is_hermitian(&am) || !h.is_hermitian(&bm) {
        return Err(Error::IdentityFailed("A S_r(μ) or B S_r(μ) is not Hermitian".into()));
    }
    Ok((h.from_mat(&am), h.from_mat(&bm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn comps() -> Vec<(&'static str, CompDesc)> {
        vec![
            ("Q", CompDesc::rationals()),
            ("Q(i)", CompDesc::quadratic(-1)),
            ("H(-1,-1)", CompDesc::quaternion(-1, -1)),
        ]
    }

    fn random_pair<R: Rng>(comp: &CompDesc, rng: &mut R) -> (Vec<Q>, Vec<Q>) {
        let n = 3 + 3 * comp.dim();
        loop {
            let (a, b) = (random::int_vec(rng, n, 2), random::int_vec(rng, n, 2));
            if !pair_h3(comp, &a, &b).cubic.q.is_zero() {
                return (a, b);
            }
        }
    }

    fn random_unipotent<R: Rng>(comp: &CompDesc, rng: &mut R) -> CMat<Q> {
        let mut m = CMat::identity(comp, 3);
        for _ in 0..3 {
            let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
            if i == j {
                continue;
            }
            let mut e = CMat::identity(comp, 3);
            e.set(i, j, random::int_vec(rng, comp.dim(), 1));
            m = m.mul(comp, &e);
        }
        m
    }

    fn random_sl2<R: Rng>(rng: &mut R) -> [[Q; 2]; 2] {
        let mut g = [[qi(1), qi(0)], [qi(0), qi(1)]];
        for _ in 0..3 {
            let t = random::int(rng, 2);
            let e = if rng.gen_bool(0.5) { [[qi(1), t], [qi(0), qi(1)]] } else { [[qi(1), qi(0)], [t, qi(1)]] };
            g = [0, 1].map(|i| [0, 1].map(|j| &g[i][0] * &e[0][j] + &g[i][1] * &e[1][j]));
        }
        g
    }

    #[test]
    fn diagonal_example() {
        let comp = CompDesc::rationals();
        let h = H3::new(comp.clone());
        let a = h.diag([qi(1), qi(1), qi(1)]);
        let b = h.diag([qi(1), qi(-1), qi(0)]);
        let pi = pair_to_balanced(&comp, &a, &b, Some(&[qi(1), qi(1), qi(1)]), 4).unwrap();
        assert_eq!(pi.ideal.ring.f, [qi(1), qi(0), qi(-1), qi(0)]);
        assert_eq!(pi.ideal.ring.q, qi(4));
        assert!(pi.certificate.all_passed(), "{:?}", pi.certificate.failures());
        let (a2, b2, cert) = balanced_to_pair(&pi.ideal).unwrap();
        assert!(cert.all_passed(), "{:?}", cert.failures());
        assert_eq!((a2, b2), (a, b));
    }

    #[test]
    fn principal_ideal_recovers_the_ring() {
        let comp = CompDesc::rationals();
        let mut rng = random::rng(12);
        let mut done = 0;
        while done < 10 {
            let f = [0, 1, 2, 3].map(|_| random::int(&mut rng, 4));
            let t = CubicRing::new(f.clone());
            if t.q.is_zero() {
                continue;
            }
            let ideal = IdealTC { ring: t.clone(), comp: comp.clone(), basis: [QElem::one(), t.omega(), t.theta()].map(|e| vec![e]), beta: QElem::one() };
            assert_eq!(ideal_norm_tc(&ideal), qi(1));
            let (a, b, cert) = balanced_to_pair(&ideal).unwrap();
            assert!(cert.all_passed(), "{f:?} {:?}", cert.failures());
            assert_eq!(pair_h3(&comp, &a, &b).cubic.f, f);
            done += 1;
        }
    }

    #[test]
    fn unbalanced_data_is_rejected() {
        let comp = CompDesc::rationals();
        let t = CubicRing::new([qi(1), qi(0), qi(-1), qi(0)]);
        let ideal = IdealTC { ring: t.clone(), comp, basis: [QElem::one(), t.omega(), t.theta()].map(|e| vec![e]), beta: QElem::Const(qi(2)) };
        assert!(!balanced_check_tc(&ideal).all_passed());
        assert!(matches!(balanced_to_pair(&ideal), Err(Error::Precondition(_))));
    }

    #[test]
    fn round_trip_and_equivariance() {
        let mut rng = random::rng(13);
        for (name, comp) in comps() {
            for _ in 0..3 {
                let (a, b) = random_pair(&comp, &mut rng);
                let pi = pair_to_balanced(&comp, &a, &b, None, 4).unwrap();
                assert!(pi.certificate.all_passed(), "{name} {:?}", pi.certificate.failures());
                let (a2, b2, cert) = balanced_to_pair(&pi.ideal).unwrap();
                assert!(cert.all_passed(), "{name} {:?}", cert.failures());
                assert_eq!((&a2, &b2), (&a, &b), "{name}");
                for _ in 0..2 {
                    let m = random_unipotent(&comp, &mut rng);
                    assert_eq!(n6(&comp, &m), qi(1));
                    let id = [[qi(1), qi(0)], [qi(0), qi(1)]];
                    let (am, bm) = act_pair(&comp, &a, &b, &id, &m);
                    let moved = pi.ideal.act(&m);
                    let (a3, b3, _) = balanced_to_pair(&moved).unwrap();
                    assert_eq!((a3, b3), (am.clone(), bm.clone()), "{name}");
                    let other = pair_to_balanced(&comp, &am, &bm, None, 4).unwrap();
                    assert!(equivalence_test_tc(&other.ideal, &moved).is_witness(), "{name}");

                    let g = random_sl2(&mut rng);
                    let (ag, bg) = act_pair(&comp, &a, &b, &g, &CMat::identity(&comp, 3));
                    let other = pair_to_balanced(&comp, &ag, &bg, None, 4).unwrap();
                    let images = basis_change(&pi.ideal.ring, &other.ideal.ring, &g).expect("ring isomorphism");
                    let back = transport(&other.ideal, &pi.ideal.ring, &images);
                    assert!(equivalence_test_tc(&back, &pi.ideal).is_witness(), "{name}");
                }
            }
        }
    }

    #[test]
    fn mu_invariant() {
        let mut rng = random::rng(14);
        for (name, comp) in comps() {
            for _ in 0..3 {
                let (a, b) = random_pair(&comp, &mut rng);
                let inv = field_invariant_b2(&comp, &a, &b).unwrap();
                assert!(inv.certificate.all_passed(), "{name} {:?}", inv.certificate.failures());
            }
        }
    }

    #[test]
    fn bhargava_pair_has_mu_one() {
        let comp = CompDesc::rationals();
        let mut rng = random::rng(15);
        let mut done = 0;
        while done < 10 {
            let f = [0, 1, 2, 3].map(|_| random::int(&mut rng, 4));
            if crate::lifting::law2::q_disc(&f).is_zero() {
                continue;
            }
            let (a, b) = crate::lifting::law2::bhargava_a1b1(&f);
            let inv = field_invariant_b2(&comp, &a, &b).unwrap();
            assert_eq!(inv.cubic.f, f);
            assert_eq!(inv.mu, QElem::one(), "{f:?}");
            assert!(inv.certificate.all_passed());
            done += 1;
        }
    }

    #[test]
    fn scaling_by_mu() {
        let mut rng = random::rng(16);
        for (name, comp) in comps() {
            let (a, b) = random_pair(&comp, &mut rng);
            let t = pair_h3(&comp, &a, &b).cubic;
            let mu = loop {
                let mu = random::int_vec(&mut rng, 3, 2);
                if !t.elem(mu[0].clone(), mu[1].clone(), mu[2].clone()).norm_in(&t.alg).is_zero() {
                    break mu;
                }
            };
            let mu_l = t.elem(mu[0].clone(), mu[1].clone(), mu[2].clone());
            let nmu = mu_l.norm_in(&t.alg);
            let (a2, b2) = scale_admissible(&comp, &a, &b, &mu).unwrap();
            let t2 = pair_h3(&comp, &a2, &b2).cubic;
            assert_eq!(t2.f.to_vec(), v::qmul(&nmu, &t.f), "{name}");
            let before = field_invariant_b2(&comp, &a, &b).unwrap();
            let after = field_invariant_b2(&comp, &a2, &b2).unwrap();
            let images = [QElem::one(), t.omega().scale(&nmu), t.theta().scale(&nmu)];
            let mapped = map_elem(&images, &after.mu.coords_in(&t2.alg));
            assert_eq!(mapped, mu_l.mul(&before.mu).scale(&nmu), "{name}");
        }
    }

    fn small_mat(comp: &CompDesc) -> impl Strategy<Value = CMat<Q>> {
        let k = comp.dim();
        prop::collection::vec(-2i64..=2, 9 * k)
            .prop_map(move |e| CMat::from_entries(3, 3, e.chunks(k).map(|c| c.iter().map(|x| qi(*x)).collect()).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn n6_is_multiplicative(m1 in small_mat(&CompDesc::quaternion(-1, -1)), m2 in small_mat(&CompDesc::quaternion(-1, -1))) {
            let comp = CompDesc::quaternion(-1, -1);
            prop_assert_eq!(n6(&comp, &m1.mul(&comp, &m2)), n6(&comp, &m1) * n6(&comp, &m2));
        }
    }
}
