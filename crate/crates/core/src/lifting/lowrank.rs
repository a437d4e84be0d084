//! Lifts of elements of rank two and three.
//!
//! * A rank two `X ∈ H_3(C)` becomes rank one in `U(γ) = H_3(C) ⊕ V_3(C)`
//!   through `-X^# = γ v* v`.
//! * A rank two `x ∈ W_{H_3(C)}` becomes rank one in `W_{U(γ)}` through an
//!   isotropic `u ∈ W_6(C)` with `-S(x) = γ u* u`.
//! * A rank three `x ∈ W_J` becomes rank one in `W_{U(h)}`, the Tits
//!   structure with `(S, λ) = (h^#, n(h))`, through `η ∈ Lift(x, h)`.

use std::sync::Arc;

use crate::cns::{CayleyU, Cns, JbkPair, TitsU, H3};
use crate::cns::h3::CMat;
use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::freudenthal::assoc::{act, s_of, shriek_col};
use crate::freudenthal::{flat, is_rank_at_most_one, rank, Side, WElem, M2};
use crate::random;
use crate::report::Certificate;
use crate::scalars::{q, q_sqrt, qi, vec as v, QElem, Scalar, Q};

use super::law1::Pair2;
use super::second::{embed_w, herm_b, project_w};

/// Number of elements of `J` tried when searching for a reducing element.
pub const REDUCTION_SEARCH_CAP: usize = 200;

/// `Y = μ v_0 v_0^*` for a rank one Hermitian matrix `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank1Decomp<S> {
    /// The scalar `μ`.
    pub mu: S,
    /// The column `v_0`, an `n x 1` matrix.
    pub v0: CMat<S>,
    /// The diagonal position used as pivot.
    pub pivot: usize,
}

fn outer<S: Scalar>(comp: &CompDesc, mu: &S, col: &CMat<S>) -> CMat<S> {
    col.mul(comp, &col.conj_t(comp)).scale(mu)
}

fn check_hermitian<S: Scalar>(comp: &CompDesc, y: &CMat<S>) -> Result<()> {
    if !comp.is_associative() {
        return Err(Error::Unsupported("rank one decomposition needs an associative composition algebra".into()));
    }
    if y.rows != y.cols || y.conj_t(comp) != *y {
        return Err(Error::Precondition("the matrix must be square and Hermitian".into()));
    }
    if y.is_zero() {
        return Err(Error::Precondition("the matrix must have rank one, not zero".into()));
    }
    Ok(())
}

/// Decomposes `Y` at the diagonal pivot `i`, which must be a unit.
///
/// The permutation moving `i` to the corner followed by the unipotent
/// operations clearing its row and column give `g` with `g Y g^* = μ e_11`,
/// and `v_0 = g^{-1} e_1` is column `i` of `Y` divided by `μ = Y_ii`.
pub fn hermitian_rank1_decompose_at<S: Scalar>(comp: &CompDesc, y: &CMat<S>, i: usize) -> Result<Rank1Decomp<S>> {
    check_hermitian(comp, y)?;
    let mu = y.get(i, i)[0].clone();
    let inv = mu.inv().ok_or_else(|| Error::Precondition(format!("diagonal entry {i} is not a unit")))?;
    let v0 = CMat::from_entries(y.rows, 1, (0..y.rows).map(|k| v::smul(&inv, y.get(k, i))).collect());
    if outer(comp, &mu, &v0) != *y {
        return Err(Error::Precondition("the matrix must have rank one".into()));
    }
    Ok(Rank1Decomp { mu, v0, pivot: i })
}

/// Diagonal positions holding units.
pub fn unit_pivots<S: Scalar>(y: &CMat<S>) -> Vec<usize> {
    (0..y.rows).filter(|&i| y.get(i, i)[0].is_unit()).collect()
}

/// Writes a rank one Hermitian `Y` over an associative `C` as `μ v_0 v_0^*`.
///
/// When no diagonal entry is a unit, a congruence by `g = 1 + t e_ij` with
/// `t` a signed basis element of `C` first produces one, and `v_0` is moved
/// back by `g^{-1} = 1 - t e_ij`. The identity `Y = μ v_0 v_0^*` is checked.
pub fn hermitian_rank1_decompose<S: Scalar>(comp: &CompDesc, y: &CMat<S>) -> Result<Rank1Decomp<S>> {
    check_hermitian(comp, y)?;
    if let Some(&i) = unit_pivots(y).first() {
        return hermitian_rank1_decompose_at(comp, y, i);
    }
    let n = y.rows;
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for k in 0..comp.dim() {
                for sign in [1, -1] {
                    let t = v::smul(&S::from_i64(sign), &comp.basis::<S>(k));
                    let mut g = CMat::identity(comp, n);
                    g.set(i, j, t.clone());
                    let y2 = g.mul(comp, y).mul(comp, &g.conj_t(comp));
                    if !y2.get(i, i)[0].is_unit() {
                        continue;
                    }
                    let d = hermitian_rank1_decompose_at(comp, &y2, i)?;
                    let mut ginv = CMat::identity(comp, n);
                    ginv.set(i, j, v::neg(&t));
                    let v0 = ginv.mul(comp, &d.v0);
                    if outer(comp, &d.mu, &v0) != *y {
                        return Err(Error::Precondition("the matrix must have rank one".into()));
                    }
                    return Ok(Rank1Decomp { mu: d.mu, v0, pivot: i });
                }
            }
        }
    }
    Err(Error::Precondition("the matrix must have rank one".into()))
}

/// `c ∈ C` with `v_2 = v_1 c` and `μ_1 = μ_2 n(c)`, which shows that two
/// decompositions of the same matrix have scalars in the same class of
/// `F^× / n(C^×)`.
pub fn rank1_witness<S: Scalar>(comp: &CompDesc, d1: &Rank1Decomp<S>, d2: &Rank1Decomp<S>) -> Option<Vec<S>> {
    let n = d1.v0.rows;
    let k = (0..n).find(|&k| comp.norm(d1.v0.get(k, 0)).is_unit())?;
    let c = comp.mul(&comp.inv(d1.v0.get(k, 0))?, d2.v0.get(k, 0));
    let ok = (0..n).all(|l| comp.mul(d1.v0.get(l, 0), &c) == d2.v0.get(l, 0)) && d1.mu == d2.mu.mul(&comp.norm(&c));
    ok.then_some(c)
}

/// Searches `c ∈ C` with `n(c) γ_1 = γ_2`, trying `c_0 / s` for integer
/// vectors `c_0` of height at most `bound` with `n(c_0) γ_1 / γ_2 = s^2`.
pub fn norm_class_witness(comp: &CompDesc, g1: &Q, g2: &Q, bound: i64) -> Option<Vec<Q>> {
    if g1.is_zero() || g2.is_zero() {
        return None;
    }
    let dim = comp.dim();
    let side = (2 * bound + 1) as usize;
    (0..side.pow(dim as u32)).find_map(|mut idx| {
        let c0: Vec<Q> = (0..dim)
            .map(|_| {
                let t = (idx % side) as i64 - bound;
                idx /= side;
                qi(t)
            })
            .collect();
        let s = q_sqrt(&(comp.norm(&c0) * g1 / g2)).filter(|s| !s.is_zero())?;
        Some(v::qmul(&s.recip(), &c0))
    })
}

/// The outcome of [`rank2_h3_lift`].
#[derive(Debug)]
pub struct Rank2H3Lift {
    /// `γ` with `-X^# = γ v* v`.
    pub gamma: Q,
    /// The row vector `v ∈ V_3(C)`, flattened.
    pub v: Vec<Q>,
    /// `U(γ)`.
    pub cayley: CayleyU,
    /// `(X, v) ∈ U(γ)`.
    pub lifted: Vec<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Lifts a rank two `X ∈ H_3(C)` to a rank one element `(X, v)` of `U(γ)`.
///
/// Checks `-X^# = γ v* v`, `v X = 0`, that `(X, v)` has rank one, and that
/// the decompositions at every unit pivot of `-X^#` give the same class of
/// `γ` in `F^× / n(C^×)`.
pub fn rank2_h3_lift(comp: &CompDesc, x: &[Q]) -> Result<Rank2H3Lift> {
    if !comp.is_associative() {
        return Err(Error::Unsupported("U(γ) needs an associative composition algebra".into()));
    }
    let h = H3::new(comp.clone());
    let r = Cns::<Q>::rank(&h, x);
    if r != 2 {
        return Err(Error::Precondition(format!("X must have rank two, not {r}")));
    }
    let y = h.to_mat(&v::neg(&h.adjoint(x)));
    let dec = hermitian_rank1_decompose(comp, &y)?;
    let row = dec.v0.conj_t(comp);
    let vrow: Vec<Q> = row.entries.concat();
    let gamma = dec.mu.clone();
    let cayley = CayleyU::new(comp.clone(), gamma.clone())?;
    let lifted = cayley.join(x, &vrow);
    let mut cert = Certificate::new();
    cert.check("-X^# = γ v* v", row.conj_t(comp).mul(comp, &row).scale(&gamma) == y);
    cert.check("v X = 0", row.mul(comp, &h.to_mat(x)).is_zero());
    cert.check("(X, v) is rank one in U(γ)", !v::is_zero(&lifted) && v::is_zero(&cayley.adjoint(&lifted)));
    let agree = unit_pivots(&y).into_iter().all(|i| {
        hermitian_rank1_decompose_at(comp, &y, i).ok().and_then(|d| rank1_witness(comp, &dec, &d)).is_some()
    });
    cert.check("γ agrees in F^×/n(C^×) across pivots", agree);
    Ok(Rank2H3Lift { gamma, v: vrow, cayley, lifted, certificate: cert })
}

fn mat_trace<S: Scalar>(comp: &CompDesc, m: &CMat<S>) -> Vec<S> {
    (0..m.rows).fold(v::zero(comp.dim()), |acc, i| v::add(&acc, m.get(i, i)))
}

fn blocks<S: Scalar>(comp: &CompDesc, b: [&CMat<S>; 4]) -> CMat<S> {
    let (n, m) = (b[0].rows, b[0].rows + b[1].rows);
    let mut out = CMat::zero(comp, m, m);
    for (k, blk) in b.iter().enumerate() {
        let (r0, c0) = ((k / 2) * n, (k % 2) * n);
        for i in 0..n {
            for j in 0..n {
                out.set(r0 + i, c0 + j, blk.get(i, j).to_vec());
            }
        }
    }
    out
}

/// `S(x) ∈ M_6(C)` for `x ∈ W_{H_3(C)}`, with blocks `b^# - ac`,
/// `ad - cb - tr(ad - cb)/2`, `ad - bc - tr(ad - bc)/2` and `c^# - bd`.
/// Products are taken in `M_3(C)` and `tr` is the `F`-valued trace, the
/// scalar part of the matrix trace, so that `S(x)` is equivariant when `C`
/// is not commutative.
pub fn s_matrix<S: Scalar>(h: &H3, x: &WElem<S>) -> CMat<S> {
    let comp = &h.comp;
    let (bm, cm) = (h.to_mat(&x.b), h.to_mat(&x.c));
    let id = CMat::<S>::identity(comp, 3);
    let ad = x.a.mul(&x.d);
    let off = |p: CMat<S>| {
        let m = id.scale(&ad).sub(&p);
        let t = comp.scalar(mat_trace(comp, &m)[0].scale(&q(1, 2)));
        let mut tid = CMat::zero(comp, 3, 3);
        for i in 0..3 {
            tid.set(i, i, t.clone());
        }
        m.sub(&tid)
    };
    let tl = h.to_mat(&h.adjoint(&x.b)).sub(&cm.scale(&x.a));
    let br = h.to_mat(&h.adjoint(&x.c)).sub(&bm.scale(&x.d));
    blocks(comp, [&tl, &off(cm.mul(comp, &bm)), &off(bm.mul(comp, &cm)), &br])
}

/// The outcome of [`rank2_w_lift`].
#[derive(Debug)]
pub struct Rank2WLift {
    /// `γ` with `-S(x) = γ u* u`.
    pub gamma: Q,
    /// `v`, the first half of `u = (v, w)`, flattened.
    pub v: Vec<Q>,
    /// `w`, the second half of `u`, flattened.
    pub w: Vec<Q>,
    /// `U(γ)`.
    pub cayley: CayleyU,
    /// `x + u = (a, (b, -v), (c, w), d)` in `W_{U(γ)}`.
    pub lifted: WElem<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Lifts a rank two `x ∈ W_{H_3(C)}` to a rank one element of `W_{U(γ)}`.
///
/// Checks `-S(x) = γ u* u`, `⟨u, u⟩_C = v w* - w v* = 0` and that
/// `x + u` has rank one.
pub fn rank2_w_lift(comp: &CompDesc, x: &WElem<Q>) -> Result<Rank2WLift> {
    if !comp.is_associative() {
        return Err(Error::Unsupported("U(γ) needs an associative composition algebra".into()));
    }
    let h = H3::new(comp.clone());
    let r = rank(&h, x);
    if r != 2 {
        return Err(Error::Precondition(format!("x must have rank two, not {r}")));
    }
    let s = s_matrix(&h, x);
    let y = s.scale(&qi(-1));
    let dec = hermitian_rank1_decompose(comp, &y)?;
    let u = dec.v0.conj_t(comp);
    let k = comp.dim();
    let flat_u: Vec<Q> = u.entries.concat();
    let (vv, ww) = flat_u.split_at(3 * k);
    let cayley = CayleyU::new(comp.clone(), dec.mu.clone())?;
    let (vr, wr) = (cayley.row(vv), cayley.row(ww));
    let iso = vr.mul(comp, &wr.conj_t(comp)).sub(&wr.mul(comp, &vr.conj_t(comp)));
    let lifted = WElem::new(x.a.clone(), cayley.join(&x.b, &v::neg(vv)), cayley.join(&x.c, ww), x.d.clone());
    let mut cert = Certificate::new();
    cert.check("-S(x) = γ u* u", u.conj_t(comp).mul(comp, &u).scale(&dec.mu) == y);
    cert.check("⟨u, u⟩_C = 0", iso.is_zero());
    cert.check("x + u is rank one in W_U(γ)", !lifted.is_zero() && is_rank_at_most_one(&cayley, &lifted));
    Ok(Rank2WLift { gamma: dec.mu, v: vv.to_vec(), w: ww.to_vec(), cayley, lifted, certificate: cert })
}

/// Which construction produced a rank three lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank3Case {
    /// Normal form with `d ≠ 0`: `h = -2 d^{-1} c^#`, `η = (1; h)`.
    DNonzero,
    /// Normal form with `d = 0` and `tr(c^#) ≠ 0`: `S = c - c^#`.
    TraceNonzero,
    /// Normal form with `d = 0` and `tr(c^#) = 0`, first moved by
    /// `diag(y^{-1}, y)` to make the trace nonzero.
    Reduced,
}

/// The outcome of [`rank3_w_lift`].
#[derive(Debug)]
pub struct Rank3Lift {
    /// `h ∈ J` with `n(h) ≠ 0`.
    pub h: Vec<Q>,
    /// `η ∈ Lift(x, h)`.
    pub eta: Pair2,
    /// The construction used on the normal form.
    pub case: Rank3Case,
    /// `U(h) = U(h^#, n(h))`.
    pub tits: TitsU,
    /// `x + η = (a, (b, -u), (c, w), d)` in `W_{U(h)}` for `η = (u; w)`.
    pub lifted: WElem<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// `g x` for `g ∈ G` with `ν(g) = 1`, read back in `W_J`.
fn act_j(p: &JbkPair, g: &M2<QElem>, x: &WElem<Q>) -> Result<WElem<Q>> {
    project_w(p, &act(p.b(), g, &embed_w(p, x), Side::Left))
        .ok_or_else(|| Error::IdentityFailed("the G action left W_J".into()))
}

/// Candidate elements of `J`: the identity, basis vectors, their sums with
/// the identity, then seeded random ones.
fn j_candidates(p: &JbkPair, cap: usize) -> Vec<Vec<Q>> {
    let j = p.j();
    let n = j.dim();
    let one = j.identity();
    let mut out = vec![one.clone()];
    out.extend((0..n).map(|i| v::unit(n, i)));
    out.extend((0..n).map(|i| v::add(&one, &v::unit(n, i))));
    let mut rng = random::rng(0x10e3);
    while out.len() < cap {
        out.push(random::int_vec(&mut rng, n, 2));
    }
    out
}

/// `h` and `η` for `x = (1, 0, c, 0)` with `t = tr(c^#) ≠ 0`:
/// `S = c - c^#`, `u = 1 - c^#/t`, `h = S^#/t`, `v = (u*)^# h`.
fn trace_case(p: &JbkPair, c: &[Q]) -> (Vec<Q>, Pair2) {
    let (j, b) = (p.j(), p.b());
    let cs = j.adjoint(c);
    let t = j.trace(&cs);
    let s = v::sub(c, &cs);
    let u = v::sub(&j.identity(), &v::qmul(&t.recip(), &cs));
    let h = v::qmul(&t.recip(), &j.adjoint(&s));
    let ub = p.embed(&u);
    let vb = b.mul(&b.adjoint(&p.star(&ub)), &p.embed(&h));
    (h, (ub, vb))
}

/// `h`, `η` for a rank three `x = (1, 0, c, d)`.
fn normal_lift(p: &JbkPair, x: &WElem<Q>) -> Result<(Vec<Q>, Pair2, Rank3Case)> {
    let (j, b) = (p.j(), p.b());
    if !x.d.is_zero() {
        let h = v::qmul(&(qi(-2) / &x.d), &j.adjoint(&x.c));
        return Ok((h.clone(), (b.identity(), p.embed(&h)), Rank3Case::DNonzero));
    }
    let cs = j.adjoint(&x.c);
    if !j.trace(&cs).is_zero() {
        let (h, eta) = trace_case(p, &x.c);
        return Ok((h, eta, Rank3Case::TraceNonzero));
    }
    let csb = p.embed(&cs);
    let y = j_candidates(p, REDUCTION_SEARCH_CAP)
        .into_iter()
        .find(|y| {
            let yb = p.embed(y);
            !j.norm(y).is_zero() && !p.pair_fixed(&b.mul(&yb, &yb), &csb).is_zero()
        })
        .ok_or_else(|| {
            Error::BoundExceeded(format!("no y with n(y) ≠ 0 and (y^2, c^#) ≠ 0 among {REDUCTION_SEARCH_CAP} candidates"))
        })?;
    let yb = p.embed(&y);
    let yinv = b.inverse(&yb).expect("n(y) ≠ 0");
    let m = M2::diag(b, yinv.clone(), yb.clone());
    let mx = act_j(p, &m, x)?;
    let s = mx.a.clone();
    let x5 = mx.qmul(&s.recip());
    let (h5, eta5) = trace_case(p, &x5.c);
    let eta = M2::diag(b, yb, yinv).apply_col(b, &eta5);
    Ok((v::qmul(&s, &h5), eta, Rank3Case::Reduced))
}

/// Lifts a rank three `x ∈ W_J` to `η ∈ Lift(x, h)`.
///
/// `x` is moved to the normal form `t (1, 0, c, d)` by unipotent elements
/// of `G`, and `Lift(t x', t h) = Lift(x', h)`. On the original `x` the
/// certificate checks `⟨η, η⟩_B = 0`, `S(x) = η h^# η*`,
/// `x^♭/2 = n(h) η!`, `n(h) ≠ 0` and that `x + η` has rank one in
/// `W_{U(h)}`.
pub fn rank3_w_lift(p: &Arc<JbkPair>, x: &WElem<Q>) -> Result<Rank3Lift> {
    let (j, b) = (p.j(), p.b());
    let r = rank(j, x);
    if r != 3 {
        return Err(Error::Precondition(format!("x must have rank three, not {r}")));
    }
    let n = b.dim();
    let (one, z) = (b.identity(), v::zero::<QElem>(n));
    let mut ginv = M2::identity(b);
    let mut xc = x.clone();
    if xc.a.is_zero() {
        let mut found = None;
        for y in j_candidates(p, REDUCTION_SEARCH_CAP) {
            let g = M2::new(one.clone(), p.embed(&y), z.clone(), one.clone());
            let gx = act_j(p, &g, &xc)?;
            if !gx.a.is_zero() {
                found = Some((gx, M2::new(one.clone(), p.embed(&v::neg(&y)), z.clone(), one.clone())));
                break;
            }
        }
        let (gx, gi) = found.ok_or_else(|| {
            Error::BoundExceeded(format!("no unipotent element making a ≠ 0 among {REDUCTION_SEARCH_CAP} candidates"))
        })?;
        xc = gx;
        ginv = gi;
    }
    let xx = v::qmul(&(qi(-1) / &xc.a), &xc.b);
    let lower = M2::new(one.clone(), z.clone(), p.embed(&xx), one.clone());
    xc = act_j(p, &lower, &xc)?;
    if !v::is_zero(&xc.b) {
        return Err(Error::IdentityFailed("the lower unipotent element did not clear b".into()));
    }
    ginv = ginv.mul(b, &M2::new(one.clone(), z.clone(), p.embed(&v::neg(&xx)), one));
    let t = xc.a.clone();
    let (hn, etan, case) = normal_lift(p, &xc.qmul(&t.recip()))?;
    let h = v::qmul(&t, &hn);
    let eta = ginv.apply_col(b, &etan);

    let mut cert = Certificate::new();
    let nh = j.norm(&h);
    cert.check("n(h) ≠ 0", !nh.is_zero());
    cert.check("⟨η, η⟩_B = 0", v::is_zero(&herm_b(p, &eta, &eta)));
    let hs = p.embed(&j.adjoint(&h));
    let rows = [&eta.0, &eta.1];
    let ent = |i: usize, k: usize| b.mul(&b.mul(rows[i], &hs), &p.star(rows[k]));
    let ehe = M2::new(ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1));
    cert.check("S(x) = η h^# η*", ehe == s_of(b, &embed_w(p, x)));
    let half_flat = embed_w(p, &flat(j, x).qmul(&q(1, 2)));
    cert.check("x♭/2 = n(h) η!", half_flat == shriek_col(b, &eta.0, &eta.1).smul(&p.kq(&nh)));
    if nh.is_zero() {
        return Err(Error::IdentityFailed("the constructed h has n(h) = 0".into()));
    }
    let tits = TitsU::new(p.clone(), j.adjoint(&h), p.kq(&nh))?;
    let lifted = WElem::new(x.a.clone(), tits.join(&x.b, &v::neg(&eta.0)), tits.join(&x.c, &eta.1), x.d.clone());
    cert.check("x + η is rank one in W_U(h)", !lifted.is_zero() && is_rank_at_most_one(&tits, &lifted));
    Ok(Rank3Lift { h, eta, case, tits, lifted, certificate: cert })
}
