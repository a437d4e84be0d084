//! The second lifting law for `W_J` with `J = B^{*=1}` inside an associative
//! `B` over a quadratic `K`.
//!
//! A rank four `v ∈ W_J` with `q(v) = ω^2` and `ω* = -ω` becomes, after a
//! choice of `η ∈ B^2` and `λ ∈ K^×` with `λ η! = (-ω v + v^♭)/2`, the rank
//! one element `v + η` of `W_U` for `U = U(S, λ)` and
//! `S = (⟨η, η⟩_B / ω)^{-1}`. The quotient `Ũ / I(v, ω)` of
//! `Ũ = J ⊕ B^2` gives the same structure without choices, and for a
//! commutative `A` the structure on `A ⊕ A^2` is written over `A` alone.

use std::sync::Arc;

use crate::cns::axioms::check_cns;
use crate::cns::{AssocCns, Cns, CnsVariant, JbkPair, TitsU};
use crate::error::{Error, Result};
use crate::freudenthal::assoc::{act, r_of, s_of, shriek_col, shriek_row, sym_cols};
use crate::freudenthal::{flat, is_rank_at_most_one, pair, quartic, Side, WElem, M2};
use crate::random;
use crate::report::Certificate;
use crate::scalars::linalg::{inverse, kernel, rank, MatQ};
use crate::scalars::{q, q_sqrt, q_to_string, qi, vec as v, QElem, Scalar, Q};

use super::law1::{half_shift, x_of, Pair2};

/// Number of columns tried when searching for `η_0`.
pub const ETA_SEARCH_CAP: usize = 400;

/// The image of `v ∈ W_J` in `W_B`.
pub fn embed_w(p: &JbkPair, x: &WElem<Q>) -> WElem<QElem> {
    WElem::new(p.kq(&x.a), p.embed(&x.b), p.embed(&x.c), p.kq(&x.d))
}

/// The involution `(a, b, c, d) -> (a*, b*, c*, d*)` on `W_B`.
pub fn star_w(p: &JbkPair, x: &WElem<QElem>) -> WElem<QElem> {
    WElem::new(x.a.conj(), p.star(&x.b), p.star(&x.c), x.d.conj())
}

/// The projection of a `*`-fixed element of `W_B` to `W_J`.
pub(crate) fn project_w(p: &JbkPair, x: &WElem<QElem>) -> Option<WElem<Q>> {
    Some(WElem::new(x.a.as_q()?, p.project(&x.b)?, p.project(&x.c)?, x.d.as_q()?))
}

/// The element `ω = k s` of `K` with `ω^2 = q(v)`, where `s^2 = D`.
pub fn find_omega(p: &JbkPair, x: &WElem<Q>) -> Result<QElem> {
    let qv = quartic(p.j(), x);
    if qv.is_zero() {
        return Err(Error::Precondition("the second lifting law needs v of rank four".into()));
    }
    let k = q_sqrt(&(&qv / p.d())).ok_or_else(|| {
        Error::NoSolution(format!("q(v) = {} is not ω^2 for any ω ∈ K with ω* = -ω", q_to_string(&qv)))
    })?;
    Ok(p.sqrt_d().scale(&k))
}

/// `⟨η, η'⟩_B = x* y' - y* x'` for columns `η = (x; y)` and `η' = (x'; y')`.
pub fn herm_b(p: &JbkPair, e1: &Pair2, e2: &Pair2) -> Vec<QElem> {
    let b = p.b();
    v::sub(&b.mul(&p.star(&e1.0), &e2.1), &b.mul(&p.star(&e1.1), &e2.0))
}

/// `ℓ m ℓ'*` for rows `ℓ, ℓ'`.
fn sandwich_rows(p: &JbkPair, l1: &Pair2, m: &M2<QElem>, l2: &Pair2) -> Vec<QElem> {
    let b = p.b();
    let (x, y) = m.apply_row(b, l1);
    v::add(&b.mul(&x, &p.star(&l2.0)), &b.mul(&y, &p.star(&l2.1)))
}

/// `J_2^{-1}` on `ℓ!`, which is `(a, b, c, d) -> (-d, c, -b, a)`.
fn j2_inv<S: Scalar>(x: &WElem<S>) -> WElem<S> {
    WElem::new(x.d.neg(), x.c.clone(), v::neg(&x.b), x.a.clone())
}

/// `h(v, ω) = -(ω/2) J_2 + S(v)`.
pub fn h_of(b: &dyn AssocCns<QElem>, vb: &WElem<QElem>, omega: &QElem) -> M2<QElem> {
    s_of(b, vb).sub(&M2::j2(b).smul(omega).qmul(&q(1, 2)))
}

/// `δ(ℓ; v) = (a u# + u × (w b) + c w#; b u# + (u c) × w + d w#)` for
/// `ℓ = (u, w)`.
fn delta<S: Scalar>(b: &dyn AssocCns<S>, l: &(Vec<S>, Vec<S>), x: &WElem<S>) -> (Vec<S>, Vec<S>) {
    let (u, w) = l;
    let (us, ws) = (b.adjoint(u), b.adjoint(w));
    let top = v::add(&v::add(&v::smul(&x.a, &us), &b.cross(u, &b.mul(w, &x.b))), &b.mul(&x.c, &ws));
    let bot = v::add(&v::add(&b.mul(&x.b, &us), &b.cross(&b.mul(u, &x.c), w)), &v::smul(&x.d, &ws));
    (top, bot)
}

/// `n(x) - (x, ℓ h ℓ*) + tr_{K/F} ⟨X(-ω), J_2^{-1} ℓ!⟩`.
fn norm_with(p: &JbkPair, h: &M2<QElem>, xm: &WElem<QElem>, x: &[Q], l: &Pair2) -> Q {
    let b = p.b();
    let lhl = sandwich_rows(p, l, h, l);
    let t = pair(b, xm, &j2_inv(&shriek_row(b, &l.0, &l.1))).trace_in(p.k());
    p.j().norm(x) - p.pair_fixed(&p.embed(x), &lhl) + t
}

/// The norm on `Ũ = J ⊕ B^2` attached to `(v, ω)`, before the quotient.
pub fn utilde_norm(p: &JbkPair, x_w: &WElem<Q>, omega: &QElem, x: &[Q], l: &Pair2) -> Q {
    let b = p.b();
    let vb = embed_w(p, x_w);
    norm_with(p, &h_of(b, &vb, omega), &x_of(b, &vb, &omega.neg()), x, l)
}

/// Checks `⟨x, x'⟩_K = 6 ⟨x*, x'⟩`, where `x, x'` are the images in `W_B` of
/// the symmetrized tensors of two triples of columns and `⟨ , ⟩_K` is the
/// Hermitian form built from `⟨ , ⟩_B` and the trilinear form of `B`.
pub fn form_comparison(p: &JbkPair, e: [&Pair2; 3], f: [&Pair2; 3]) -> bool {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let b = p.b();
    let mut lhs = QElem::zero();
    for s in PERMS {
        for t in PERMS {
            let g: Vec<Vec<QElem>> = (0..3).map(|i| herm_b(p, e[s[i]], f[t[i]])).collect();
            lhs = lhs.add(&b.pair(&g[0], &b.cross(&g[1], &g[2])));
        }
    }
    let (x, y) = (sym_cols(b, e), sym_cols(b, f));
    lhs == pair(b, &star_w(p, &x), &y).scale(&qi(6))
}

/// Candidate columns `η_0`: canonical ones first, then seeded random ones.
fn candidate_cols(p: &JbkPair, cap: usize) -> Vec<Pair2> {
    let b = p.b();
    let n = b.dim();
    let one = b.identity();
    let z = v::zero::<QElem>(n);
    let mut out = vec![(one.clone(), z.clone()), (z.clone(), one.clone()), (one.clone(), one.clone()), (one.clone(), v::neg(&one))];
    for i in 0..n {
        out.push((v::unit(n, i), z.clone()));
        out.push((z.clone(), v::unit(n, i)));
    }
    let mut rng = random::rng(0x5e7a);
    while out.len() < cap {
        let x = p.b_from_q(&random::int_vec(&mut rng, 2 * n, 2));
        let y = p.b_from_q(&random::int_vec(&mut rng, 2 * n, 2));
        out.push((x, y));
    }
    out
}

/// The outcome of the second lifting law.
#[derive(Debug)]
pub struct SecondLift {
    /// `ω` with `ω^2 = q(v)` and `ω* = -ω`.
    pub omega: QElem,
    /// The column with `⟨X(ω), η_0!⟩` a unit.
    pub eta0: Pair2,
    /// `η = ((ω + R(v))/2) η_0 = h(v, ω) J_2 η_0`.
    pub eta: Pair2,
    /// `λ = ⟨X(ω), η_0!⟩^{-1}`.
    pub lambda: QElem,
    /// `S = (⟨η, η⟩_B / ω)^{-1}`.
    pub s: Vec<Q>,
    /// `U(S, λ)`.
    pub tits: TitsU,
    /// `v + η = (a, (b, -u), (c, w), d)` in `W_U` for `η = (u; w)`.
    pub lifted: WElem<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Runs the second lifting law.
///
/// Checks `λ η! = (-ω v + v^♭)/2`, that `⟨η, η⟩_B` is anti-Hermitian,
/// `n(S) = λ λ*`, that `v + η` has rank one in `W_{U(S, λ)}`,
/// `η S η* = S(v) - (ω/2) J_2` and the comparison of `⟨ , ⟩_K` with the
/// symplectic form on triples built from `η`, `η_0` and the unit columns.
pub fn second_lift(p: &Arc<JbkPair>, x: &WElem<Q>, omega: &QElem) -> Result<SecondLift> {
    let b = p.b();
    let qv = quartic(p.j(), x);
    if qv.is_zero() {
        return Err(Error::Precondition("the second lifting law needs v of rank four".into()));
    }
    let omega = QElem::new(p.k(), omega.coords_in(p.k()));
    if omega.mul(&omega) != p.kq(&qv) || omega.conj() != omega.neg() {
        return Err(Error::Precondition("ω must satisfy ω^2 = q(v) and ω* = -ω".into()));
    }
    let vb = embed_w(p, x);
    let xp = x_of(b, &vb, &omega);
    let xm = x_of(b, &vb, &omega.neg());
    let shift = half_shift(b, &r_of(b, &vb), &omega);
    let (eta0, mu) = candidate_cols(p, ETA_SEARCH_CAP)
        .into_iter()
        .map(|c| {
            let mu = pair(b, &xp, &shriek_col(b, &c.0, &c.1));
            (c, mu)
        })
        .find(|(_, mu)| mu.is_unit())
        .ok_or_else(|| Error::BoundExceeded(format!("no column η_0 with ⟨X(ω), η_0!⟩ a unit among {ETA_SEARCH_CAP} candidates")))?;
    let eta = shift.apply_col(b, &eta0);
    let lambda = mu.inv().expect("μ is a unit");
    let mut cert = Certificate::new();
    cert.check("λ η! = (-ω v + v♭)/2", shriek_col(b, &eta.0, &eta.1).smul(&lambda) == xm);
    let hb = herm_b(p, &eta, &eta);
    cert.check("⟨η, η⟩_B is anti-Hermitian", p.star(&hb) == v::neg(&hb));
    let s_inv = v::smul(&omega.inv().expect("ω is a unit"), &hb);
    let s_b = b.inverse(&s_inv).ok_or_else(|| Error::IdentityFailed("⟨η, η⟩_B / ω is not invertible".into()))?;
    let s = p.project(&s_b).ok_or_else(|| Error::IdentityFailed("S is not fixed by the involution".into()))?;
    cert.check("n(S) = λ λ*", lambda.mul(&lambda.conj()).as_q() == Some(p.j().norm(&s)));
    let tits = TitsU::new(p.clone(), s.clone(), lambda.clone())?;
    let lifted = WElem::new(x.a.clone(), tits.join(&x.b, &v::neg(&eta.0)), tits.join(&x.c, &eta.1), x.d.clone());
    cert.check("v + η is rank one in W_U(S, λ)", !lifted.is_zero() && is_rank_at_most_one(&tits, &lifted));
    let sb = p.embed(&s);
    let rows = [&eta.0, &eta.1];
    let ent = |i: usize, k: usize| b.mul(&b.mul(rows[i], &sb), &p.star(rows[k]));
    let ese = M2::new(ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1));
    cert.check("η S η* = S(v) - (ω/2) J_2", ese == h_of(b, &vb, &omega));
    let n = b.dim();
    let e1 = (b.identity(), v::zero(n));
    let e2 = (v::zero(n), b.identity());
    cert.check("⟨x, x'⟩_K = 6 ⟨x*, x'⟩", form_comparison(p, [&eta, &eta0, &e1], [&e2, &eta, &eta0]));
    Ok(SecondLift { omega, eta0, eta, lambda, s, tits, lifted, certificate: cert })
}

/// `Ũ / I(v, ω)` stored as `J ⊕ C` for a fixed complement `C` of `I(v, ω)`
/// in `B^2`, spanned by rational coordinate vectors.
#[derive(Debug)]
pub struct UTilde {
    p: Arc<JbkPair>,
    vb: WElem<QElem>,
    h: M2<QElem>,
    xm: WElem<QElem>,
    kernel: Vec<Vec<Q>>,
    complement: Vec<Vec<Q>>,
    coords_of: MatQ,
}

impl UTilde {
    /// Computes `h(v, ω)`, `I(v, ω) = {ℓ : ℓ h(v, ω) = 0}` and a complement.
    pub fn new(p: &Arc<JbkPair>, x: &WElem<Q>, omega: &QElem) -> Result<Self> {
        let b = p.b();
        let vb = embed_w(p, x);
        let h = h_of(b, &vb, omega);
        let xm = x_of(b, &vb, &omega.neg());
        let bq = 2 * p.b_dim();
        let total = 2 * bq;
        let to_q = |l: &Pair2| [p.b_to_q(&l.0), p.b_to_q(&l.1)].concat();
        let from_q = |c: &[Q]| {
            let (x, y) = c.split_at(bq);
            (p.b_from_q(x), p.b_from_q(y))
        };
        let images: Vec<Vec<Q>> = (0..total).map(|i| to_q(&h.apply_row(b, &from_q(&v::unit(total, i))))).collect();
        let m: MatQ = (0..total).map(|r| images.iter().map(|col| col[r].clone()).collect()).collect();
        let kernel = kernel(&m);
        let mut span = kernel.clone();
        let mut complement = Vec::new();
        for i in 0..total {
            span.push(v::unit(total, i));
            if rank(&span) == span.len() {
                complement.push(v::unit(total, i));
            } else {
                span.pop();
            }
        }
        let basis: Vec<&Vec<Q>> = complement.iter().chain(&kernel).collect();
        let pm: MatQ = (0..total).map(|r| basis.iter().map(|c| c[r].clone()).collect()).collect();
        let inv = inverse(&pm).ok_or_else(|| Error::IdentityFailed("complement of I(v, ω) is not a complement".into()))?;
        let coords_of = inv[..complement.len()].to_vec();
        Ok(UTilde { p: p.clone(), vb, h, xm, kernel, complement, coords_of })
    }

    fn jdim(&self) -> usize {
        self.p.j().dim()
    }

    fn bq(&self) -> usize {
        2 * self.p.b_dim()
    }

    /// Rational coordinates of a row in `B^2`.
    pub fn row_to_q(&self, l: &Pair2) -> Vec<Q> {
        [self.p.b_to_q(&l.0), self.p.b_to_q(&l.1)].concat()
    }

    /// The row with the given rational coordinates.
    pub fn row_from_q(&self, c: &[Q]) -> Pair2 {
        let (x, y) = c.split_at(self.bq());
        (self.p.b_from_q(x), self.p.b_from_q(y))
    }

    /// `dim_Q I(v, ω)`.
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// A rational basis of `I(v, ω)` as rows.
    pub fn kernel_rows(&self) -> Vec<Pair2> {
        self.kernel.iter().map(|c| self.row_from_q(c)).collect()
    }

    /// `h(v, ω)`.
    pub fn h(&self) -> &M2<QElem> {
        &self.h
    }

    /// Complement coordinates of the class of `ℓ` modulo `I(v, ω)`.
    pub fn reduce(&self, l: &Pair2) -> Vec<Q> {
        let c = self.row_to_q(l);
        self.coords_of.iter().map(|r| r.iter().zip(&c).fold(qi(0), |acc, (a, b)| acc + a * b)).collect()
    }

    /// The representative in the complement with the given coordinates.
    pub fn lift_row(&self, c: &[Q]) -> Pair2 {
        let full = c.iter().zip(&self.complement).fold(v::zero::<Q>(2 * self.bq()), |acc, (t, e)| v::add(&acc, &v::qmul(t, e)));
        self.row_from_q(&full)
    }

    /// Splits coordinates into `x ∈ J` and a representative row.
    pub fn split(&self, x: &[Q]) -> (Vec<Q>, Pair2) {
        let (a, c) = x.split_at(self.jdim());
        (a.to_vec(), self.lift_row(c))
    }

    /// Joins `x ∈ J` and the class of `ℓ`.
    pub fn join(&self, x: &[Q], l: &Pair2) -> Vec<Q> {
        [x.to_vec(), self.reduce(l)].concat()
    }
}

impl Cns<Q> for UTilde {
    fn dim(&self) -> usize {
        self.jdim() + self.complement.len()
    }
    fn label(&self) -> String {
        format!("Ũ / I(v, ω) over {:?}", self.p)
    }
    fn identity(&self) -> Vec<Q> {
        [self.p.j().identity(), v::zero(self.complement.len())].concat()
    }
    fn norm(&self, x: &[Q]) -> Q {
        let (xj, l) = self.split(x);
        norm_with(&self.p, &self.h, &self.xm, &xj, &l)
    }
    fn adjoint(&self, x: &[Q]) -> Vec<Q> {
        let (xj, l) = self.split(x);
        let p = &self.p;
        let b = p.b();
        let lhl = p.project(&sandwich_rows(p, &l, &self.h, &l)).expect("ℓ h ℓ* is fixed");
        let top = v::sub(&p.j().adjoint(&xj), &lhl);
        let xb = p.embed(&xj);
        let (d1, d2) = delta(b, &l, &self.vb);
        let row = (v::sub(&v::neg(&b.mul(&xb, &l.0)), &p.star(&d2)), v::sub(&p.star(&d1), &b.mul(&xb, &l.1)));
        self.join(&top, &row)
    }
    fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let (x1, l1) = self.split(x);
        let (x2, l2) = self.split(y);
        let p = &self.p;
        let t = v::add(&sandwich_rows(p, &l1, &self.h, &l2), &sandwich_rows(p, &l2, &self.h, &l1));
        p.j().pair(&x1, &x2) + p.b().trace(&t).as_q().expect("trace of a fixed element is rational")
    }
}

/// `Ũ / I(v, ω)` with the second lift it is compared against.
#[derive(Debug)]
pub struct UTildeLift {
    /// The quotient structure.
    pub utilde: UTilde,
    /// The lift through `U(S, λ)` that supplies `η`.
    pub second: SecondLift,
    /// The image of `v + 1_2`, i.e. `(a, (b, -(1, 0)), (c, (0, 1)), d)`.
    pub image: WElem<Q>,
    /// Checked identities.
    pub certificate: Certificate,
}

/// Builds `Ũ / I(v, ω)` and checks that `I(v, ω)` has `Q`-dimension
/// `dim_Q B`, that `(x, ℓ) -> (x, ℓ η)` kills exactly `I(v, ω)` and carries
/// the norm, adjoint and pairing to those of `U(S, λ)` on random elements,
/// the cubic norm structure axioms on the quotient, and that the image of
/// `v + 1_2` has rank one.
pub fn utilde_cns(p: &Arc<JbkPair>, x: &WElem<Q>, omega: &QElem, trials: usize, seed: u64) -> Result<UTildeLift> {
    let second = second_lift(p, x, omega)?;
    let ut = UTilde::new(p, x, &second.omega)?;
    let b = p.b();
    let mut cert = Certificate::new();
    cert.check("I(v, ω) has corank one in B^2", ut.kernel_dim() == ut.bq());
    let eta = &second.eta;
    let times_eta = |l: &Pair2| v::add(&b.mul(&l.0, &eta.0), &b.mul(&l.1, &eta.1));
    cert.check("ℓ η = 0 on I(v, ω)", ut.kernel_rows().iter().all(|l| v::is_zero(&times_eta(l))));
    let tits = &second.tits;
    let phi = |y: &[Q]| {
        let (xj, l) = ut.split(y);
        tits.join(&xj, &times_eta(&l))
    };
    let mut rng = random::rng(seed);
    let mut gen = || random::int(&mut rng, 3);
    let (mut norms, mut adjs, mut pairs) = (true, true, true);
    for _ in 0..trials {
        let y: Vec<Q> = (0..ut.dim()).map(|_| gen()).collect();
        let z: Vec<Q> = (0..ut.dim()).map(|_| gen()).collect();
        norms &= ut.norm(&y) == tits.norm(&phi(&y));
        adjs &= phi(&ut.adjoint(&y)) == tits.adjoint(&phi(&y));
        pairs &= ut.pair(&y, &z) == tits.pair(&phi(&y), &phi(&z));
    }
    cert.check("(x, ℓ) -> (x, ℓ η) preserves the norm", norms);
    cert.check("(x, ℓ) -> (x, ℓ η) preserves the adjoint", adjs);
    cert.check("(x, ℓ) -> (x, ℓ η) preserves the pairing", pairs);
    let report = check_cns(&ut, trials, || random::int(&mut rng, 3));
    cert.check("Ũ / I(v, ω) satisfies the cubic norm structure axioms", report.all_passed());
    let n = b.dim();
    let (one, z) = (b.identity(), v::zero::<QElem>(n));
    let image = WElem::new(x.a.clone(), ut.join(&x.b, &(v::neg(&one), z.clone())), ut.join(&x.c, &(z, one)), x.d.clone());
    cert.check("the image of v + 1_2 is rank one", !image.is_zero() && is_rank_at_most_one(&ut, &image));
    Ok(UTildeLift { utilde: ut, second, image, certificate: cert })
}

/// Checks `n((x, ℓ); g v, ν ω) = n((x, ℓ g); v, ω)` for `g ∈ G`, which acts
/// on `W_J` through the `ν^{-1}` twist of the cubic action on `W_B`.
pub fn utilde_equivariance(p: &JbkPair, x_w: &WElem<Q>, omega: &QElem, g: &M2<QElem>, nu: &Q, x: &[Q], l: &Pair2) -> Result<bool> {
    let b = p.b();
    let vb = embed_w(p, x_w);
    let nu_inv = Scalar::inv(nu).ok_or_else(|| Error::Precondition("ν(g) must be nonzero".into()))?;
    let gvb = act(b, g, &vb, Side::Left).qmul(&nu_inv);
    let gv = project_w(p, &gvb).ok_or_else(|| Error::Precondition("g does not preserve W_J".into()))?;
    let lhs = utilde_norm(p, &gv, &omega.scale(nu), x, l);
    let rhs = utilde_norm(p, x_w, omega, x, &g.apply_row(b, l));
    Ok(lhs == rhs)
}

/// The cubic norm structure on `U = A ⊕ A^2` attached to a rank four
/// `v ∈ W_A` for a commutative associative `A`:
/// `n((x, ℓ)) = n(x) - (x, ℓ S(v) ℓ^t) + ⟨v^♭, J_2^{-1} ℓ!⟩`,
/// `(x, ℓ)^# = (x^# - ℓ S(v) ℓ^t, -x ℓ + δ(ℓ; v)^t J_2)` and
/// `((x_1, ℓ_1), (x_2, ℓ_2)) = (x_1, x_2) + tr(ℓ_1 S(v) ℓ_2^t + ℓ_2 S(v) ℓ_1^t)`.
#[derive(Debug)]
pub struct GanSavinU {
    a: Box<dyn AssocCns<Q>>,
    v: WElem<Q>,
    s: M2<Q>,
    vflat: WElem<Q>,
}

impl GanSavinU {
    /// Builds the structure, checking that `A` is commutative and `q(v) ≠ 0`.
    pub fn new(a: Box<dyn AssocCns<Q>>, x: &WElem<Q>) -> Result<Self> {
        if !a.is_commutative() {
            return Err(Error::Unsupported("A ⊕ A^2 needs a commutative A".into()));
        }
        if quartic(a.as_ref(), x).is_zero() {
            return Err(Error::Precondition("A ⊕ A^2 needs v of rank four".into()));
        }
        let s = s_of(a.as_ref(), x);
        let vflat = flat(a.as_ref(), x);
        Ok(GanSavinU { a, v: x.clone(), s, vflat })
    }

    fn n(&self) -> usize {
        self.a.dim()
    }

    /// Splits coordinates into `x` and `ℓ = (u, w)`.
    pub fn split(&self, x: &[Q]) -> (Vec<Q>, (Vec<Q>, Vec<Q>)) {
        let n = self.n();
        (x[..n].to_vec(), (x[n..2 * n].to_vec(), x[2 * n..].to_vec()))
    }

    /// Joins `x` and `ℓ`.
    pub fn join(&self, x: &[Q], l: &(Vec<Q>, Vec<Q>)) -> Vec<Q> {
        [x.to_vec(), l.0.clone(), l.1.clone()].concat()
    }

    /// `ℓ_1 S(v) ℓ_2^t`.
    fn sandwich(&self, l1: &(Vec<Q>, Vec<Q>), l2: &(Vec<Q>, Vec<Q>)) -> Vec<Q> {
        let a = self.a.as_ref();
        let (x, y) = self.s.apply_row(a, l1);
        v::add(&a.mul(&x, &l2.0), &a.mul(&y, &l2.1))
    }

    /// `v + 1_2 = (a, (b, -(1, 0)), (c, (0, 1)), d)`.
    pub fn lifted(&self) -> WElem<Q> {
        let (one, z) = (self.a.identity(), v::zero::<Q>(self.n()));
        let x = &self.v;
        WElem::new(x.a.clone(), self.join(&x.b, &(v::neg(&one), z.clone())), self.join(&x.c, &(z, one)), x.d.clone())
    }
}

impl Cns<Q> for GanSavinU {
    fn dim(&self) -> usize {
        3 * self.n()
    }
    fn label(&self) -> String {
        format!("{} ⊕ {}^2", self.a.label(), self.a.label())
    }
    fn identity(&self) -> Vec<Q> {
        [self.a.identity(), v::zero(2 * self.n())].concat()
    }
    fn norm(&self, x: &[Q]) -> Q {
        let (xa, l) = self.split(x);
        let a = self.a.as_ref();
        let t = pair(a, &self.vflat, &j2_inv(&shriek_row(a, &l.0, &l.1)));
        a.norm(&xa) - a.pair(&xa, &self.sandwich(&l, &l)) + t
    }
    fn adjoint(&self, x: &[Q]) -> Vec<Q> {
        let (xa, l) = self.split(x);
        let a = self.a.as_ref();
        let top = v::sub(&a.adjoint(&xa), &self.sandwich(&l, &l));
        let (d1, d2) = delta(a, &l, &self.v);
        let row = (v::sub(&v::neg(&a.mul(&xa, &l.0)), &d2), v::sub(&d1, &a.mul(&xa, &l.1)));
        self.join(&top, &row)
    }
    fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let (x1, l1) = self.split(x);
        let (x2, l2) = self.split(y);
        let a = self.a.as_ref();
        a.pair(&x1, &x2) + a.trace(&v::add(&self.sandwich(&l1, &l2), &self.sandwich(&l2, &l1)))
    }
}

/// Builds `A ⊕ A^2` for `v` and checks the cubic norm structure axioms and
/// that `v + 1_2` has rank one.
pub fn gan_savin_cns(variant: &CnsVariant, x: &WElem<Q>, trials: usize, seed: u64) -> Result<(GanSavinU, Certificate)> {
    let u = GanSavinU::new(variant.build_assoc::<Q>()?, x)?;
    let mut rng = random::rng(seed);
    let mut cert = Certificate::new();
    let report = check_cns(&u, trials, || random::int(&mut rng, 3));
    cert.check("A ⊕ A^2 satisfies the cubic norm structure axioms", report.all_passed());
    let lifted = u.lifted();
    cert.check("v + 1_2 is rank one in W_U", is_rank_at_most_one(&u, &lifted));
    Ok((u, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cns::desc::CubicSpec;
    use crate::freudenthal::HOp;

    /// `(1, 0, c, d)` with `c = diag((D k^2 - d^2)/4, 1, 1)`, so that
    /// `q = D k^2`, in `J = H_3(K)`.
    fn normal_form(p: &JbkPair, dd: i64, k: i64, d: i64) -> WElem<Q> {
        let h = crate::cns::H3::new(crate::composition::CompDesc::new(vec![qi(dd)]).unwrap());
        let c = h.diag([q(dd * k * k - d * d, 4), qi(1), qi(1)]);
        let x = WElem::new(qi(1), v::zero(9), c, qi(d));
        assert_eq!(quartic(p.j(), &x), qi(dd * k * k));
        x
    }

    fn moved(p: &JbkPair, x: &WElem<Q>, seed: u64) -> WElem<Q> {
        let mut rng = random::rng(seed);
        let n = p.j().dim();
        let word = vec![HOp::NJ(random::int_vec(&mut rng, n, 1)), HOp::NbarJ(random::int_vec(&mut rng, n, 1))];
        HOp::apply_word(&word, p.j(), x).unwrap()
    }

    #[test]
    fn omega_needs_q_to_be_d_times_a_square() {
        let p = JbkPair::hermitian(qi(-1)).unwrap();
        let x = normal_form(&p, -1, 2, 1);
        assert_eq!(find_omega(&p, &x).unwrap(), p.sqrt_d().scale(&qi(2)));
        let h = crate::cns::H3::new(crate::composition::CompDesc::new(vec![qi(-1)]).unwrap());
        let bad = WElem::new(qi(1), v::zero(9), h.diag([qi(0), qi(1), qi(1)]), qi(1));
        assert!(matches!(find_omega(&p, &bad), Err(Error::NoSolution(_))));
        assert!(matches!(find_omega(&p, &WElem::zero(9)), Err(Error::Precondition(_))));
    }

    #[test]
    fn normal_form_lift_has_the_expected_off_diagonal_entry() {
        let p = Arc::new(JbkPair::hermitian(qi(-1)).unwrap());
        let d = 3;
        let x = normal_form(&p, -1, 2, d);
        let omega = find_omega(&p, &x).unwrap();
        let lift = second_lift(&p, &x, &omega).unwrap();
        assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
        let b = p.b();
        let sb = p.embed(&lift.s);
        let usv = b.mul(&b.mul(&lift.eta.0, &sb), &p.star(&lift.eta.1));
        let expect = b.scalar(&p.kq(&q(-d, 2)).sub(&omega.scale(&q(1, 2))));
        assert_eq!(usv, expect);
    }

    #[test]
    fn second_lift_on_moved_hermitian_elements() {
        for (dd, seed) in [(-1, 1), (-3, 2), (4, 3)] {
            let p = Arc::new(JbkPair::hermitian(qi(dd)).unwrap());
            let x = moved(&p, &normal_form(&p, dd, 1, 1), seed);
            let omega = find_omega(&p, &x).unwrap();
            let lift = second_lift(&p, &x, &omega).unwrap();
            assert!(lift.certificate.all_passed(), "D = {dd}: {:?}", lift.certificate);
        }
    }

    fn tensor_pair(variant: &CnsVariant, x: &WElem<Q>) -> Arc<JbkPair> {
        let qv = quartic(variant.build_q().unwrap().as_ref(), x);
        Arc::new(JbkPair::tensor(variant.build_q().unwrap(), variant.build_assoc::<QElem>().unwrap(), qv).unwrap())
    }

    #[test]
    fn second_lift_for_a_commutative_algebra() {
        let variant = CnsVariant::EtaleCubic(CubicSpec::split());
        let mut rng = random::rng(5);
        let x = WElem::new(qi(1), random::int_vec(&mut rng, 3, 2), random::int_vec(&mut rng, 3, 2), qi(2));
        let p = tensor_pair(&variant, &x);
        let omega = find_omega(&p, &x).unwrap();
        assert_eq!(omega, p.sqrt_d());
        let lift = second_lift(&p, &x, &omega).unwrap();
        assert!(lift.certificate.all_passed(), "{:?}", lift.certificate);
    }

    #[test]
    fn wrong_omega_is_rejected() {
        let p = Arc::new(JbkPair::hermitian(qi(-1)).unwrap());
        let x = normal_form(&p, -1, 2, 1);
        assert!(matches!(second_lift(&p, &x, &p.sqrt_d()), Err(Error::Precondition(_))));
    }

    #[test]
    fn hermitian_form_comparison_on_random_columns() {
        let p = JbkPair::hermitian(qi(-2)).unwrap();
        let mut rng = random::rng(9);
        let mut col = || (p.b_from_q(&random::int_vec(&mut rng, 18, 2)), p.b_from_q(&random::int_vec(&mut rng, 18, 2)));
        let cols: Vec<Pair2> = (0..6).map(|_| col()).collect();
        assert!(form_comparison(&p, [&cols[0], &cols[1], &cols[2]], [&cols[3], &cols[4], &cols[5]]));
    }

    #[test]
    fn utilde_over_hermitian_matrices() {
        let p = Arc::new(JbkPair::hermitian(qi(-1)).unwrap());
        let x = moved(&p, &normal_form(&p, -1, 2, 1), 4);
        let omega = find_omega(&p, &x).unwrap();
        let ut = utilde_cns(&p, &x, &omega, 2, 7).unwrap();
        assert!(ut.certificate.all_passed(), "{:?}", ut.certificate);
        assert_eq!(ut.utilde.norm(&ut.utilde.identity()), qi(1));
    }

    #[test]
    fn utilde_over_a_commutative_algebra() {
        let variant = CnsVariant::EtaleCubic(CubicSpec::split());
        let x = WElem::new(qi(2), vec![qi(1), qi(0), qi(-1)], vec![qi(0), qi(1), qi(1)], qi(1));
        let p = tensor_pair(&variant, &x);
        let omega = find_omega(&p, &x).unwrap();
        let ut = utilde_cns(&p, &x, &omega, 4, 8).unwrap();
        assert!(ut.certificate.all_passed(), "{:?}", ut.certificate);
    }

    #[test]
    fn utilde_norm_is_equivariant_for_generators() {
        let p = JbkPair::hermitian(qi(-1)).unwrap();
        let b = p.b();
        let x_w = moved(&p, &normal_form(&p, -1, 2, 1), 6);
        let omega = find_omega(&p, &x_w).unwrap();
        let mut rng = random::rng(10);
        let x = random::int_vec(&mut rng, 9, 2);
        let l = (p.b_from_q(&random::int_vec(&mut rng, 18, 2)), p.b_from_q(&random::int_vec(&mut rng, 18, 2)));
        let xx = p.embed(&random::int_vec(&mut rng, 9, 2));
        let z = v::zero::<QElem>(9);
        let lower = M2::new(b.identity(), z.clone(), xx.clone(), b.identity());
        let upper = M2::new(b.identity(), xx, z, b.identity());
        let nu = qi(3);
        let diag = M2::diag(b, b.identity(), b.scalar(&p.kq(&nu)));
        assert!(utilde_equivariance(&p, &x_w, &omega, &lower, &qi(1), &x, &l).unwrap());
        assert!(utilde_equivariance(&p, &x_w, &omega, &upper, &qi(1), &x, &l).unwrap());
        assert!(utilde_equivariance(&p, &x_w, &omega, &diag, &nu, &x, &l).unwrap());
    }

    #[test]
    fn gan_savin_for_binary_cubics_and_split_cubics() {
        let x = WElem::new(qi(1), vec![qi(0)], vec![qi(-1)], qi(1));
        let (u, cert) = gan_savin_cns(&CnsVariant::TrivialF, &x, 10, 1).unwrap();
        assert!(cert.all_passed(), "{cert:?}");
        assert_eq!(u.norm(&[qi(2), qi(0), qi(0)]), qi(8));
        let mut rng = random::rng(12);
        for variant in [CnsVariant::EtaleCubic(CubicSpec::split()), CnsVariant::EtaleCubic(CubicSpec::form(&[qi(1), qi(0), qi(-2), qi(1)]))] {
            let x = WElem::new(qi(1), random::int_vec(&mut rng, 3, 2), random::int_vec(&mut rng, 3, 2), qi(-1));
            let (_, cert) = gan_savin_cns(&variant, &x, 10, 2).unwrap();
            assert!(cert.all_passed(), "{cert:?}");
        }
    }

    #[test]
    fn gan_savin_needs_a_commutative_algebra() {
        let x = WElem::new(qi(1), v::zero(9), v::zero(9), qi(1));
        assert!(matches!(gan_savin_cns(&CnsVariant::Matrix3, &x, 1, 1), Err(Error::Unsupported(_))));
    }
}
