//! Structure of `W_A` for an associative cubic norm structure `A`: the
//! matrices `R(v)` and `S(v)`, the shriek maps, the left and right actions of
//! `M_2(A)` through the symmetric cube model, the degree six norm and the
//! invariant of rank one elements.

use rand::Rng;

use crate::cns::AssocCns;
use crate::error::{Error, Result};
use crate::random;
use crate::scalars::{q, qi, vec as v, Scalar};

use super::{pair, WElem};

/// A 2 x 2 matrix `[[p, q], [r, s]]` over `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct M2<S> {
    /// Entries `p, q, r, s` in row-major order.
    pub e: [Vec<S>; 4],
}

/// Which side an element of `M_2(A)` acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Columns, `η -> g η`.
    Left,
    /// Rows, `ℓ -> ℓ g`.
    Right,
}

impl<S: Scalar> M2<S> {
    /// `[[p, q], [r, s]]`.
    pub fn new(p: Vec<S>, q: Vec<S>, r: Vec<S>, s: Vec<S>) -> Self {
        M2 { e: [p, q, r, s] }
    }

    /// Entry `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &[S] {
        &self.e[2 * i + j]
    }

    /// The identity.
    pub fn identity(a: &dyn AssocCns<S>) -> Self {
        let n = a.dim();
        M2::new(a.identity(), v::zero(n), v::zero(n), a.identity())
    }

    /// `diag(m, n)`.
    pub fn diag(a: &dyn AssocCns<S>, m: Vec<S>, n: Vec<S>) -> Self {
        let z = v::zero(a.dim());
        M2::new(m, z.clone(), z, n)
    }

    /// `J_2 = [[0, 1], [-1, 0]]`.
    pub fn j2(a: &dyn AssocCns<S>) -> Self {
        let z = v::zero(a.dim());
        M2::new(z.clone(), a.identity(), v::neg(&a.identity()), z)
    }

    /// A matrix with scalar entries times the identity of `A`.
    pub fn scalars(a: &dyn AssocCns<S>, p: S, q: S, r: S, s: S) -> Self {
        M2::new(a.scalar(&p), a.scalar(&q), a.scalar(&r), a.scalar(&s))
    }

    /// Product.
    pub fn mul(&self, a: &dyn AssocCns<S>, o: &Self) -> Self {
        let ent = |i: usize, j: usize| v::add(&a.mul(self.at(i, 0), o.at(0, j)), &a.mul(self.at(i, 1), o.at(1, j)));
        M2::new(ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1))
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        M2 { e: std::array::from_fn(|k| v::add(&self.e[k], &o.e[k])) }
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        M2 { e: std::array::from_fn(|k| v::sub(&self.e[k], &o.e[k])) }
    }

    /// Multiplication by a base scalar.
    pub fn smul(&self, s: &S) -> Self {
        M2 { e: std::array::from_fn(|k| v::smul(s, &self.e[k])) }
    }

    /// Multiplication by a rational.
    pub fn qmul(&self, r: &crate::scalars::Q) -> Self {
        M2 { e: std::array::from_fn(|k| v::qmul(r, &self.e[k])) }
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| v::is_zero(x))
    }

    /// `g (u; v)` for a column.
    pub fn apply_col(&self, a: &dyn AssocCns<S>, col: &(Vec<S>, Vec<S>)) -> (Vec<S>, Vec<S>) {
        (
            v::add(&a.mul(self.at(0, 0), &col.0), &a.mul(self.at(0, 1), &col.1)),
            v::add(&a.mul(self.at(1, 0), &col.0), &a.mul(self.at(1, 1), &col.1)),
        )
    }

    /// `(s, t) g` for a row.
    pub fn apply_row(&self, a: &dyn AssocCns<S>, row: &(Vec<S>, Vec<S>)) -> (Vec<S>, Vec<S>) {
        (
            v::add(&a.mul(&row.0, self.at(0, 0)), &a.mul(&row.1, self.at(1, 0))),
            v::add(&a.mul(&row.0, self.at(0, 1)), &a.mul(&row.1, self.at(1, 1))),
        )
    }

    /// Random matrix with small integer coordinates.
    pub fn random<R: Rng>(n: usize, rng: &mut R, mut gen: impl FnMut(&mut R) -> S) -> Self {
        M2 { e: std::array::from_fn(|_| (0..n).map(|_| gen(rng)).collect()) }
    }
}

/// `R(v) = [[ad + 2cb - (c,b), 2b# - 2ac], [2db - 2c#, -ad + (b,c) - 2bc]]`.
pub fn r_of<S: Scalar>(a: &dyn AssocCns<S>, x: &WElem<S>) -> M2<S> {
    let WElem { a: s, b, c, d } = x;
    let ad = s.mul(d);
    let bc = a.pair(b, c);
    let two = qi(2);
    let r11 = v::add(&a.scalar(&ad.sub(&bc)), &v::qmul(&two, &a.mul(c, b)));
    let r12 = v::qmul(&two, &v::sub(&a.adjoint(b), &v::smul(s, c)));
    let r21 = v::qmul(&two, &v::sub(&v::smul(d, b), &a.adjoint(c)));
    let r22 = v::sub(&a.scalar(&bc.sub(&ad)), &v::qmul(&two, &a.mul(b, c)));
    M2::new(r11, r12, r21, r22)
}

/// `R_r(v) = J_2 R(v) J_2^{-1}`.
pub fn r_right<S: Scalar>(a: &dyn AssocCns<S>, x: &WElem<S>) -> M2<S> {
    let j = M2::j2(a);
    j.mul(a, &r_of(a, x)).mul(a, &j.qmul(&qi(-1)))
}

/// `S(v) = R(v) [[0, -1], [1, 0]] / 2`.
pub fn s_of<S: Scalar>(a: &dyn AssocCns<S>, x: &WElem<S>) -> M2<S> {
    let r = r_of(a, x);
    let [r11, r12, r21, r22] = r.e;
    M2::new(r12, v::neg(&r11), r22, v::neg(&r21)).qmul(&q(1, 2))
}

/// `(s, t)! = (n(s), s# t, t# s, n(t))` for a row vector.
pub fn shriek_row<S: Scalar>(a: &dyn AssocCns<S>, s: &[S], t: &[S]) -> WElem<S> {
    WElem::new(a.norm(s), a.mul(&a.adjoint(s), t), a.mul(&a.adjoint(t), s), a.norm(t))
}

/// `(u; v)! = (n(u), v u#, u v#, n(v))` for a column vector.
pub fn shriek_col<S: Scalar>(a: &dyn AssocCns<S>, u: &[S], w: &[S]) -> WElem<S> {
    WElem::new(a.norm(u), a.mul(w, &a.adjoint(u)), a.mul(u, &a.adjoint(w)), a.norm(w))
}

fn tri<S: Scalar>(a: &dyn AssocCns<S>, x: &[S], y: &[S], z: &[S]) -> S {
    a.pair(x, &a.cross(y, z))
}

/// The image of `Σ_σ σ(x1 ⊗ x2 ⊗ x3)` in `W_A` for columns `x_i = (u_i; v_i)`.
pub fn sym_cols<S: Scalar>(a: &dyn AssocCns<S>, x: [&(Vec<S>, Vec<S>); 3]) -> WElem<S> {
    let [(u1, v1), (u2, v2), (u3, v3)] = x;
    let beta = v::add(&v::add(&a.mul(v1, &a.cross(u2, u3)), &a.mul(v2, &a.cross(u3, u1))), &a.mul(v3, &a.cross(u1, u2)));
    let gamma = v::add(&v::add(&a.mul(u1, &a.cross(v2, v3)), &a.mul(u2, &a.cross(v3, v1))), &a.mul(u3, &a.cross(v1, v2)));
    WElem::new(tri(a, u1, u2, u3), beta, gamma, tri(a, v1, v2, v3))
}

/// The image of `Σ_σ σ(ℓ1 ⊗ ℓ2 ⊗ ℓ3)` in `W_A` for rows `ℓ_i = (s_i, t_i)`.
pub fn sym_rows<S: Scalar>(a: &dyn AssocCns<S>, x: [&(Vec<S>, Vec<S>); 3]) -> WElem<S> {
    let [(s1, t1), (s2, t2), (s3, t3)] = x;
    let beta = v::add(&v::add(&a.mul(&a.cross(s2, s3), t1), &a.mul(&a.cross(s3, s1), t2)), &a.mul(&a.cross(s1, s2), t3));
    let gamma = v::add(&v::add(&a.mul(&a.cross(t2, t3), s1), &a.mul(&a.cross(t3, t1), s2)), &a.mul(&a.cross(t1, t2), s3));
    WElem::new(tri(a, s1, s2, s3), beta, gamma, tri(a, t1, t2, t3))
}

/// The action of `g ∈ M_2(A)` on `W_A`, on the given side.
///
/// `v` is written in the spanning families `a e⊗e⊗e`, `Σ e⊗e⊗bf`,
/// `Σ f⊗f⊗ce`, `d f⊗f⊗f`; `g` acts slot-wise and the result is mapped back
/// to `W_A`. This is defined for every matrix, invertible or not.
pub fn act<S: Scalar>(a: &dyn AssocCns<S>, g: &M2<S>, x: &WElem<S>, side: Side) -> WElem<S> {
    let n = a.dim();
    let one = a.identity();
    let z = v::zero::<S>(n);
    let e = (one.clone(), z.clone());
    let f = (z.clone(), one);
    let (ge, gf, gb, gc) = match side {
        Side::Left => (
            g.apply_col(a, &e),
            g.apply_col(a, &f),
            g.apply_col(a, &(z.clone(), x.b.clone())),
            g.apply_col(a, &(x.c.clone(), z)),
        ),
        Side::Right => (
            g.apply_row(a, &e),
            g.apply_row(a, &f),
            g.apply_row(a, &(z.clone(), x.b.clone())),
            g.apply_row(a, &(x.c.clone(), z)),
        ),
    };
    let sym = |t: [&(Vec<S>, Vec<S>); 3]| match side {
        Side::Left => sym_cols(a, t),
        Side::Right => sym_rows(a, t),
    };
    let pa = sym([&ge, &ge, &ge]).smul(&x.a).qmul(&q(1, 6));
    let pb = sym([&ge, &ge, &gb]).qmul(&q(1, 2));
    let pc = sym([&gf, &gf, &gc]).qmul(&q(1, 2));
    let pd = sym([&gf, &gf, &gf]).smul(&x.d).qmul(&q(1, 6));
    pa.add(&pb).add(&pc).add(&pd)
}

/// The degree six norm `det(g) = ⟨g·(1,0,0,0), g·(0,0,0,1)⟩`.
pub fn det6<S: Scalar>(a: &dyn AssocCns<S>, g: &M2<S>) -> S {
    let n = a.dim();
    let e = WElem::new(S::one(), v::zero(n), v::zero(n), S::zero());
    let f = WElem::new(S::zero(), v::zero(n), v::zero(n), S::one());
    pair(a, &act(a, g, &e, Side::Left), &act(a, g, &f, Side::Left))
}

/// Candidate rows for witness searches: canonical rows first, then rows with
/// seeded random integer coordinates of growing height up to `bound`.
fn candidate_rows<S: Scalar>(a: &dyn AssocCns<S>, bound: i64, seed: u64) -> impl Iterator<Item = (Vec<S>, Vec<S>)> + '_ {
    let n = a.dim();
    let one = a.identity();
    let z = v::zero::<S>(n);
    let mut fixed = vec![(one.clone(), z.clone()), (z.clone(), one.clone()), (one.clone(), one.clone()), (one.clone(), v::neg(&one))];
    for i in 0..n {
        fixed.push((v::unit(n, i), z.clone()));
        fixed.push((z.clone(), v::unit(n, i)));
    }
    let mut rng = random::rng(seed);
    let per_height = 8 * n;
    let rand_rows = (1..=bound.max(1)).flat_map(move |h| {
        (0..per_height)
            .map(|_| {
                let s: Vec<S> = (0..n).map(|_| S::from_q(random::int(&mut rng, h))).collect();
                let t: Vec<S> = (0..n).map(|_| S::from_q(random::int(&mut rng, h))).collect();
                (s, t)
            })
            .collect::<Vec<_>>()
    });
    fixed.into_iter().chain(rand_rows)
}

/// A representative `λ = ⟨ℓ!, v⟩` of the invariant of a rank one element,
/// with the row `ℓ` that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaRep<S> {
    /// The unit `λ`.
    pub lambda: S,
    /// The row `ℓ = (s, t)`.
    pub row: (Vec<S>, Vec<S>),
}

/// Finds a unit `⟨ℓ!, v⟩` for a rank one `v`.
pub fn lambda_invariant<S: Scalar>(a: &dyn AssocCns<S>, x: &WElem<S>, bound: i64) -> Result<LambdaRep<S>> {
    if super::rank(a, x) != 1 {
        return Err(Error::Precondition("the λ invariant needs a rank one element".into()));
    }
    for row in candidate_rows(a, bound, 0x1a4b) {
        let lambda = pair(a, &shriek_row(a, &row.0, &row.1), x);
        if lambda.is_unit() {
            return Ok(LambdaRep { lambda, row });
        }
    }
    Err(Error::BoundExceeded(format!("no row ℓ with ⟨ℓ!, v⟩ a unit up to height {bound}")))
}

/// Semi-decision for `λ' ∈ λ n(A^×)`: a witness `x` with `n(x) λ = λ'` if one
/// is found among small elements, `None` otherwise.
pub fn class_witness<S: Scalar>(a: &dyn AssocCns<S>, lambda: &S, lambda2: &S, bound: i64) -> Option<Vec<S>> {
    candidate_rows(a, bound, 0x2c7d)
        .flat_map(|(s, t)| [s, t])
        .find(|x| a.norm(x).mul(lambda) == *lambda2 && a.norm(x).is_unit())
}
