//! Hermitian 3 x 3 matrices over a composition algebra, and dense matrices
//! over a composition algebra.
//!
//! An element of `H_3(C)` is stored as `[c1, c2, c3, a1, a2, a3]` where the
//! `a_i` are blocks of `dim C` coordinates, for the matrix
//!
//! ```text
//! [ c1   a3   a2* ]
//! [ a3*  c2   a1  ]
//! [ a2   a1*  c3  ]
//! ```

use crate::composition::CompDesc;
use crate::scalars::{vec as v, Scalar};

use super::Cns;

/// `H_3(C)` for a composition algebra `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H3 {
    /// The coefficient algebra.
    pub comp: CompDesc,
}

impl H3 {
    /// `H_3(C)`.
    pub fn new(comp: CompDesc) -> Self {
        H3 { comp }
    }

    /// Size of one off-diagonal block.
    pub fn k(&self) -> usize {
        self.comp.dim()
    }

    /// Diagonal entry `c_i` for `i` in `0..3`.
    pub fn c<'a, S>(&self, x: &'a [S], i: usize) -> &'a S {
        &x[i]
    }

    /// Off-diagonal block `a_i` for `i` in `1..=3`.
    pub fn a<'a, S>(&self, x: &'a [S], i: usize) -> &'a [S] {
        let k = self.k();
        &x[3 + (i - 1) * k..3 + i * k]
    }

    /// Assembles coordinates from diagonal entries and off-diagonal blocks.
    pub fn assemble<S: Scalar>(&self, c: [S; 3], a: [Vec<S>; 3]) -> Vec<S> {
        let mut out: Vec<S> = c.to_vec();
        for b in a {
            debug_assert_eq!(b.len(), self.k());
            out.extend(b);
        }
        out
    }

    /// The diagonal matrix `diag(c1, c2, c3)`.
    pub fn diag<S: Scalar>(&self, c: [S; 3]) -> Vec<S> {
        let z = || v::zero::<S>(self.k());
        self.assemble(c, [z(), z(), z()])
    }

    /// The full matrix of an element.
    pub fn to_mat<S: Scalar>(&self, x: &[S]) -> CMat<S> {
        let cm = &self.comp;
        let s = |t: &S| cm.scalar(t.clone());
        let (a1, a2, a3) = (self.a(x, 1).to_vec(), self.a(x, 2).to_vec(), self.a(x, 3).to_vec());
        CMat::from_entries(
            3,
            3,
            vec![
                s(&x[0]),
                a3.clone(),
                cm.conj(&a2),
                cm.conj(&a3),
                s(&x[1]),
                a1.clone(),
                a2,
                cm.conj(&a1),
                s(&x[2]),
            ],
        )
    }

    /// Reads a Hermitian matrix back into coordinates. The lower triangle and
    /// the imaginary parts of the diagonal are ignored.
    pub fn from_mat<S: Scalar>(&self, m: &CMat<S>) -> Vec<S> {
        self.assemble(
            [m.get(0, 0)[0].clone(), m.get(1, 1)[0].clone(), m.get(2, 2)[0].clone()],
            [m.get(1, 2).to_vec(), m.get(2, 0).to_vec(), m.get(0, 1).to_vec()],
        )
    }

    /// True when the matrix equals its conjugate transpose and has scalar diagonal.
    pub fn is_hermitian<S: Scalar>(&self, m: &CMat<S>) -> bool {
        m.rows == 3 && m.cols == 3 && *m == m.conj_t(&self.comp) && (0..3).all(|i| v::is_zero(&m.get(i, i)[1..]))
    }
}

impl<S: Scalar> Cns<S> for H3 {
    fn dim(&self) -> usize {
        3 + 3 * self.k()
    }
    fn label(&self) -> String {
        let gammas: Vec<String> = self.comp.gammas.iter().map(crate::scalars::q_to_string).collect();
        if gammas.is_empty() {
            "H3(Q)".into()
        } else {
            format!("H3(C({}))", gammas.join(", "))
        }
    }
    fn identity(&self) -> Vec<S> {
        self.diag([S::one(), S::one(), S::one()])
    }
    fn norm(&self, x: &[S]) -> S {
        let cm = &self.comp;
        let (c1, c2, c3) = (&x[0], &x[1], &x[2]);
        let (a1, a2, a3) = (self.a(x, 1), self.a(x, 2), self.a(x, 3));
        c1.mul(c2)
            .mul(c3)
            .sub(&c1.mul(&cm.norm(a1)))
            .sub(&c2.mul(&cm.norm(a2)))
            .sub(&c3.mul(&cm.norm(a3)))
            .add(&cm.trace(&cm.mul(&cm.mul(a1, a2), a3)))
    }
    fn adjoint(&self, x: &[S]) -> Vec<S> {
        let cm = &self.comp;
        let (c1, c2, c3) = (&x[0], &x[1], &x[2]);
        let (a1, a2, a3) = (self.a(x, 1), self.a(x, 2), self.a(x, 3));
        let d1 = c2.mul(c3).sub(&cm.norm(a1));
        let d2 = c1.mul(c3).sub(&cm.norm(a2));
        let d3 = c1.mul(c2).sub(&cm.norm(a3));
        let n1 = v::sub(&cm.mul(&cm.conj(a3), &cm.conj(a2)), &v::smul(c1, a1));
        let n2 = v::sub(&cm.mul(&cm.conj(a1), &cm.conj(a3)), &v::smul(c2, a2));
        let n3 = v::sub(&cm.mul(&cm.conj(a2), &cm.conj(a1)), &v::smul(c3, a3));
        self.assemble([d1, d2, d3], [n1, n2, n3])
    }
    fn pair(&self, x: &[S], y: &[S]) -> S {
        let cm = &self.comp;
        let mut s = S::zero();
        for i in 0..3 {
            s = s.add(&x[i].mul(&y[i]));
        }
        for i in 1..=3 {
            s = s.add(&cm.pair(self.a(x, i), self.a(y, i)));
        }
        s
    }
    fn trace(&self, x: &[S]) -> S {
        x[0].add(&x[1]).add(&x[2])
    }
    fn triple_sym(&self, x: &[S], y: &[S], z: &[S]) -> Option<Vec<S>> {
        if !self.comp.is_associative() {
            return None;
        }
        let cm = &self.comp;
        let (mx, my, mz) = (self.to_mat(x), self.to_mat(y), self.to_mat(z));
        let t = my.mul(cm, &mx).mul(cm, &mz).add(&mz.mul(cm, &mx).mul(cm, &my));
        Some(self.from_mat(&t))
    }
}

/// A dense `rows x cols` matrix with entries in a composition algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat<S> {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Row-major entries, each a coordinate vector in the algebra.
    pub entries: Vec<Vec<S>>,
}

impl<S: Scalar> CMat<S> {
    /// Matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Vec<S>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match the shape");
        CMat { rows, cols, entries }
    }

    /// Zero matrix.
    pub fn zero(comp: &CompDesc, rows: usize, cols: usize) -> Self {
        CMat { rows, cols, entries: vec![v::zero(comp.dim()); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(comp: &CompDesc, n: usize) -> Self {
        let mut m = Self::zero(comp, n, n);
        for i in 0..n {
            m.entries[i * n + i] = comp.one();
        }
        m
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &[S] {
        &self.entries[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, x: Vec<S>) {
        let c = self.cols;
        self.entries[i * c + j] = x;
    }

    /// Matrix product.
    pub fn mul(&self, comp: &CompDesc, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions must agree");
        let mut out = Self::zero(comp, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut s = v::zero::<S>(comp.dim());
                for k in 0..self.cols {
                    s = v::add(&s, &comp.mul(self.get(i, k), o.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| v::add(a, b)).collect();
        CMat { rows: self.rows, cols: self.cols, entries }
    }

    /// Entrywise difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&S::from_i64(-1)))
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, s: &S) -> Self {
        CMat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| v::smul(s, a)).collect() }
    }

    /// Conjugate transpose.
    pub fn conj_t(&self, comp: &CompDesc) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(comp.conj(self.get(i, j)));
            }
        }
        CMat { rows: self.cols, cols: self.rows, entries }
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| v::is_zero(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{qi, Q};

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn rational_h3_is_symmetric_matrices() {
        let h = H3::new(CompDesc::rationals());
        // [[1,2,3],[2,4,5],[3,5,6]] has a1 = 5, a2 = 3, a3 = 2.
        let x = qv(&[1, 4, 6, 5, 3, 2]);
        let det = qi(1 * (4 * 6 - 25) - 2 * (2 * 6 - 5 * 3) + 3 * (2 * 5 - 4 * 3));
        assert_eq!(h.norm(&x), det);
        let m = h.to_mat(&x);
        assert!(h.is_hermitian(&m));
        assert_eq!(h.from_mat(&m), x);
    }

    #[test]
    fn single_diagonal_entry_has_rank_one() {
        let h = H3::new(CompDesc::rationals());
        assert_eq!(Cns::<Q>::rank(&h, &qv(&[1, 0, 0, 0, 0, 0])), 1);
    }

    #[test]
    fn generic_quaternion_norm_matches_formula() {
        let cm = CompDesc::quaternion(-1, -1);
        let h = H3::new(cm.clone());
        let a1 = qv(&[1, 2, 0, -1]);
        let a2 = qv(&[0, 1, 1, 3]);
        let a3 = qv(&[2, 0, -1, 1]);
        let x = h.assemble([qi(2), qi(-1), qi(3)], [a1.clone(), a2.clone(), a3.clone()]);
        let expect = qi(2 * -1 * 3) - qi(2) * cm.norm(&a1) + cm.norm(&a2) - qi(3) * cm.norm(&a3)
            + cm.trace(&cm.mul(&cm.mul(&a1, &a2), &a3));
        assert_eq!(h.norm(&x), expect);
    }

    #[test]
    fn adjoint_agrees_with_matrix_product_for_associative_coefficients() {
        let cm = CompDesc::quaternion(-1, -3);
        let h = H3::new(cm.clone());
        let x = h.assemble([qi(1), qi(2), qi(-1)], [qv(&[1, 0, 2, 1]), qv(&[0, -1, 1, 1]), qv(&[3, 1, 0, 0])]);
        let prod = h.to_mat(&x).mul(&cm, &h.to_mat(&h.adjoint(&x)));
        let n = h.norm(&x);
        assert_eq!(prod, CMat::identity(&cm, 3).scale(&n));
    }
}
