//! Finite dimensional commutative algebras over `Q` given by structure
//! constants, and their elements.
//!
//! Every algebra has a distinguished basis `e_0 = 1, e_1, ...`. Norm and trace
//! are the determinant and trace of the regular representation, so an element
//! is a unit exactly when its norm is nonzero.

use std::fmt;
use std::sync::Arc;



use super::linalg::{self, MatQ};
use super::{q_to_string, qi, Scalar, Q};
use crate::error::{Error, Result};

/// Commutative unital `Q`-algebra with basis `e_0 = 1, ..., e_{n-1}`.
#[derive(Clone, PartialEq)]
pub struct QAlg {
    /// `table[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
    table: Vec<Vec<Vec<Q>>>,
    /// Monic modulus, low degree first, when the algebra is `Q[x]/(f)`.
    modulus: Option<Vec<Q>>,
}

impl fmt::Debug for QAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            Some(m) => {
                let c: Vec<String> = m.iter().map(q_to_string).collect();
                write!(f, "QAlg(modulus [{}])", c.join(", "))
            }
            None => write!(f, "QAlg(dim {})", self.dim()),
        }
    }
}

impl QAlg {
    /// Builds an algebra from structure constants, checking that `e_0` is the
    /// identity and that the product is commutative and associative.
    pub fn from_table(table: Vec<Vec<Vec<Q>>>) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::Descriptor("structure table must be n x n x n with n >= 1".into()));
        }
        let alg = QAlg { table, modulus: None };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let ei = self.basis(i);
            if self.mul(&self.basis(0), &ei) != ei {
                return Err(Error::Descriptor("e_0 is not the identity".into()));
            }
            for j in 0..n {
                let ej = self.basis(j);
                if self.mul(&ei, &ej) != self.mul(&ej, &ei) {
                    return Err(Error::Descriptor("structure table is not commutative".into()));
                }
                for k in 0..n {
                    let ek = self.basis(k);
                    if self.mul(&self.mul(&ei, &ej), &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        return Err(Error::Descriptor("structure table is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Q[x]/(f)` for a monic `f` of degree 2 or 3, coefficients low degree
    /// first. Moduli with a repeated root are rejected.
    pub fn from_modulus(coeffs: &[Q]) -> Result<Arc<Self>> {
        let deg = coeffs.len().saturating_sub(1);
        if !(2..=3).contains(&deg) {
            return Err(Error::Descriptor(format!("modulus must have degree 2 or 3, got {deg}")));
        }
        if coeffs[deg] != Q::one() {
            return Err(Error::Descriptor("modulus must be monic".into()));
        }
        if poly_disc(coeffs).is_zero() {
            return Err(Error::Descriptor("modulus has a repeated root".into()));
        }
        // x^k for k < 2 deg, reduced modulo f.
        let mut powers: Vec<Vec<Q>> = Vec::new();
        for k in 0..2 * deg - 1 {
            let p = if k < deg {
                let mut v = vec![Q::zero(); deg];
                v[k] = Q::one();
                v
            } else {
                let prev = &powers[k - 1];
                let mut v = vec![Q::zero(); deg];
                for i in 1..deg {
                    v[i] = prev[i - 1].clone();
                }
                let top = &prev[deg - 1];
                for i in 0..deg {
                    v[i] -= top * &coeffs[i];
                }
                v
            };
            powers.push(p);
        }
        let table = (0..deg)
            .map(|i| (0..deg).map(|j| powers[i + j].clone()).collect())
            .collect();
        Ok(Arc::new(QAlg { table, modulus: Some(coeffs.to_vec()) }))
    }

    /// `Q[x]/(x^2 - d)` with `d` nonzero.
    pub fn quadratic(d: &Q) -> Result<Arc<Self>> {
        Self::from_modulus(&[-d.clone(), Q::zero(), Q::one()])
    }

    /// The quadratic ring `S_D = Q[t]/(t^2 - D t + (D^2 - D)/4)` with basis `(1, t)`.
    pub fn quadratic_ring(d: &Q) -> Result<Arc<Self>> {
        let c0 = (d * d - d) / qi(4);
        Self::from_modulus(&[c0, -d.clone(), Q::one()])
    }

    /// The based cubic ring of the binary cubic `a x^3 + b x^2 y + c x y^2 + d y^3`
    /// with basis `(1, w, t)` and table `w t = -ad`, `w^2 = -ac + a t - b w`,
    /// `t^2 = -bd + c t - d w`. Degenerate forms are allowed.
    pub fn cubic_form(f: &[Q; 4]) -> Arc<Self> {
        let [a, b, c, d] = f;
        let z = Q::zero;
        let o = Q::one;
        let one_row = vec![vec![o(), z(), z()], vec![z(), o(), z()], vec![z(), z(), o()]];
        let ww = vec![-(a * c), -b.clone(), a.clone()];
        let wt = vec![-(a * d), z(), z()];
        let tt = vec![-(b * d), -d.clone(), c.clone()];
        let table = vec![
            one_row.clone(),
            vec![one_row[1].clone(), ww, wt.clone()],
            vec![one_row[2].clone(), wt, tt],
        ];
        let alg = QAlg { table, modulus: None };
        debug_assert!(alg.validate().is_ok());
        Arc::new(alg)
    }

    /// The split algebra `Q^n` with basis `1, e_1, ..., e_{n-1}` where
    /// `e_i` is the `i`-th idempotent.
    pub fn split(n: usize) -> Arc<Self> {
        // Work in idempotent coordinates, then change basis to (1, e_1, ...).
        let to_idem = |v: &[Q]| -> Vec<Q> {
            (0..n).map(|i| if i == 0 { v[0].clone() } else { &v[0] + &v[i] }).collect()
        };
        let from_idem = |w: &[Q]| -> Vec<Q> {
            (0..n).map(|i| if i == 0 { w[0].clone() } else { &w[i] - &w[0] }).collect()
        };
        let basis = |i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        };
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (x, y) = (to_idem(&basis(i)), to_idem(&basis(j)));
                        let p: Vec<Q> = x.iter().zip(&y).map(|(s, t)| s * t).collect();
                        from_idem(&p)
                    })
                    .collect()
            })
            .collect();
        Arc::new(QAlg { table, modulus: None })
    }

    /// Dimension over `Q`.
    pub fn dim(&self) -> usize {
        self.table.len()
    }

    /// The monic modulus when the algebra was built as `Q[x]/(f)`.
    pub fn modulus(&self) -> Option<&[Q]> {
        self.modulus.as_deref()
    }

    /// Structure constants.
    pub fn table(&self) -> &Vec<Vec<Vec<Q>>> {
        &self.table
    }

    /// Basis vector `e_i`.
    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    /// Product of coordinate vectors.
    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &c * &self.table[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `u`; column `j` holds `u e_j`.
    pub fn regular(&self, u: &[Q]) -> MatQ {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.mul(u, &self.basis(j))).collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// Norm: determinant of the regular representation.
    pub fn norm(&self, u: &[Q]) -> Q {
        linalg::det(&self.regular(u))
    }

    /// Trace of the regular representation.
    pub fn trace(&self, u: &[Q]) -> Q {
        let m = self.regular(u);
        (0..self.dim()).fold(Q::zero(), |acc, i| acc + &m[i][i])
    }

    /// Inverse when `u` is a unit.
    pub fn inv(&self, u: &[Q]) -> Option<Vec<Q>> {
        if self.norm(u).is_zero() {
            return None;
        }
        linalg::solve(&self.regular(u), &self.basis(0))
    }

    /// Gram matrix of the trace form on the distinguished basis.
    pub fn trace_gram(&self) -> MatQ {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.trace(&self.mul(&self.basis(i), &self.basis(j)))).collect())
            .collect()
    }
}

/// Discriminant of a monic polynomial of degree 2 or 3 (low degree first).
fn poly_disc(c: &[Q]) -> Q {
    match c.len() {
        3 => &c[1] * &c[1] - qi(4) * &c[0],
        4 => {
            let (d, cc, b) = (&c[0], &c[1], &c[2]);
            // x^3 + b x^2 + cc x + d
            b * b * cc * cc - qi(4) * cc * cc * cc - qi(4) * b * b * b * d - qi(27) * d * d
                + qi(18) * b * cc * d
        }
        _ => Q::zero(),
    }
}

/// Element of a [`QAlg`], or a rational constant usable in any algebra.
#[derive(Clone)]
pub enum QElem {
    /// A rational multiple of the identity, independent of any algebra.
    Const(Q),
    /// Coordinates on the distinguished basis of the algebra.
    Full(Arc<QAlg>, Vec<Q>),
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QElem::Const(x) => write!(f, "{}", q_to_string(x)),
            QElem::Full(_, c) => {
                let s: Vec<String> = c.iter().map(q_to_string).collect();
                write!(f, "[{}]", s.join(", "))
            }
        }
    }
}

fn same_alg(a: &Arc<QAlg>, b: &Arc<QAlg>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl QElem {
    /// Element with the given coordinates.
    pub fn new(alg: &Arc<QAlg>, coords: Vec<Q>) -> Self {
        assert_eq!(coords.len(), alg.dim(), "coordinate length must equal algebra dimension");
        QElem::Full(alg.clone(), coords)
    }

    /// Basis element `e_i` of `alg`.
    pub fn basis(alg: &Arc<QAlg>, i: usize) -> Self {
        QElem::new(alg, alg.basis(i))
    }

    /// The algebra this element lives in, if it is not a bare constant.
    pub fn alg(&self) -> Option<&Arc<QAlg>> {
        match self {
            QElem::Const(_) => None,
            QElem::Full(a, _) => Some(a),
        }
    }

    /// Coordinates in `alg`.
    pub fn coords_in(&self, alg: &Arc<QAlg>) -> Vec<Q> {
        match self {
            QElem::Const(x) => {
                let mut v = vec![Q::zero(); alg.dim()];
                v[0] = x.clone();
                v
            }
            QElem::Full(a, c) => {
                assert!(same_alg(a, alg), "element lives in a different algebra");
                c.clone()
            }
        }
    }

    /// Norm from `alg` down to `Q`.
    pub fn norm_in(&self, alg: &Arc<QAlg>) -> Q {
        alg.norm(&self.coords_in(alg))
    }

    /// Trace from `alg` down to `Q`.
    pub fn trace_in(&self, alg: &Arc<QAlg>) -> Q {
        alg.trace(&self.coords_in(alg))
    }

    fn binary(&self, o: &Self, fq: impl Fn(&Q, &Q) -> Q, fv: impl Fn(&Arc<QAlg>, &[Q], &[Q]) -> Vec<Q>) -> Self {
        match (self, o) {
            (QElem::Const(x), QElem::Const(y)) => QElem::Const(fq(x, y)),
            (QElem::Full(a, x), QElem::Full(b, y)) => {
                assert!(same_alg(a, b), "operands live in different algebras");
                QElem::Full(a.clone(), fv(a, x, y))
            }
            (QElem::Full(a, x), c @ QElem::Const(_)) => {
                let y = c.coords_in(a);
                QElem::Full(a.clone(), fv(a, x, &y))
            }
            (c @ QElem::Const(_), QElem::Full(a, y)) => {
                let x = c.coords_in(a);
                QElem::Full(a.clone(), fv(a, &x, y))
            }
        }
    }
}

impl PartialEq for QElem {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (QElem::Const(x), QElem::Const(y)) => x == y,
            (QElem::Full(a, x), QElem::Full(b, y)) => same_alg(a, b) && x == y,
            (QElem::Full(a, x), c @ QElem::Const(_)) | (c @ QElem::Const(_), QElem::Full(a, x)) => {
                &c.coords_in(a) == x
            }
        }
    }
}

impl Scalar for QElem {
    fn zero() -> Self {
        QElem::Const(Q::zero())
    }
    fn one() -> Self {
        QElem::Const(Q::one())
    }
    fn from_q(x: Q) -> Self {
        QElem::Const(x)
    }
    fn add(&self, o: &Self) -> Self {
        self.binary(o, |x, y| x + y, |_, x, y| x.iter().zip(y).map(|(p, q)| p + q).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        self.binary(o, |x, y| x - y, |_, x, y| x.iter().zip(y).map(|(p, q)| p - q).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (QElem::Const(x), QElem::Full(a, y)) | (QElem::Full(a, y), QElem::Const(x)) => {
                QElem::Full(a.clone(), y.iter().map(|t| t * x).collect())
            }
            _ => self.binary(o, |x, y| x * y, |a, x, y| a.mul(x, y)),
        }
    }
    fn neg(&self) -> Self {
        match self {
            QElem::Const(x) => QElem::Const(-x),
            QElem::Full(a, c) => QElem::Full(a.clone(), c.iter().map(|t| -t).collect()),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            QElem::Const(x) => x.is_zero(),
            QElem::Full(_, c) => c.iter().all(|t| t.is_zero()),
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            QElem::Const(x) => Scalar::inv(x).map(QElem::Const),
            QElem::Full(a, c) => a.inv(c).map(|v| QElem::Full(a.clone(), v)),
        }
    }
    fn scale(&self, x: &Q) -> Self {
        match self {
            QElem::Const(y) => QElem::Const(y * x),
            QElem::Full(a, c) => QElem::Full(a.clone(), c.iter().map(|t| t * x).collect()),
        }
    }
    /// The involution `u -> tr(u) - u` of a quadratic algebra.
    ///
    /// # Panics
    /// Panics for algebras whose dimension is not two.
    fn conj(&self) -> Self {
        match self {
            QElem::Const(_) => self.clone(),
            QElem::Full(a, c) => {
                assert_eq!(a.dim(), 2, "conjugation needs a quadratic algebra");
                let t = a.trace(c);
                QElem::Full(a.clone(), vec![&t - &c[0], -c[1].clone()])
            }
        }
    }
    fn as_q(&self) -> Option<Q> {
        match self {
            QElem::Const(x) => Some(x.clone()),
            QElem::Full(_, c) => c[1..].iter().all(|t| t.is_zero()).then(|| c[0].clone()),
        }
    }
    fn q_coords(&self) -> Vec<Q> {
        match self {
            QElem::Const(x) => vec![x.clone()],
            QElem::Full(_, c) => c.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{q, qi};

    #[test]
    fn norm_in_quadratic_field() {
        let e = QAlg::quadratic(&qi(5)).unwrap();
        let u = QElem::new(&e, vec![qi(2), qi(1)]);
        assert_eq!(u.norm_in(&e), qi(-1));
        let v = QElem::new(&e, vec![q(3, 2), qi(-2)]);
        // alpha^2 - D beta^2
        assert_eq!(v.norm_in(&e), q(9, 4) - qi(20));
    }

    #[test]
    fn split_quadratic_has_zero_divisors() {
        let e = QAlg::quadratic(&qi(1)).unwrap();
        let u = QElem::new(&e, vec![qi(1), qi(1)]);
        assert_eq!(u.norm_in(&e), qi(0));
        assert!(u.inv().is_none());
    }

    #[test]
    fn bad_moduli_are_rejected() {
        assert!(QAlg::from_modulus(&[qi(0), qi(0), qi(1)]).is_err());
        assert!(QAlg::from_modulus(&[qi(1), qi(0), qi(2)]).is_err());
        assert!(QAlg::from_modulus(&[qi(1), qi(1)]).is_err());
        assert!(QAlg::from_modulus(&[qi(1), qi(0), qi(0), qi(0), qi(1)]).is_err());
        assert!(QAlg::from_modulus(&[qi(-2), qi(0), qi(0), qi(1)]).is_ok());
    }

    #[test]
    fn inverse_times_element_is_one() {
        let l = QAlg::from_modulus(&[qi(-2), qi(1), qi(0), qi(1)]).unwrap();
        let u = QElem::new(&l, vec![qi(1), qi(-1), qi(3)]);
        assert_eq!(u.mul(&u.inv().unwrap()), QElem::one());
    }

    #[test]
    fn cubic_form_table_for_x3_minus_xy2() {
        let t = QAlg::cubic_form(&[qi(1), qi(0), qi(-1), qi(0)]);
        let w = QElem::basis(&t, 1);
        let th = QElem::basis(&t, 2);
        assert_eq!(w.mul(&w), QElem::one().add(&th));
        assert_eq!(th.mul(&th), th.neg());
        assert_eq!(w.mul(&th), QElem::zero());
    }

    #[test]
    fn split_algebra_is_a_product_of_fields() {
        let s = QAlg::split(3);
        let e1 = QElem::basis(&s, 1);
        let e2 = QElem::basis(&s, 2);
        assert_eq!(e1.mul(&e1), e1);
        assert_eq!(e1.mul(&e2), QElem::zero());
        assert_eq!(QElem::new(&s, vec![qi(2), qi(1), qi(0)]).norm_in(&s), qi(12));
    }

    #[test]
    fn quadratic_conjugation_fixes_rationals() {
        let e = QAlg::quadratic(&qi(-3)).unwrap();
        let u = QElem::new(&e, vec![qi(4), qi(7)]);
        assert_eq!(u.conj(), QElem::new(&e, vec![qi(4), qi(-7)]));
        assert_eq!(u.mul(&u.conj()).as_q(), Some(u.norm_in(&e)));
    }
}
