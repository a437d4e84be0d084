//! Dense exact linear algebra over `Q`.
//!
//! Matrices are row-major `Vec<Vec<Q>>`. Systems over a quotient algebra are
//! solved by restriction of scalars, see [`solve_over`].



use super::{QElem, Scalar, Q};

/// Row-major rational matrix.
pub type MatQ = Vec<Vec<Q>>;

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &MatQ) -> (MatQ, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank of a matrix.
pub fn rank(m: &MatQ) -> usize {
    rref(m).1.len()
}

/// Determinant of a square matrix by fraction-exact elimination.
pub fn det(m: &MatQ) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    d
}

/// One solution of `m x = rhs`, or `None` when the system is inconsistent.
///
/// The returned vector is checked by substitution before it is handed out.
pub fn solve(m: &MatQ, rhs: &[Q]) -> Option<Vec<Q>> {
    let rows = m.len();
    assert_eq!(rows, rhs.len(), "right-hand side length must match rows");
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let aug: MatQ = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, piv) = rref(&aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = red[r][cols].clone();
    }
    debug_assert_eq!(mat_vec(m, &x), rhs);
    Some(x)
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel(m: &MatQ) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (red, piv) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (r, &c) in piv.iter().enumerate() {
                x[c] = -red[r][f].clone();
            }
            x
        })
        .collect()
}

/// Inverse of a square matrix when it exists.
pub fn inverse(m: &MatQ) -> Option<MatQ> {
    let n = m.len();
    let aug: MatQ = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (red, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix product.
pub fn mat_mul(a: &MatQ, b: &MatQ) -> MatQ {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Matrix times vector.
pub fn mat_vec(a: &MatQ, x: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Q::zero(), |acc, (p, q)| acc + p * q))
        .collect()
}

/// Transpose.
pub fn transpose(a: &MatQ) -> MatQ {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Identity matrix.
pub fn identity(n: usize) -> MatQ {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

/// Solves `m x = rhs` over a quotient algebra by restriction of scalars.
///
/// Every entry must live in the same algebra `alg` (rational constants are
/// allowed). Returns `None` when no solution exists.
pub fn solve_over(alg: &std::sync::Arc<super::QAlg>, m: &[Vec<QElem>], rhs: &[QElem]) -> Option<Vec<QElem>> {
    let k = alg.dim();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut big = vec![vec![Q::zero(); cols * k]; rows * k];
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let rep = alg.regular(&e.coords_in(alg));
            for r in 0..k {
                for c in 0..k {
                    big[i * k + r][j * k + c] = rep[r][c].clone();
                }
            }
        }
    }
    let b: Vec<Q> = rhs.iter().flat_map(|e| e.coords_in(alg)).collect();
    let x = solve(&big, &b)?;
    Some(x.chunks(k).map(|c| QElem::new(alg, c.to_vec())).collect())
}

/// Solves `m x = rhs` for a generic scalar type by restriction of scalars,
/// assuming every scalar is rational. Used for systems that are known to be
/// defined over `Q`.
pub fn solve_rational<S: Scalar>(m: &[Vec<S>], rhs: &[S]) -> Option<Vec<Q>> {
    let mq: MatQ = m
        .iter()
        .map(|r| r.iter().map(|e| e.as_q()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let bq: Vec<Q> = rhs.iter().map(|e| e.as_q()).collect::<Option<Vec<_>>>()?;
    solve(&mq, &bq)
}
