//! Structures extended to a cubic algebra `T`, and the mixed cross product
//! `(U1 ⊗ λ1) ×_T (U2 ⊗ λ2) = (U1 × U2) ⊗ (λ1 × λ2)` that combines the cross
//! product of `J` with the cross product of `T` viewed as a cubic norm
//! structure.

use std::sync::Arc;

use crate::scalars::{QAlg, QElem, Scalar, Q};

use super::basic::EtaleCubic;
use super::Cns;

/// Splits an element of `J ⊗ T` into its components `X^(i) ∈ J` along the
/// basis `t_i` of `T`, so that `x = Σ X^(i) ⊗ t_i`.
pub fn components(alg: &Arc<QAlg>, x: &[QElem]) -> Vec<Vec<Q>> {
    let coords: Vec<Vec<Q>> = x.iter().map(|e| e.coords_in(alg)).collect();
    (0..alg.dim()).map(|i| coords.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Reassembles `Σ X^(i) ⊗ t_i`.
pub fn assemble(alg: &Arc<QAlg>, comps: &[Vec<Q>]) -> Vec<QElem> {
    let n = comps[0].len();
    (0..n).map(|k| QElem::new(alg, comps.iter().map(|c| c[k].clone()).collect())).collect()
}

/// The embedding `J -> J ⊗ T`, `X -> X ⊗ 1`.
pub fn extend(alg: &Arc<QAlg>, x: &[Q]) -> Vec<QElem> {
    x.iter().map(|t| QElem::new(alg, QElem::Const(t.clone()).coords_in(alg))).collect()
}

/// The mixed cross product `x ×_T y` on `J ⊗ T`.
///
/// `j` is the structure over `Q` and `t` is `T` with its cubic norm
/// structure; `alg` is the same algebra as a scalar ring.
pub fn cross_t(j: &dyn Cns<Q>, t: &EtaleCubic, alg: &Arc<QAlg>, x: &[QElem], y: &[QElem]) -> Vec<QElem> {
    let xs = components(alg, x);
    let ys = components(alg, y);
    let dim = alg.dim();
    let mut out: Vec<QElem> = vec![QElem::new(alg, vec![Q::zero(); dim]); j.dim()];
    for (i, xi) in xs.iter().enumerate() {
        if xi.iter().all(|c| c.is_zero()) {
            continue;
        }
        for (k, yk) in ys.iter().enumerate() {
            if yk.iter().all(|c| c.is_zero()) {
                continue;
            }
            let tt = Cns::<Q>::cross(t, &alg.basis(i), &alg.basis(k));
            let lam = QElem::new(alg, tt);
            let u = j.cross(xi, yk);
            for (o, uc) in out.iter_mut().zip(&u) {
                if !uc.is_zero() {
                    *o = o.add(&lam.scale(uc));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cns::Matrix3;
    use crate::scalars::{qi, vec as v};

    #[test]
    fn pure_tensors_multiply_componentwise() {
        let alg = QAlg::split(3);
        let tl = EtaleCubic::from_alg(&alg).unwrap();
        let u1: Vec<Q> = [1, 2, 0, 0, 1, 0, 3, 0, 1].iter().map(|&c| qi(c)).collect();
        let u2: Vec<Q> = [0, 1, 0, 1, 0, 2, 0, 0, 1].iter().map(|&c| qi(c)).collect();
        let l1 = QElem::basis(&alg, 1);
        let l2 = QElem::basis(&alg, 2);
        let x: Vec<QElem> = u1.iter().map(|c| l1.scale(c)).collect();
        let y: Vec<QElem> = u2.iter().map(|c| l2.scale(c)).collect();
        let got = cross_t(&Matrix3, &tl, &alg, &x, &y);
        let lc = QElem::new(&alg, Cns::<Q>::cross(&tl, &alg.basis(1), &alg.basis(2)));
        let expect: Vec<QElem> = Cns::<Q>::cross(&Matrix3, &u1, &u2).iter().map(|c| lc.scale(c)).collect();
        assert_eq!(got, expect);
        assert!(!v::is_zero(&got));
    }
}
