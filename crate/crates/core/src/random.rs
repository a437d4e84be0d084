//! Seeded random generation of small exact test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalars::{q, qi, QAlg, QElem, Q};
use std::sync::Arc;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integer in `[-bound, bound]` as a rational.
pub fn int<R: Rng>(rng: &mut R, bound: i64) -> Q {
    qi(rng.gen_range(-bound..=bound))
}

/// Random rational with numerator in `[-bound, bound]` and denominator in `1..=3`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Q {
    q(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

/// Random nonzero integer in `[-bound, bound]`.
pub fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return qi(x);
        }
    }
}

/// Random element of an algebra with small integer coordinates.
pub fn alg_elem<R: Rng>(rng: &mut R, alg: &Arc<QAlg>, bound: i64) -> QElem {
    QElem::new(alg, (0..alg.dim()).map(|_| int(rng, bound)).collect())
}

/// Vector of random integers.
pub fn int_vec<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Q> {
    (0..n).map(|_| int(rng, bound)).collect()
}
