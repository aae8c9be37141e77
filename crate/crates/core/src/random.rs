//! Seeded generators for audit corpora and randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::{rat, LaurentPolynomial, Rational};
use crate::refine::GridSequence;

/// Degrees of random symbols stay within `[-SUPPORT_BOUND, SUPPORT_BOUND]`.
pub const SUPPORT_BOUND: i64 = 5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Random symbol with support in `[-5, 5]`, normalized so that `q(1) = 1`.
pub fn random_unit_sum_symbol<R: Rng>(rng: &mut R) -> LaurentPolynomial {
    loop {
        let lo = rng.gen_range(-SUPPORT_BOUND..=SUPPORT_BOUND);
        let hi = rng.gen_range(lo..=SUPPORT_BOUND);
        let coefficients: Vec<Rational> = (lo..=hi).map(|_| random_rational(rng)).collect();
        let total: Rational = coefficients.iter().sum();
        if total == rat(0, 1) {
            continue;
        }
        return LaurentPolynomial::new(lo, coefficients).scale(&total.recip());
    }
}

/// `count` symbols with `q(1) = 1` drawn from one seeded stream.
pub fn unit_sum_corpus(seed: u64, count: usize) -> Vec<LaurentPolynomial> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_unit_sum_symbol(&mut rng))
        .collect()
}

/// Random level-0 data with up to `max_len` values and an offset in `[-4, 4]`.
pub fn random_sequence<R: Rng>(rng: &mut R, max_len: usize) -> GridSequence {
    let len = rng.gen_range(1..=max_len.max(1));
    let offset = rng.gen_range(-4..=4);
    GridSequence::new(0, offset, (0..len).map(|_| random_rational(rng)).collect())
}
