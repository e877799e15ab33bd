//! Shared inputs for the benchmarks.

use qjoin_core::hopfalg::{su_q2, HopfElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `n` seeded random elements of quantum SU(2) of degree at most `degree`.
pub fn sample_elements(n: usize, degree: usize, seed: u64) -> Vec<HopfElement> {
    let alg = su_q2();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| alg.random_element(&mut rng, degree, 2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(sample_elements(4, 4, 1), sample_elements(4, 4, 1));
        assert_eq!(sample_elements(4, 4, 1).len(), 4);
    }
}
