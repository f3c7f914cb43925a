//! The pinned random source for disorder sampling.
//!
//! Realizations use ChaCha8 seeded through `SeedableRng::seed_from_u64`, and
//! Gaussian variates come from `rand_distr::StandardNormal` (ziggurat). Both
//! are platform independent, so a seed names the same realization on every
//! machine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub struct DisorderRng(ChaCha8Rng);

impl DisorderRng {
    pub fn new(seed: u64) -> Self {
        DisorderRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// One draw from `N(0, std²)`.
    pub fn gaussian(&mut self, std: f64) -> f64 {
        let z: f64 = self.0.sample(StandardNormal);
        std * z
    }

    pub fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.0
    }
}
