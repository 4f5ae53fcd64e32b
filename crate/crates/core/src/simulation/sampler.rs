//! Seeded per-replicate random streams and multinomial sampling.
//!
//! Each replicate draws from its own ChaCha8 stream: the key is derived from
//! the master seed and the 64-bit stream id is the replicate index. A
//! replicate's counts therefore depend only on `(seed, index)`, never on which
//! worker evaluates it or in what order.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::score::ConfusionCounts;

#[derive(Debug, Clone)]
pub struct ReplicateStreams {
    key: <ChaCha8Rng as SeedableRng>::Seed,
}

impl ReplicateStreams {
    pub fn new(seed: u64) -> Self {
        Self {
            key: ChaCha8Rng::seed_from_u64(seed).get_seed(),
        }
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        rng
    }
}

/// `Binomial(n, p)` draw; `p` is clamped into [0, 1] to absorb rounding in
/// conditional probabilities.
pub fn binomial<R: RngCore + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    let p = p.clamp(0.0, 1.0);
    if n == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("p is within [0, 1]").sample(rng)
}

/// Draws `(tp, fp, fn, tn) ~ Multinomial(n; p)` as a chain of conditional
/// binomials.
pub fn multinomial_sample<R: RngCore + ?Sized>(
    rng: &mut R,
    n: u64,
    p: &[f64; 4],
) -> ConfusionCounts {
    let mut remaining = n;
    let mut mass = 1.0;
    let mut cells = [0u64; 4];
    for i in 0..3 {
        let c = if remaining == 0 || mass <= 0.0 {
            0
        } else {
            binomial(rng, remaining, p[i] / mass)
        };
        cells[i] = c;
        remaining -= c;
        mass -= p[i];
    }
    cells[3] = remaining;
    ConfusionCounts::new(cells[0], cells[1], cells[2], cells[3])
}
