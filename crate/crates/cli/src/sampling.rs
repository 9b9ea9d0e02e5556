//! Seeded draws of rational parameters.

use jackpfq_core::{ParamSet, Rational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Retry budget for draws that land on a pole or a degenerate point.
pub const MAX_TRIES: usize = 32;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream for a named sub-task, so reports do not depend on execution order.
    pub fn derived(seed: u64, label: &str) -> Self {
        // FNV-1a over the label
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Sampler::new(seed ^ h)
    }

    /// `p/q` with `1 ≤ p, q ≤ 20`.
    pub fn alpha(&mut self) -> Rational {
        let p = self.rng.gen_range(1..=20);
        let q = self.rng.gen_range(1..=20);
        Rational::new(p, q).expect("nonzero denominator")
    }

    /// `p/q` with `−20 ≤ p ≤ 20`, `1 ≤ q ≤ 12`.
    pub fn param(&mut self) -> Rational {
        let p = self.rng.gen_range(-20..=20);
        let q = self.rng.gen_range(1..=12);
        Rational::new(p, q).expect("nonzero denominator")
    }

    pub fn params(&mut self, p: usize, q: usize, n: usize) -> ParamSet {
        let alpha = self.alpha();
        let upper = (0..p).map(|_| self.param()).collect();
        let lower = (0..q).map(|_| self.param()).collect();
        ParamSet::new(alpha, upper, lower, n).expect("alpha > 0, n >= 1")
    }

    /// Draws until `f` succeeds or fails with a non-retryable error.
    pub fn retry<T>(&mut self, mut f: impl FnMut(&mut Sampler) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..MAX_TRIES {
            match f(self) {
                Ok(v) => return Ok(v),
                Err(e) if e.is_retryable() => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.expect("at least one attempt"))
    }
}
