use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Bounds and seed for randomized property checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleSpec {
    pub seed: u64,
    /// Total degree bound for monomials of a presented algebra.
    pub max_degree: u32,
    /// Inclusive window of group-like indices.
    pub p_window: (i64, i64),
    /// Maximal number of terms of a random element.
    pub support_size: usize,
    pub trials: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { seed: 42, max_degree: 3, p_window: (-5, 5), support_size: 3, trials: 50 }
    }
}

impl SampleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p_window.0 > self.p_window.1 {
            return Err(Error::Invalid(format!("empty index window [{}, {}]", self.p_window.0, self.p_window.1)));
        }
        if self.support_size == 0 || self.trials == 0 {
            return Err(Error::Invalid("support size and trials must be positive".into()));
        }
        Ok(())
    }

    pub fn with_trials(&self, trials: usize) -> Self {
        SampleSpec { trials, ..self.clone() }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SampleSpec { seed, ..self.clone() }
    }

    pub fn window(&self) -> impl Iterator<Item = i64> {
        self.p_window.0..=self.p_window.1
    }
}

/// Deterministic random source for one check; identical `(seed, stream)`
/// pairs give identical draws.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream for a named check, so adding a check never shifts
    /// the draws of another.
    pub fn for_stream(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = stream.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        rng.set_stream(h);
        Sampler { rng }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn choose<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).expect("choose from empty slice")
    }

    /// Small nonzero integer coefficient.
    pub fn coeff(&mut self) -> Scalar {
        let n = self.int_in(1, 4);
        Scalar::int(if self.coin() { n } else { -n })
    }

    /// Group-like index from the window.
    pub fn p(&mut self, spec: &SampleSpec) -> i64 {
        self.int_in(spec.p_window.0, spec.p_window.1)
    }

    /// Number of terms for a random element, at least one.
    pub fn support(&mut self, spec: &SampleSpec) -> usize {
        self.int_in(1, spec.support_size as i64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_identical_streams() {
        let mut a = Sampler::for_stream(42, "x");
        let mut b = Sampler::for_stream(42, "x");
        let xs: Vec<i64> = (0..20).map(|_| a.int_in(-100, 100)).collect();
        let ys: Vec<i64> = (0..20).map(|_| b.int_in(-100, 100)).collect();
        assert_eq!(xs, ys);
        let mut c = Sampler::for_stream(42, "y");
        let zs: Vec<i64> = (0..20).map(|_| c.int_in(-100, 100)).collect();
        assert_ne!(xs, zs);
    }

    #[test]
    fn window_respected() {
        let spec = SampleSpec { p_window: (-2, 2), ..Default::default() };
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let p = s.p(&spec);
            assert!((-2..=2).contains(&p));
        }
    }

    #[test]
    fn invalid_specs() {
        let bad = SampleSpec { p_window: (3, 1), ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(SampleSpec::default().with_trials(0).validate().is_err());
    }
}
