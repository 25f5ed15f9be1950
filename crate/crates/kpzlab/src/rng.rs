//! Reproducible random streams for parallel ensembles.
//!
//! Every replica draws from its own keyed counter stream: the key is the
//! 64-bit master seed, the stream id is the replica index. Streams are
//! pairwise independent by construction and a trajectory depends only on its
//! `SeedSpec`, never on worker count or scheduling.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

/// Key of one replica's random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master: u64,
    pub replica: u64,
}

impl SeedSpec {
    pub fn new(master: u64, replica: u64) -> Self {
        SeedSpec { master, replica }
    }

    pub fn stream(&self) -> Stream {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master);
        rng.set_stream(self.replica);
        Stream { rng, spare: None }
    }
}

/// One replica's stream: uniforms, exponentials, normals.
pub struct Stream {
    rng: ChaCha12Rng,
    spare: Option<f64>,
}

impl Stream {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in (0, 1], safe to pass to ln().
    pub fn uniform_open(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Exponential waiting time with the given rate.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        debug_assert!(rate > 0.0);
        -self.uniform_open().ln() / rate
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform();
        let mag = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        self.spare = Some(mag * s);
        mag * c
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: u64) -> u64 {
        // rejection to kill modulo bias
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seed_identical_stream() {
        let mut a = SeedSpec::new(42, 7).stream();
        let mut b = SeedSpec::new(42, 7).stream();
        for _ in 0..200 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn replicas_diverge() {
        let mut a = SeedSpec::new(42, 0).stream();
        let mut b = SeedSpec::new(42, 1).stream();
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn uniform_moments() {
        let mut s = SeedSpec::new(3, 0).stream();
        let n = 200_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..n {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
            sum += u;
            sq += u * u;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!((mean - 0.5).abs() < 3.0 * (1.0 / 12.0f64 / n as f64).sqrt());
        assert!((var - 1.0 / 12.0).abs() < 0.002);
    }

    #[test]
    fn exponential_mean() {
        let mut s = SeedSpec::new(11, 5).stream();
        let n = 100_000;
        let rate = 2.5;
        let mean: f64 = (0..n).map(|_| s.exponential(rate)).sum::<f64>() / n as f64;
        let se = 1.0 / rate / (n as f64).sqrt();
        assert!((mean - 1.0 / rate).abs() < 4.0 * se);
    }

    #[test]
    fn normal_moments() {
        let mut s = SeedSpec::new(9, 2).stream();
        let n = 200_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..n {
            let z = s.normal();
            sum += z;
            sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 0.02);
    }
}
