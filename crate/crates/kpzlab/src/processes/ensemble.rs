use crate::rng::SeedSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Run `f` for replicas 0..n of the given master seed, in parallel, and
/// return results in replica order. The output is a pure function of
/// (master, n, f): work is chunked by index and stitched back in order, so
/// thread count and scheduling never change the result.
pub fn par_replicas<T, F>(master: u64, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(SeedSpec) -> T + Sync,
{
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(n.max(1) as usize);
    if threads <= 1 || n < 64 {
        return (0..n).map(|r| f(SeedSpec::new(master, r))).collect();
    }
    let chunk = n.div_ceil(threads as u64);
    let mut out: Vec<Vec<T>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..threads as u64 {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(n);
            let f = &f;
            handles.push(scope.spawn(move || {
                (lo..hi).map(|r| f(SeedSpec::new(master, r))).collect::<Vec<T>>()
            }));
        }
        for h in handles {
            out.push(h.join().expect("replica worker panicked"));
        }
    });
    out.into_iter().flatten().collect()
}

/// Sample mean, population variance, and standard error of the mean.
pub fn mean_var_se(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var, (var / n).sqrt())
}

/// Fixed-width binned counts; total mass equals the replica count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Histogram {
    pub origin: f64,
    pub bin_width: f64,
    pub counts: BTreeMap<i64, u64>,
}

impl Histogram {
    pub fn build(xs: &[f64], bin_width: f64) -> Self {
        let origin = 0.0;
        let mut counts = BTreeMap::new();
        for &x in xs {
            let b = ((x - origin) / bin_width).floor() as i64;
            *counts.entry(b).or_insert(0) += 1;
        }
        Histogram {
            origin,
            bin_width,
            counts,
        }
    }

    pub fn mass(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Mean/variance/histogram of one named observable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObservableSummary {
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    pub histogram: Histogram,
}

impl ObservableSummary {
    pub fn from_samples(xs: &[f64], bin_width: f64) -> Self {
        let (mean, variance, std_error) = mean_var_se(xs);
        ObservableSummary {
            mean,
            variance,
            std_error,
            histogram: Histogram::build(xs, bin_width),
        }
    }
}

/// Aggregated ensemble output: replica count, per-observable statistics,
/// the master seed, and an echo of the query parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub replicas: u64,
    pub observables: BTreeMap<String, ObservableSummary>,
    pub seed: SeedSpec,
    pub params: serde_json::Value,
}

impl EnsembleResult {
    pub fn single(
        name: &str,
        xs: &[f64],
        bin_width: f64,
        master: u64,
        params: serde_json::Value,
    ) -> Self {
        let mut observables = BTreeMap::new();
        observables.insert(name.to_string(), ObservableSummary::from_samples(xs, bin_width));
        EnsembleResult {
            replicas: xs.len() as u64,
            observables,
            seed: SeedSpec::new(master, 0),
            params,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_serial() {
        let serial: Vec<u64> = (0..500)
            .map(|r| SeedSpec::new(7, r).stream().next_u64())
            .collect();
        let parallel = par_replicas(7, 500, |seed| seed.stream().next_u64());
        assert_eq!(serial, parallel);
    }

    #[test]
    fn histogram_mass_is_replica_count() {
        let xs: Vec<f64> = (0..1000).map(|i| (i % 17) as f64).collect();
        let h = Histogram::build(&xs, 1.0);
        assert_eq!(h.mass(), 1000);
    }

    #[test]
    fn variance_nonnegative() {
        let (_, v, _) = mean_var_se(&[1.0, 1.0, 1.0]);
        assert!(v >= 0.0 && v < 1e-30);
    }
}
