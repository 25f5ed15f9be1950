use super::{EnsembleResult, ProcessError};
use crate::processes::par_replicas;
use crate::rng::SeedSpec;
use serde::{Deserialize, Serialize};

/// One trajectory of the semi-discrete stochastic heat equation
/// dz(tau, n) = [z(tau, n-1) - z(tau, n)] dtau + z(tau, n) dB_n, started from
/// the fundamental data z(0, n) = 1_{n=1}. The free energies are read off as
/// F_n = (3/2) tau + log z(tau, n).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OySample {
    pub tau: f64,
    pub z: Vec<f64>,
    pub f: Vec<f64>,
}

/// Euler-Maruyama integration of the z-system (weak order 1). The drift only
/// couples neighbor levels, the noise is diagonal multiplicative.
pub fn simulate_oy_sde(
    n: usize,
    tau: f64,
    dt: f64,
    seed: SeedSpec,
) -> Result<OySample, ProcessError> {
    if n == 0 || tau <= 0.0 {
        return Err(ProcessError::Domain("need n >= 1 and tau > 0".into()));
    }
    if dt <= 0.0 || dt > tau / 100.0 {
        return Err(ProcessError::StepSize { dt, tau });
    }
    let mut stream = seed.stream();
    let mut z = vec![0.0f64; n + 1]; // z[0] is the absorbing boundary, always 0
    z[1] = 1.0;
    let steps = (tau / dt).ceil() as u64;
    let mut t = 0.0;
    for _ in 0..steps {
        let h = (tau - t).min(dt);
        if h <= 0.0 {
            break;
        }
        let sqrt_h = h.sqrt();
        let mut left = z[0];
        for j in 1..=n {
            let old = z[j];
            z[j] += (left - old) * h + old * sqrt_h * stream.normal();
            left = old;
        }
        t += h;
    }
    let f = z
        .iter()
        .skip(1)
        .map(|&zj| 1.5 * tau + zj.max(f64::MIN_POSITIVE).ln())
        .collect();
    Ok(OySample {
        tau,
        z: z[1..].to_vec(),
        f,
    })
}

/// Direct Monte Carlo of the path-integral form: z(tau, n) =
/// e^{-(3/2) tau} * tau^{n-1}/(n-1)! * mean over uniform simplex points of
/// e^{B_1(0,s_1) + ... + B_n(s_{n-1}, tau)}. One replica = one Brownian
/// environment sampled exactly at the simplex times (no time discretization).
pub fn simulate_oy_simplex(
    n: usize,
    tau: f64,
    replicas: u64,
    master: u64,
) -> Result<EnsembleResult, ProcessError> {
    if n == 0 || tau <= 0.0 {
        return Err(ProcessError::Domain("need n >= 1 and tau > 0".into()));
    }
    let xs = par_replicas(master, replicas, |seed| oy_simplex_replica(n, tau, seed));
    let params = serde_json::json!({"model": "oy_simplex", "n": n, "tau": tau});
    Ok(EnsembleResult::single(
        "z", &xs, simplex_bin_width(&xs), master, params,
    ))
}

fn simplex_bin_width(xs: &[f64]) -> f64 {
    let max = xs.iter().cloned().fold(f64::MIN, f64::max);
    let min = xs.iter().cloned().fold(f64::MAX, f64::min);
    ((max - min) / 64.0).max(1e-12)
}

/// Single unbiased replica of z(tau, n).
pub fn oy_simplex_replica(n: usize, tau: f64, seed: SeedSpec) -> f64 {
    let mut stream = seed.stream();
    // n-1 ordered uniform jump times
    let mut s: Vec<f64> = (0..n - 1).map(|_| stream.uniform() * tau).collect();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // independent Brownian increments over each coordinate's interval
    let mut expo = 0.0;
    let mut prev = 0.0;
    for i in 0..n {
        let end = if i == n - 1 { tau } else { s[i] };
        let len = end - prev;
        if len > 0.0 {
            expo += len.sqrt() * stream.normal();
        }
        prev = end;
    }
    let log_simplex_volume: f64 = (1..n).map(|j| (tau / j as f64).ln()).sum();
    (-(1.5) * tau + expo + log_simplex_volume).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::mean_var_se;

    // E z(tau, n) = e^{-tau} tau^{n-1}/(n-1)! follows from the moment ODE
    // d/dtau E z(n) = E z(n-1) - E z(n).
    fn exact_mean(n: usize, tau: f64) -> f64 {
        let mut lognum = -tau;
        for j in 1..n {
            lognum += (tau / j as f64).ln();
        }
        lognum.exp()
    }

    #[test]
    fn simplex_estimator_positive_and_unbiased_level1() {
        let tau = 1.0;
        let res = simulate_oy_simplex(1, tau, 100_000, 314).unwrap();
        let obs = &res.observables["z"];
        assert!((obs.mean - exact_mean(1, tau)).abs() < 3.0 * obs.std_error);
        assert_eq!(obs.histogram.mass(), 100_000);
        // positivity: the lowest populated bin sits at positive values
        let min_bin = *obs.histogram.counts.keys().next().unwrap();
        assert!(obs.histogram.origin + min_bin as f64 * obs.histogram.bin_width >= 0.0);
    }

    #[test]
    fn simplex_estimator_unbiased_level3() {
        let tau = 2.0;
        let res = simulate_oy_simplex(3, tau, 200_000, 217).unwrap();
        let obs = &res.observables["z"];
        let want = exact_mean(3, tau);
        assert!(
            (obs.mean - want).abs() < 3.0 * obs.std_error,
            "{} vs {want} (se {})",
            obs.mean,
            obs.std_error
        );
    }

    #[test]
    fn sde_mean_matches_exact_level1_and_2() {
        let tau = 1.0;
        let n = 100_000u64;
        let z1 = par_replicas(11, n, |seed| {
            simulate_oy_sde(1, tau, 1e-3, seed).unwrap().z[0]
        });
        let (m1, _, s1) = mean_var_se(&z1);
        assert!((m1 - exact_mean(1, tau)).abs() < 3.0 * s1, "{m1} vs {}", exact_mean(1, tau));

        let z2 = par_replicas(12, n, |seed| {
            simulate_oy_sde(2, tau, 1e-3, seed).unwrap().z[1]
        });
        let (m2, _, s2) = mean_var_se(&z2);
        assert!((m2 - exact_mean(2, tau)).abs() < 3.0 * s2, "{m2} vs {}", exact_mean(2, tau));
    }

    #[test]
    fn dt_halving_shifts_less_than_one_se() {
        let tau = 1.0;
        let n = 40_000u64;
        let coarse = par_replicas(21, n, |seed| {
            simulate_oy_sde(2, tau, 2e-3, seed).unwrap().z[1]
        });
        let fine = par_replicas(21, n, |seed| {
            simulate_oy_sde(2, tau, 1e-3, seed).unwrap().z[1]
        });
        let (mc, _, sc) = mean_var_se(&coarse);
        let (mf, _, sf) = mean_var_se(&fine);
        assert!((mc - mf).abs() < (sc * sc + sf * sf).sqrt());
    }

    #[test]
    fn sde_and_simplex_estimators_agree() {
        let tau = 1.0;
        let n = 100_000u64;
        let sde = par_replicas(31, n, |seed| {
            simulate_oy_sde(2, tau, 1e-3, seed).unwrap().z[1]
        });
        let (m_sde, _, s_sde) = mean_var_se(&sde);
        let res = simulate_oy_simplex(2, tau, n, 32).unwrap();
        let obs = &res.observables["z"];
        let s = (s_sde * s_sde + obs.std_error * obs.std_error).sqrt();
        assert!((m_sde - obs.mean).abs() < 3.0 * s);
    }

    #[test]
    fn step_size_guard() {
        assert!(matches!(
            simulate_oy_sde(2, 1.0, 0.5, SeedSpec::new(1, 0)),
            Err(ProcessError::StepSize { .. })
        ));
    }
}
