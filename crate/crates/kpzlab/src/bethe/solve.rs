use super::transform::{step_spectral, transform_inverse, SpectralFunction};
use super::{BetheError, OrderedState};
use crate::processes::{mean_var_se, par_replicas, simulate_qtasep};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Solution of the zero-range evolution equation df/dt = Hf from spectral
/// initial data G = F f_0:
///
///   f(t, n) = J( e^{t (q-1)(z_1 + ... + z_k)} G )(n).
pub fn solve_qboson(
    f0_spectral: &SpectralFunction,
    t: f64,
    state: &OrderedState,
    q: f64,
    nodes: usize,
) -> Result<Complex64, BetheError> {
    let g = f0_spectral.clone();
    let evolved = SpectralFunction::new(g.k, g.laurent, move |z| {
        let s: Complex64 = z.iter().sum();
        (s * (q - 1.0) * t).exp() * g.eval(z)
    });
    transform_inverse(&evolved, state, q, nodes)
}

/// Backward-equation oracle on a truncated window: the generator matrix over
/// ordered states with all coordinates in [lo, hi] is exponentiated by
/// uniformization; the escape mass through the bottom is bounded by the
/// Poisson tail of the total jump rate and stays far below the tolerance at
/// the regression times.
pub fn qboson_window_oracle(
    f0: impl Fn(&OrderedState) -> f64,
    t: f64,
    start: &OrderedState,
    q: f64,
    lo: i64,
    hi: i64,
) -> Result<f64, BetheError> {
    let k = start.k();
    if k > 3 {
        return Err(BetheError::Domain("window oracle supports k <= 3".into()));
    }
    // enumerate ordered states in the box
    let mut states: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; k];
    enumerate(&mut states, &mut cur, 0, lo, hi);
    let index: HashMap<Vec<i64>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let dim = states.len();
    // generator rows: transitions out of each state
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(dim);
    let mut diag = vec![0.0f64; dim];
    for (i, n) in states.iter().enumerate() {
        let st = OrderedState { n: n.clone() };
        let mut row = Vec::new();
        for (ci, &c) in st.clusters().iter().enumerate() {
            let rate = 1.0 - q.powi(c as i32);
            let dest = st.decrement_cluster(ci);
            diag[i] -= rate;
            if let Some(&j) = index.get(&dest.n) {
                row.push((j, rate));
            } // otherwise mass exits the window; kept in the diagonal
        }
        rows.push(row);
    }
    // uniformization of the backward equation f(t) = e^{tH} f0
    let lambda = diag.iter().fold(0.0f64, |m, &d| m.max(-d)) + 1e-9;
    let mut term: Vec<f64> = states
        .iter()
        .map(|n| f0(&OrderedState { n: n.clone() }))
        .collect();
    let mut acc = vec![0.0f64; dim];
    let mut w = (-lambda * t).exp();
    for (a, b) in acc.iter_mut().zip(&term) {
        *a += w * b;
    }
    let steps = (lambda * t + 40.0 * ((lambda * t).sqrt() + 1.0)) as usize + 20;
    for step in 1..=steps {
        // term <- (I + H/lambda) term
        let mut next = vec![0.0f64; dim];
        for i in 0..dim {
            let mut v = term[i] * (1.0 + diag[i] / lambda);
            for &(j, rate) in &rows[i] {
                v += rate / lambda * term[j];
            }
            next[i] = v;
        }
        term = next;
        w *= lambda * t / step as f64;
        for (a, b) in acc.iter_mut().zip(&term) {
            *a += w * b;
        }
        if w < 1e-16 && (step as f64) > lambda * t {
            break;
        }
    }
    let i0 = index
        .get(&start.n)
        .ok_or_else(|| BetheError::Domain("start state outside window".into()))?;
    Ok(acc[*i0])
}

/// Verdict record for the duality check.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub k: usize,
    pub n: Vec<i64>,
    pub t: f64,
    pub q: f64,
    pub replicas: u64,
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub solver_value: f64,
    pub pass: bool,
}

/// Markov duality: the q-TASEP observable E[prod_j q^{x_{n_j}(t) + n_j}]
/// from step data solves the zero-range backward equation with indicator
/// initial data. The Monte Carlo estimate of the left side is compared with
/// the spectral solution of the right side at three combined standard
/// errors.
pub fn check_duality(
    state: &OrderedState,
    t: f64,
    q: f64,
    replicas: u64,
    master: u64,
) -> Result<DualityReport, BetheError> {
    let k = state.k();
    if state.n[k - 1] < 1 {
        return Err(BetheError::Domain(
            "duality check needs n_j >= 1 (step data)".into(),
        ));
    }
    let n_particles = state.n[0] as usize;
    let ns = state.n.clone();
    let xs = par_replicas(master, replicas, |seed| {
        let cfg = simulate_qtasep(q, &[], n_particles, t, seed).unwrap();
        let mut v = 1.0;
        for &nj in &ns {
            v *= q.powi((cfg.positions[(nj - 1) as usize] + nj) as i32);
        }
        v
    });
    let (mc_mean, _, mc_se) = mean_var_se(&xs);
    let solver = solve_qboson(&step_spectral(k, q), t, state, q, 192)?;
    let sigma = 3.0 * mc_se + 1e-9;
    Ok(DualityReport {
        k,
        n: state.n.clone(),
        t,
        q,
        replicas,
        mc_mean,
        mc_std_error: mc_se,
        solver_value: solver.re,
        pass: (mc_mean - solver.re).abs() <= sigma,
    })
}

fn enumerate(states: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, d: usize, lo: i64, hi: i64) {
    let k = cur.len();
    if d == k {
        states.push(cur.clone());
        return;
    }
    let upper = if d == 0 { hi } else { cur[d - 1] };
    let mut v = lo;
    while v <= upper {
        cur[d] = v;
        enumerate(states, cur, d + 1, lo, hi);
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_zero_returns_initial_data() {
        let q = 0.5;
        let g = step_spectral(2, q);
        for (n, want) in [(vec![2i64, 1], 1.0), (vec![1, 0], 0.0)] {
            let st = OrderedState::new(n).unwrap();
            let v = solve_qboson(&g, 0.0, &st, q, 192).unwrap();
            assert!((v - c64(want)).norm() < 1e-9);
        }
    }

    #[test]
    fn step_k1_matches_poisson_transform() {
        let (q, t) = (0.5, 1.0);
        let st = OrderedState::new(vec![1]).unwrap();
        let v = solve_qboson(&step_spectral(1, q), t, &st, q, 128).unwrap();
        let want = (-(1.0 - q) * t).exp();
        assert!((v - c64(want)).norm() < 1e-10, "{v} vs {want}");
    }

    #[test]
    fn solver_matches_window_oracle_k2() {
        let (q, t) = (0.5, 1.0);
        let st = OrderedState::new(vec![2, 1]).unwrap();
        let spectral = solve_qboson(&step_spectral(2, q), t, &st, q, 192)
            .unwrap()
            .re;
        let oracle = qboson_window_oracle(
            |s| if s.n.iter().all(|&x| x >= 1) { 1.0 } else { 0.0 },
            t,
            &st,
            q,
            -20,
            20,
        )
        .unwrap();
        assert!(
            (spectral - oracle).abs() < 1e-6 * oracle.max(1e-12),
            "spectral {spectral} vs oracle {oracle}"
        );
    }

    #[test]
    fn solver_stays_in_unit_interval_for_step_data() {
        let q = 0.4;
        for t in [0.3, 1.0, 2.5] {
            let st = OrderedState::new(vec![2, 1]).unwrap();
            let v = solve_qboson(&step_spectral(2, q), t, &st, q, 192).unwrap();
            assert!(v.im.abs() < 1e-9);
            assert!(v.re > 0.0 && v.re <= 1.0 + 1e-9, "t={t}: {v}");
        }
    }

    #[test]
    fn duality_t_zero_is_exactly_one() {
        let st = OrderedState::new(vec![2, 1]).unwrap();
        let rep = check_duality(&st, 0.0, 0.5, 1000, 7).unwrap();
        assert!(rep.pass);
        assert!((rep.mc_mean - 1.0).abs() < 1e-12);
        assert!((rep.solver_value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn duality_k1_closed_form_both_sides() {
        let (q, t) = (0.5, 1.0);
        let st = OrderedState::new(vec![1]).unwrap();
        let rep = check_duality(&st, t, q, 50_000, 99).unwrap();
        assert!(rep.pass, "{rep:?}");
        let want = (-(1.0 - q) * t).exp();
        assert!((rep.solver_value - want).abs() < 1e-9);
    }

    #[test]
    fn duality_k2_passes() {
        let st = OrderedState::new(vec![2, 1]).unwrap();
        let rep = check_duality(&st, 1.0, 0.5, 100_000, 4711).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}
