use super::{ModelKind, ParticleConfig, ProcessError, RateIndex};
use crate::rng::SeedSpec;
use std::collections::BTreeMap;

/// Particle count for ASEP from step data so that every observable on sites
/// >= y_min is exact with probability >= 1 - 1e-9.
///
/// Two tails are bounded: (i) particles that could reach y_min (a
/// Poisson(q t) displacement from -m), and (ii) the influence of truncating
/// particle M+1, which propagates up the index chain through adjacent-pair
/// interactions at rate < 1, i.e. at most Poisson(t) indices in time t.
pub fn asep_particles_needed(q_rate: f64, t: f64, y_min: i64) -> usize {
    let reach = (q_rate * t + 8.0 * (t + 1.0).sqrt()).ceil() as i64 + 1 + (-y_min).max(0);
    let buffer = (t + 9.0 * (t + 1.0).sqrt()).ceil() as i64 + 8;
    (reach + buffer).max(2) as usize
}

/// ASEP from step data x_i(0) = -i: each particle jumps left at rate p and
/// right at rate q_rate = 1 - p, suppressed when the destination is occupied.
/// Enough particles are simulated that N_y(t) for y >= y_min is exact up to
/// the recorded light-cone bound.
pub fn simulate_asep(
    p: f64,
    q_rate: f64,
    t: f64,
    seed: SeedSpec,
    y_min: i64,
) -> Result<ParticleConfig, ProcessError> {
    if !(0.0 < p && p < q_rate && q_rate < 1.0) || (p + q_rate - 1.0).abs() > 1e-12 {
        return Err(ProcessError::Domain(format!(
            "need 0 < p < q < 1 with p + q = 1, got p = {p}, q = {q_rate}"
        )));
    }
    if t < 0.0 {
        return Err(ProcessError::Domain("t must be nonnegative".into()));
    }
    let m = asep_particles_needed(q_rate, t, y_min);
    let mut pos: Vec<i64> = (1..=m as i64).map(|i| -i).collect();

    // clock 2i: particle i jumps right; clock 2i+1: jumps left
    let gap_up = |pos: &Vec<i64>, i: usize| -> i64 {
        if i == 0 {
            i64::MAX
        } else {
            pos[i - 1] - pos[i] - 1
        }
    };
    let gap_down = |pos: &Vec<i64>, i: usize| -> i64 {
        if i + 1 == pos.len() {
            i64::MAX // truncation: tracked tail is free; covered by the buffer
        } else {
            pos[i] - pos[i + 1] - 1
        }
    };
    let mut rates = vec![0.0; 2 * m];
    for i in 0..m {
        rates[2 * i] = if gap_up(&pos, i) > 0 { q_rate } else { 0.0 };
        rates[2 * i + 1] = if gap_down(&pos, i) > 0 { p } else { 0.0 };
    }
    let mut idx = RateIndex::new(rates);
    let mut stream = seed.stream();
    let mut time = 0.0;
    loop {
        let total = idx.total();
        if total <= 0.0 {
            break;
        }
        let dt = stream.exponential(total);
        if time + dt > t {
            break;
        }
        time += dt;
        let c = idx.sample(stream.uniform() * total);
        let (i, dir) = (c / 2, if c % 2 == 0 { 1i64 } else { -1i64 });
        pos[i] += dir;
        debug_assert!(i == 0 || pos[i] < pos[i - 1], "exclusion violated (up)");
        debug_assert!(i + 1 == pos.len() || pos[i] > pos[i + 1], "exclusion violated (down)");
        // rates of i and both neighbors may have changed
        for j in [i.wrapping_sub(1), i, i + 1] {
            if j < m {
                idx.set(2 * j, if gap_up(&pos, j) > 0 { q_rate } else { 0.0 });
                idx.set(2 * j + 1, if gap_down(&pos, j) > 0 { p } else { 0.0 });
            }
        }
    }
    Ok(ParticleConfig {
        model: ModelKind::Asep,
        positions: pos,
        occupations: BTreeMap::new(),
        time: t,
        coverage_min_site: y_min,
        truncation_bound: 1e-9,
    })
}
