use super::{Event, ModelKind, ParticleConfig, ProcessError, RateIndex};
use crate::rng::{SeedSpec, Stream};
use std::collections::BTreeMap;

/// Particle count sufficient to make every site query at or right of `y_min`
/// exact with probability >= 1 - 1e-9 for totally asymmetric chains started
/// from step data. The untracked particle M+1 would need a Poisson(t) clock
/// to carry it from -(M+1) past y_min; M = ceil(t + 8 sqrt(t+1)) + |y_min|
/// bounds that tail below 1e-9.
pub fn tasep_particles_needed(t: f64, y_min: i64) -> usize {
    let base = (t + 8.0 * (t + 1.0).sqrt()).ceil() as i64 + 1;
    (base + y_min.unsigned_abs() as i64).max(1) as usize
}

fn jump_rate(q: f64, a: f64, gap: i64) -> f64 {
    debug_assert!(gap >= 0);
    if gap == 0 {
        0.0
    } else if q == 0.0 {
        a
    } else {
        a * (1.0 - q.powi(gap as i32))
    }
}

struct QtasepSim {
    pos: Vec<i64>,
    q: f64,
    a: Vec<f64>,
    rates: RateIndex,
    t: f64,
}

impl QtasepSim {
    fn new(q: f64, a: &[f64], n: usize) -> Self {
        let pos: Vec<i64> = (1..=n as i64).map(|i| -i).collect();
        let a: Vec<f64> = (0..n).map(|i| a.get(i).copied().unwrap_or(1.0)).collect();
        let mut rates = vec![0.0; n];
        // step data: every gap is 0 except the leader's (infinite)
        rates[0] = a[0];
        let sim = QtasepSim {
            pos,
            q,
            a,
            rates: RateIndex::new(rates),
            t: 0.0,
        };
        sim
    }

    fn gap(&self, i: usize) -> i64 {
        if i == 0 {
            i64::MAX
        } else {
            self.pos[i - 1] - self.pos[i] - 1
        }
    }

    fn rate_of(&self, i: usize) -> f64 {
        if i == 0 {
            self.a[0]
        } else {
            jump_rate(self.q, self.a[i], self.gap(i))
        }
    }

    fn run(&mut self, t_end: f64, stream: &mut Stream, mut sink: Option<&mut Vec<Event>>) {
        loop {
            let total = self.rates.total();
            if total <= 0.0 {
                self.t = t_end;
                return;
            }
            let dt = stream.exponential(total);
            if self.t + dt > t_end {
                self.t = t_end;
                return;
            }
            self.t += dt;
            let i = self.rates.sample(stream.uniform() * total);
            self.pos[i] += 1;
            debug_assert!(i == 0 || self.pos[i] < self.pos[i - 1], "exclusion violated");
            self.rates.set(i, self.rate_of(i));
            if i + 1 < self.pos.len() {
                self.rates.set(i + 1, self.rate_of(i + 1));
            }
            if let Some(events) = sink.as_deref_mut() {
                events.push(Event {
                    t: self.t,
                    model: if self.q == 0.0 {
                        ModelKind::Tasep
                    } else {
                        ModelKind::QTasep
                    },
                    subject: (i + 1) as i64,
                    delta: 1,
                });
            }
        }
    }

    fn into_config(self, model: ModelKind) -> ParticleConfig {
        let coverage_min_site = *self.pos.last().unwrap_or(&0);
        ParticleConfig {
            model,
            positions: self.pos,
            occupations: BTreeMap::new(),
            time: self.t,
            coverage_min_site,
            truncation_bound: 1e-9,
        }
    }
}

/// q-TASEP from step data x_n(0) = -n: particle i jumps right at rate
/// a_i (1 - q^{gap}). Rates supplied in `a` broadcast to 1 beyond its length.
pub fn simulate_qtasep(
    q: f64,
    a: &[f64],
    n_particles: usize,
    t: f64,
    seed: SeedSpec,
) -> Result<ParticleConfig, ProcessError> {
    simulate_qtasep_impl(q, a, n_particles, t, seed, None)
}

/// Same as [`simulate_qtasep`] but records every event.
pub fn simulate_qtasep_traced(
    q: f64,
    a: &[f64],
    n_particles: usize,
    t: f64,
    seed: SeedSpec,
) -> Result<(ParticleConfig, Vec<Event>), ProcessError> {
    let mut events = Vec::new();
    let cfg = simulate_qtasep_impl(q, a, n_particles, t, seed, Some(&mut events))?;
    Ok((cfg, events))
}

fn simulate_qtasep_impl(
    q: f64,
    a: &[f64],
    n_particles: usize,
    t: f64,
    seed: SeedSpec,
    sink: Option<&mut Vec<Event>>,
) -> Result<ParticleConfig, ProcessError> {
    if !(0.0..1.0).contains(&q) {
        return Err(ProcessError::Domain(format!("q must be in [0,1), got {q}")));
    }
    if a.iter().any(|&x| x <= 0.0) {
        return Err(ProcessError::Domain("rates a_m must be positive".into()));
    }
    if t < 0.0 || n_particles == 0 {
        return Err(ProcessError::Domain("need t >= 0 and n_particles >= 1".into()));
    }
    let mut stream = seed.stream();
    let mut sim = QtasepSim::new(q, a, n_particles);
    sim.run(t, &mut stream, sink);
    let model = if q == 0.0 && a.iter().all(|&x| x == 1.0) {
        ModelKind::Tasep
    } else {
        ModelKind::QTasep
    };
    Ok(sim.into_config(model))
}

/// TASEP from step data: rate-one right jumps under exclusion.
pub fn simulate_tasep(
    n_particles: usize,
    t: f64,
    seed: SeedSpec,
) -> Result<ParticleConfig, ProcessError> {
    simulate_qtasep(0.0, &[], n_particles, t, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::{mean_var_se, par_replicas};

    #[test]
    fn step_data_height_is_wedge() {
        let cfg = simulate_tasep(30, 0.0, SeedSpec::new(1, 0)).unwrap();
        for x in -20..=20 {
            assert_eq!(cfg.height(x).unwrap(), x.abs());
        }
    }

    #[test]
    fn leader_is_poisson() {
        // x_1(t) + 1 is Poisson(t): mean of x_1(1) over many replicas = -1 + t
        let t = 1.0;
        let n = 50_000u64;
        let xs = par_replicas(77, n, |seed| {
            simulate_tasep(3, t, seed).unwrap().positions[0] as f64
        });
        let (mean, _, se) = mean_var_se(&xs);
        assert!(
            (mean - (t - 1.0)).abs() < 3.0 * se,
            "mean {mean} vs {} (se {se})",
            t - 1.0
        );
    }

    #[test]
    fn exclusion_order_held_and_heights_step_by_one() {
        let cfg = simulate_tasep(40, 5.0, SeedSpec::new(3, 9)).unwrap();
        for w in cfg.positions.windows(2) {
            assert!(w[0] > w[1]);
        }
        let mut prev = cfg.height(-30).unwrap();
        for x in -29..=30 {
            let h = cfg.height(x).unwrap();
            assert!((h - prev).abs() == 1);
            // growth only: h(t,x) >= |x|
            assert!(h >= x.abs());
            prev = h;
        }
    }

    #[test]
    fn qtasep_zero_gap_never_violates_order() {
        let cfg = simulate_qtasep(0.7, &[], 25, 3.0, SeedSpec::new(5, 1)).unwrap();
        for w in cfg.positions.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn q_zero_couples_to_tasep() {
        // identical event stream => identical trajectory, not just law
        let seed = SeedSpec::new(123, 4);
        let a = simulate_tasep(12, 2.5, seed).unwrap();
        let b = simulate_qtasep(0.0, &[1.0; 12], 12, 2.5, seed).unwrap();
        assert_eq!(a.positions, b.positions);
    }

    #[test]
    fn first_moment_matches_poisson_transform() {
        // E q^{x_1(t)+1} = e^{-(1-q)t} for the leading particle
        let (q, t) = (0.5, 1.0);
        let n = 100_000u64;
        let xs = par_replicas(2024, n, |seed| {
            let cfg = simulate_qtasep(q, &[], 2, t, seed).unwrap();
            q.powi((cfg.positions[0] + 1) as i32)
        });
        let (mean, _, se) = mean_var_se(&xs);
        let want = (-(1.0 - q) * t).exp();
        assert!((mean - want).abs() < 3.0 * se, "{mean} vs {want} (se {se})");
    }

    #[test]
    fn light_cone_error_outside_window() {
        let cfg = simulate_tasep(5, 1.0, SeedSpec::new(9, 0)).unwrap();
        assert!(matches!(
            cfg.height(-100),
            Err(ProcessError::LightCone { .. })
        ));
        assert!(cfg.height(3).is_ok());
    }

    #[test]
    fn particles_needed_covers_tail() {
        assert!(tasep_particles_needed(1.0, 0) >= 12);
        assert!(tasep_particles_needed(2000.0, 0) >= 2350);
    }
}
