use super::{ModelKind, ParticleConfig, ProcessError};
use crate::rng::SeedSpec;
use std::collections::BTreeMap;

/// Totally asymmetric zero-range process: the top particle at a site with y
/// particles jumps one site left at rate 1 - q^y. Exact Gillespie over the
/// occupied sites (particle count is conserved, so there are finitely many).
pub fn simulate_qboson(
    q: f64,
    y0: &BTreeMap<i64, u32>,
    t: f64,
    seed: SeedSpec,
) -> Result<ParticleConfig, ProcessError> {
    if !(0.0..1.0).contains(&q) {
        return Err(ProcessError::Domain(format!("q must be in [0,1), got {q}")));
    }
    if t < 0.0 {
        return Err(ProcessError::Domain("t must be nonnegative".into()));
    }
    let mut occ: BTreeMap<i64, u32> = y0
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&s, &c)| (s, c))
        .collect();
    let total_particles: u64 = occ.values().map(|&c| c as u64).sum();
    let site_rate = |y: u32| -> f64 {
        if y == 0 {
            0.0
        } else if q == 0.0 {
            1.0
        } else {
            1.0 - q.powi(y as i32)
        }
    };
    let mut stream = seed.stream();
    let mut time = 0.0;
    loop {
        // linear Gillespie over occupied sites; the site set stays tiny
        let total: f64 = occ.values().map(|&y| site_rate(y)).sum();
        if total <= 0.0 {
            break;
        }
        let dt = stream.exponential(total);
        if time + dt > t {
            break;
        }
        time += dt;
        let mut x = stream.uniform() * total;
        let mut chosen = None;
        for (&site, &y) in occ.iter() {
            let r = site_rate(y);
            if x < r {
                chosen = Some(site);
                break;
            }
            x -= r;
        }
        let site = chosen.unwrap_or_else(|| *occ.keys().next_back().unwrap());
        // move one particle site -> site - 1
        let y = occ.get_mut(&site).unwrap();
        *y -= 1;
        let emptied = *y == 0;
        if emptied {
            occ.remove(&site);
        }
        *occ.entry(site - 1).or_insert(0) += 1;
        debug_assert_eq!(
            occ.values().map(|&c| c as u64).sum::<u64>(),
            total_particles,
            "particle count not conserved"
        );
    }
    Ok(ParticleConfig {
        model: ModelKind::QBoson,
        positions: Vec::new(),
        occupations: occ,
        time: t,
        coverage_min_site: i64::MIN,
        truncation_bound: 0.0,
    })
}
