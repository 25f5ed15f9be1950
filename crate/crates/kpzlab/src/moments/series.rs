use super::{qtasep_moment_residue, MomentError, MomentQuery};
use crate::macdonald::expectation_homogeneous;
use crate::numerics::{q_pochhammer, q_pochhammer_inf};
use num_complex::Complex64;

/// Truncated e_q-Laplace generating series for q-TASEP,
///
///   sum_{k=0}^{kmax} E[q^{k (x_n(t) + n)}] zeta^k / (q; q)_k,
///
/// together with a certified bound on the discarded tail (every moment lies
/// in (0, 1], so the tail is dominated by sum_{k > kmax} |zeta|^k/(q;q)_k).
/// Moments come from the residue oracle for k <= 4, tensor quadrature at
/// k = 5, and the difference-operator route beyond.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub kmax: usize,
}

pub fn eq_laplace_series(
    zeta: Complex64,
    n: i64,
    t: f64,
    q: f64,
    kmax: usize,
) -> Result<SeriesValue, MomentError> {
    if !(0.0..1.0).contains(&q) {
        return Err(MomentError::Domain(format!("q in [0,1), got {q}")));
    }
    if n < 1 || t < 0.0 {
        return Err(MomentError::Domain("need n >= 1, t >= 0".into()));
    }
    let r = zeta.norm();
    if r >= 1.0 {
        return Err(MomentError::Convergence { bound: f64::INFINITY });
    }
    // (q;q)_k >= (q;q)_inf, so the tail is below r^{kmax+1}/((q;q)_inf (1-r))
    let qq_inf = q_pochhammer_inf(Complex64::new(q, 0.0), q)?.re;
    let tail_bound = r.powi(kmax as i32 + 1) / (qq_inf * (1.0 - r));
    if !tail_bound.is_finite() {
        return Err(MomentError::Convergence { bound: tail_bound });
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..=kmax {
        zk *= zeta;
        if zk.norm() == 0.0 {
            break;
        }
        let moment = homogeneous_moment(k, n, t, q)?;
        let weight = q_pochhammer(Complex64::new(q, 0.0), q, k).re;
        value += moment * zk / weight;
    }
    Ok(SeriesValue {
        value,
        tail_bound,
        kmax,
    })
}

fn homogeneous_moment(k: usize, n: i64, t: f64, q: f64) -> Result<Complex64, MomentError> {
    let ns = vec![n; k];
    if k <= 4 {
        qtasep_moment_residue(&MomentQuery::qtasep(k, ns, t, q))
    } else {
        // beyond the residue budget the difference-operator route is both
        // cheaper and tighter than a k-fold tensor grid
        expectation_homogeneous(k, &ns, t, q)
            .map_err(|e| MomentError::Domain(format!("operator moment failed: {e}")))
    }
}
