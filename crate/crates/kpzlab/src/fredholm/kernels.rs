use super::FredholmError;
use crate::numerics::{gauss_legendre_on, q_pochhammer, q_pochhammer_inf};
use num_complex::Complex64;
use std::f64::consts::PI;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Radius for the circle C_1 around 1 carrying the q-TASEP determinant: kept
/// small enough that the poles of the Mellin-Barnes denominator q^s w - w'
/// stay a fixed distance from the integration line Re s = 1/2 for every node
/// pair (|log|w'/w|| <= 0.3 |log q|).
pub fn qtasep_c1_radius(q: f64) -> f64 {
    let g = (0.3 * q.ln().abs()).exp();
    0.8 * (g - 1.0) / (g + 1.0)
}

/// Series form of the q-TASEP kernel,
///
///   K_zeta(w, w') = sum_{m >= 1} zeta^m e^{-(1 - q^m) t w}
///                   / ( (w; q)_m^n (q^m w - w') ),
///
/// the residue expansion of the Mellin-Barnes form over the poles at
/// s = 1, 2, 3, ...; the generating-series identity holds with exactly this
/// normalization (the m-th term carries f(w) f(qw) ... f(q^{m-1} w) with
/// f(v) = zeta e^{(q-1) t v} (1 - v)^{-n} evaluated along the geometric
/// string).
pub fn kernel_qtasep_series(
    w: Complex64,
    wp: Complex64,
    zeta: Complex64,
    n: i64,
    t: f64,
    q: f64,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let mut zm = Complex64::new(1.0, 0.0);
    let mut qm = 1.0;
    for _m in 1..200 {
        zm *= zeta;
        qm *= q;
        let poch = q_pochhammer(w, q, _m as usize);
        let term = zm * ((qm - 1.0) * t * w).exp() / (cpow(poch, n) * (qm * w - wp));
        total += term;
        if term.norm() < 1e-18 * (1.0 + total.norm()) {
            break;
        }
    }
    total
}

fn cpow(z: Complex64, n: i64) -> Complex64 {
    if n >= 0 {
        z.powu(n as u32)
    } else {
        z.powu((-n) as u32).inv()
    }
}

/// Mellin-Barnes form of the same kernel,
///
///   K_zeta(w, w') = (1/2 pi i) int_{1/2 - iY}^{1/2 + iY}
///       Gamma(-s) Gamma(1+s) (-zeta)^s e^{-(1 - q^s) t w}
///       ((q^s w; q)_inf / (w; q)_inf)^n  ds / (q^s w - w'),
///
/// with the principal branch of (-zeta)^s (cut along positive real zeta) and
/// the line truncated where pi/|sin(pi s)| has decayed below 1e-14. The
/// q-Pochhammer ratio equals (w; q)_s^{-n}, matching the series form at the
/// integer poles.
pub fn kernel_qtasep_mb(
    w: Complex64,
    wp: Complex64,
    zeta: Complex64,
    n: i64,
    t: f64,
    q: f64,
) -> Result<Complex64, FredholmError> {
    if zeta.im == 0.0 && zeta.re >= 0.0 && zeta.norm() > 0.0 {
        return Err(FredholmError::BranchCut);
    }
    let log_mz = (-zeta).ln(); // principal branch
    // |Gamma(-s)Gamma(1+s) (-zeta)^s| ~ pi e^{-pi |y|} |zeta|^{1/2} e^{-y arg(-zeta)}
    let decay = PI - log_mz.im.abs();
    let y_max = (34.0 / decay).min(60.0).max(11.0);
    let poch_w = q_pochhammer_inf(w, q)?;
    let mut total = Complex64::new(0.0, 0.0);
    // panels of width ~2 resolve the |zeta|^{iy} and q^{iy} oscillations
    // against the e^{-pi |y|} envelope
    let panels = (1.5 * y_max) as usize + 4;
    let step = 2.0 * y_max / panels as f64;
    for p in 0..panels {
        let lo = -y_max + p as f64 * step;
        let (ys, ws) = gauss_legendre_on(lo, lo + step, 32);
        for (y, wt) in ys.iter().zip(&ws) {
            let s = Complex64::new(0.5, *y);
            let gamma_pair = -PI / (PI * s).sin();
            let qs = (s * q.ln()).exp();
            let ratio = q_pochhammer_inf(qs * w, q)? / poch_w;
            let integrand = gamma_pair
                * (s * log_mz).exp()
                * (-(1.0 - qs) * t * w).exp()
                * cpow(ratio, n)
                / (qs * w - wp);
            total += wt * integrand;
        }
    }
    // measure ds/(2 pi i) with ds = i dy
    Ok(total / (2.0 * PI))
}
