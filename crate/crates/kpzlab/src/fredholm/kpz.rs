use super::det::lu_det;
use super::FredholmError;
use crate::numerics::{airy_ai, gauss_legendre_on, QuadratureRule};
use num_complex::Complex64;

fn ai(x: f64) -> Result<f64, FredholmError> {
    if x > 90.0 {
        return Ok(0.0);
    }
    Ok(airy_ai(x)?)
}

/// Laplace transform of the continuum polymer partition function at the
/// origin: E[e^{-zeta e^{t/24} z(t, 0)}] = det(I - K^KPZ) on L^2(R_+), with
///
///   K^KPZ(eta, eta') = int_R zeta / (zeta + e^{-s (t/2)^{1/3}})
///                      Ai(s + eta) Ai(s + eta') ds.
///
/// The s-line is split at the sigmoid transition and truncated where the
/// exponential damping (left) and the Airy decay (right) fall below 1e-18.
pub fn laplace_kpz(zeta: Complex64, t: f64, nodes: usize) -> Result<Complex64, FredholmError> {
    if t <= 0.0 {
        return Err(FredholmError::Domain("need t > 0".into()));
    }
    if zeta.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if zeta.re <= 0.0 {
        return Err(FredholmError::Domain("need Re(zeta) > 0".into()));
    }
    let c = (t / 2.0).powf(1.0 / 3.0);
    // left cut: |zeta| e^{c s} < 1e-18; right cut: Airy^2 exhausted
    let s_lo = ((1e-18f64.ln() - zeta.norm().ln()) / c).min(-4.0);
    let s_hi = 42.0;
    // the sigmoid midpoint; panels refine around it
    let s_star = (-(zeta.norm().ln()) / c).clamp(s_lo, s_hi);
    let mut cuts = vec![s_lo, s_star - 2.0, s_star + 2.0, 0.0, s_hi];
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let mut s_nodes = Vec::new();
    let mut s_weights = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let panels = ((hi - lo) / 2.0).ceil() as usize;
        let step = (hi - lo) / panels as f64;
        for p in 0..panels {
            let (mut xs, mut ws) =
                gauss_legendre_on(lo + p as f64 * step, lo + (p + 1) as f64 * step, 16);
            s_nodes.append(&mut xs);
            s_weights.append(&mut ws);
        }
    }
    let sigmoid: Vec<Complex64> = s_nodes
        .iter()
        .map(|&s| zeta / (zeta + (-s * c).exp()))
        .collect();

    let rule = QuadratureRule::halfline(0.0, 10.0, nodes);
    let m = nodes;
    let mut tab = vec![vec![0.0f64; s_nodes.len()]; m];
    for (i, eta) in rule.nodes.iter().enumerate() {
        for (l, s) in s_nodes.iter().enumerate() {
            tab[i][l] = ai(s + eta.re)?;
        }
    }
    let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut k = Complex64::new(0.0, 0.0);
            for l in 0..s_nodes.len() {
                k += s_weights[l] * sigmoid[l] * tab[i][l] * tab[j][l];
            }
            a[i][j] = -k * rule.weights[j];
            if i == j {
                a[i][j] += 1.0;
            }
        }
    }
    lu_det(a)
}
