use super::tensor::TensorIntegrand;
use super::{MomentError, MomentModel, MomentQuery, K_MAX_QUADRATURE};
use crate::numerics::QuadratureRule;
use num_complex::Complex64;

/// Abscissa of the j-th vertical line (1-based): alpha_j = (k - j) 1.25 + 0.5,
/// satisfying the strict separation alpha_j > alpha_{j+1} + 1.
fn abscissa(k: usize, j: usize) -> f64 {
    (k - j) as f64 * 1.25 + 0.5
}

/// Half-length making the discarded Gaussian tail negligible: the integrand
/// magnitude on line alpha falls off like e^{-t y^2 / 2}.
pub fn she_default_half_length(k: usize, t: f64) -> f64 {
    let _ = k;
    (64.0 / t).sqrt() + 1.0
}

/// Joint moment E[prod_j z(t, x_j)] of the fundamental solution to the
/// continuum stochastic heat equation, by tensor Gauss-Legendre on truncated
/// vertical lines:
///
///   (2 pi i)^{-k} int...int prod_{A<B} (z_A - z_B)/(z_A - z_B - 1)
///                           prod_j e^{(t/2) z_j^2 + x_j z_j} dz_j
pub fn she_moment(
    query: &MomentQuery,
    half_length: f64,
    nodes: usize,
) -> Result<Complex64, MomentError> {
    query.validate()?;
    if query.model != MomentModel::She {
        return Err(MomentError::Domain("query is not an SHE moment".into()));
    }
    let k = query.k;
    if k > K_MAX_QUADRATURE {
        return Err(MomentError::OrderTooLarge {
            k,
            max: K_MAX_QUADRATURE,
        });
    }
    let t = query.t;
    // endpoint decay certificate: Gaussian falloff against the polynomial
    // growth of the cross factors
    let endpoint_ratio = (-t * half_length * half_length / 2.0).exp()
        * (1.0 + 8.0 * half_length).powi((k * (k - 1) / 2) as i32);
    if endpoint_ratio > 1e-12 {
        return Err(MomentError::Tail { endpoint_ratio });
    }
    let rules: Vec<QuadratureRule> = (1..=k)
        .map(|j| QuadratureRule::vertical_segment(abscissa(k, j), half_length, nodes))
        .collect();
    let integrand = TensorIntegrand::build(
        &rules,
        |j, z| (0.5 * t * z * z + query.xs[j] * z).exp(),
        |za, zb| (za - zb) / (za - zb - 1.0),
    );
    let value = integrand.sum();
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    // E z(t, x) = e^{-x^2/(2t)} / sqrt(2 pi t): the heat kernel.
    #[test]
    fn first_moment_is_heat_kernel() {
        for &(t, x) in &[(1.0, 0.0), (1.0, 0.7), (4.0, -1.2), (20.0, 0.0)] {
            let query = MomentQuery::she(1, vec![x], t);
            let v = she_moment(&query, she_default_half_length(1, t), 256).unwrap();
            let want = (-x * x / (2.0 * t)).exp() / (2.0 * std::f64::consts::PI * t).sqrt();
            assert!(
                (v.re - want).abs() < 1e-8 && v.im.abs() < 1e-10,
                "t={t} x={x}: {v} vs {want}"
            );
        }
    }

    // E z(t,0)^2 = (1/(2 pi t)) [1 + e^{t/4} sqrt(pi t) (1/2) erfc(-sqrt(t)/2)]
    // (one exponential substitution reduces the pole term to a Gaussian
    // integral; small-series erf suffices as the oracle here).
    #[test]
    fn second_moment_matches_erfc_closed_form() {
        // the cross factor has a pole at z_A - z_B = 1, a ridge 0.25 away
        // from the joint grid; resolving it to 1e-8 needs node spacing well
        // below that
        for &t in &[0.5, 1.0, 2.5] {
            let query = MomentQuery::she(2, vec![0.0, 0.0], t);
            let v = she_moment(&query, she_default_half_length(2, t), 900).unwrap();
            let half_erfc = 0.5 * (1.0 + erf_series(t.sqrt() / 2.0));
            let want = (1.0 + (t / 4.0).exp() * (std::f64::consts::PI * t).sqrt() * half_erfc)
                / (2.0 * std::f64::consts::PI * t);
            assert!(
                (v.re - want).abs() < 1e-8 * want.max(1.0),
                "t={t}: {} vs {want}",
                v.re
            );
        }
    }

    fn erf_series(x: f64) -> f64 {
        // Maclaurin erf; fine for |x| <= ~3
        let mut term = x;
        let mut sum = x;
        for n in 1..120 {
            term *= -x * x / n as f64;
            sum += term / (2.0 * n as f64 + 1.0);
        }
        sum * 2.0 / std::f64::consts::PI.sqrt()
    }

    #[test]
    fn symmetric_in_equal_positions() {
        // the integrand symmetrization leaves coincident x entries exchangeable;
        // numerically, permuting equal entries is a no-op and nearby entries
        // vary continuously
        let t = 1.0;
        let a = she_moment(&MomentQuery::she(2, vec![0.3, 0.3], t), 9.0, 300).unwrap();
        let b = she_moment(&MomentQuery::she(2, vec![0.3, 0.300001], t), 9.0, 300).unwrap();
        assert!((a - b).norm() < 1e-4);
    }

    #[test]
    fn tail_error_when_half_length_too_small() {
        let query = MomentQuery::she(1, vec![0.0], 1.0);
        assert!(matches!(
            she_moment(&query, 2.0, 64),
            Err(MomentError::Tail { .. })
        ));
    }
}
