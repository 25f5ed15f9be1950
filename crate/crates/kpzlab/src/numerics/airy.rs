use super::quad::gauss_legendre_on;
use super::{NumericsError, Result};

// Ai(0) = 3^{-2/3}/Gamma(2/3) and -Ai'(0) = 3^{-1/3}/Gamma(1/3).
const AI0: f64 = 0.355028053887817_2;
const AIP0: f64 = 0.258819403792806_8;

const X_MIN: f64 = -100.0;
const X_MAX: f64 = 200.0;

/// Airy function Ai(x) on [-100, 200], absolute error below 1e-10.
///
/// Three absolutely convergent representations are stitched together: the
/// Maclaurin series near the origin, a saddle-point contour rotated onto the
/// vertical line through sqrt(x) for large positive x, and a two-saddle
/// contour (rays at +-pi/4 through +-i sqrt(-x) plus the connecting vertical
/// segment) for large negative x. No oscillatory real-line integral is used.
pub fn airy_ai(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    if !(X_MIN..=X_MAX).contains(&x) {
        return Err(NumericsError::Domain(format!(
            "airy_ai supports [{X_MIN}, {X_MAX}], got {x}"
        )));
    }
    if x >= 2.0 {
        Ok(ai_positive_contour(x))
    } else if x > -7.5 {
        Ok(ai_series(x))
    } else {
        Ok(ai_negative_saddle(-x))
    }
}

/// Maclaurin series Ai(x) = Ai(0) f(x) + Ai'(0) g(x). Entire, but the two
/// sums cancel like e^{2 xi} for positive x, so it is only used (and only a
/// trustworthy oracle) for x below ~4.
pub(crate) fn ai_series(x: f64) -> f64 {
    let x3 = x * x * x;
    let mut f_term = 1.0;
    let mut f_sum = 1.0;
    let mut g_term = x;
    let mut g_sum = x;
    let mut k = 0.0_f64;
    loop {
        f_term *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
        g_term *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
        f_sum += f_term;
        g_sum += g_term;
        k += 1.0;
        if f_term.abs() < 1e-18 * f_sum.abs().max(1.0)
            && g_term.abs() < 1e-18 * g_sum.abs().max(1.0)
        {
            break;
        }
        if k > 200.0 {
            break;
        }
    }
    AI0 * f_sum - AIP0 * g_sum
}

/// For x > 0: Ai(x) = e^{-(2/3)x^{3/2}} / pi * int_0^inf e^{-sqrt(x) r^2}
/// cos(r^3/3) dr (the defining contour moved onto the vertical line through
/// the saddle at sqrt(x); the integrand decays as a pure Gaussian).
pub(crate) fn ai_positive_contour(x: f64) -> f64 {
    let sx = x.sqrt();
    let r_max = (42.0 / sx).sqrt();
    let phase = r_max.powi(3) / 3.0;
    let panels = (phase / 18.0).ceil().max(1.0) as usize;
    let scale = (-(2.0 / 3.0) * x.powf(1.5)).exp();
    let mut total = 0.0;
    let step = r_max / panels as f64;
    for p in 0..panels {
        let lo = p as f64 * step;
        let (rs, ws) = gauss_legendre_on(lo, lo + step, 48);
        for (r, w) in rs.iter().zip(&ws) {
            total += w * (-sx * r * r).exp() * (r * r * r / 3.0).cos();
        }
    }
    scale * total / std::f64::consts::PI
}

/// For y = -x > 0: contour through the saddles +- i sqrt(y). The vertical
/// segment between the saddles has unit-modulus integrand and bounded total
/// phase (2/3) y^{3/2} on each half; the outgoing rays at +- pi/4 decay as
/// e^{-sqrt(y) r^2 - sqrt(2) r^3 / 6}.
pub(crate) fn ai_negative_saddle(y: f64) -> f64 {
    use std::f64::consts::PI;
    let sy = y.sqrt();
    let xi = (2.0 / 3.0) * y.powf(1.5);

    // middle: (1/pi) int_0^sqrt(y) cos(y v - v^3/3) dv
    let panels = (xi / 18.0).ceil().max(1.0) as usize;
    let step = sy / panels as f64;
    let mut middle = 0.0;
    for p in 0..panels {
        let lo = p as f64 * step;
        let (vs, ws) = gauss_legendre_on(lo, lo + step, 48);
        for (v, w) in vs.iter().zip(&ws) {
            middle += w * (y * v - v * v * v / 3.0).cos();
        }
    }

    // ray: Im[e^{i phi} int_0^R e^{-sqrt(y) r^2 - c r^3} e^{i c r^3} dr],
    // phi = xi + pi/4, c = sqrt(2)/6
    let c = 2.0_f64.sqrt() / 6.0;
    let r_max = (42.0 / sy).sqrt();
    let (rs, ws) = gauss_legendre_on(0.0, r_max, 96);
    let (mut ray_re, mut ray_im) = (0.0, 0.0);
    for (r, w) in rs.iter().zip(&ws) {
        let damp = (-sy * r * r - c * r * r * r).exp();
        let ph = c * r * r * r;
        ray_re += w * damp * ph.cos();
        ray_im += w * damp * ph.sin();
    }
    let phi = xi + PI / 4.0;
    // Im[e^{i phi} (ray_re + i ray_im)]
    let ray = phi.sin() * ray_re + phi.cos() * ray_im;

    (middle + ray) / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gamma_complex;
    use num_complex::Complex64;

    #[test]
    fn value_at_zero_matches_gamma_expression() {
        let want = 3.0_f64.powf(-2.0 / 3.0) / gamma_complex(Complex64::new(2.0 / 3.0, 0.0))
            .unwrap()
            .re;
        assert!((airy_ai(0.0).unwrap() - want).abs() < 1e-12);
        assert!((ai_series(0.0) - want).abs() < 1e-12);
    }

    #[test]
    fn regime_seams_agree() {
        // the series is an independent oracle only where its cancellation
        // noise stays below ~1e-10: up to x ~ 4 on the right, x ~ -9 on the left
        for &x in &[2.0, 2.5, 3.0, 4.0] {
            let a = ai_series(x);
            let b = ai_positive_contour(x);
            assert!((a - b).abs() < 1e-10, "x={x}: series {a} contour {b}");
        }
        for &x in &[-6.0, -7.0, -7.5, -8.0, -9.0] {
            let a = ai_series(x);
            let b = ai_negative_saddle(-x);
            assert!((a - b).abs() < 3e-10, "x={x}: series {a} saddle {b}");
        }
    }

    // Large-x oracle: the exponential asymptotic series
    // Ai(x) ~ e^{-xi}/(2 sqrt(pi) x^{1/4}) sum (-1)^k u_k xi^{-k}
    // has error below 1e-13 relative for x >= 8.
    #[test]
    fn positive_contour_matches_asymptotic_series() {
        for &x in &[8.0_f64, 12.0, 20.0, 35.0] {
            let xi = (2.0 / 3.0) * x.powf(1.5);
            let mut u = 1.0;
            let mut sum = 1.0;
            let mut sign = -1.0;
            let mut prev = 1.0_f64;
            let mut cutoff = 1.0_f64;
            for k in 1..=40u32 {
                let kf = k as f64;
                u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                    / ((2.0 * kf - 1.0) * 216.0 * kf);
                let term = u / xi.powi(k as i32);
                // optimal truncation: stop once the terms turn around
                if term >= prev {
                    cutoff = term;
                    break;
                }
                sum += sign * term;
                sign = -sign;
                prev = term;
                cutoff = term;
            }
            let asym = (-xi).exp() / (2.0 * std::f64::consts::PI.sqrt() * x.powf(0.25)) * sum;
            let got = ai_positive_contour(x);
            let tol = (2.0 * cutoff).max(1e-13);
            assert!(
                ((got - asym) / asym).abs() < tol,
                "x={x}: contour {got} asym {asym} tol {tol}"
            );
        }
    }

    #[test]
    fn known_values() {
        // Reference digits from standard tables.
        assert!((airy_ai(0.0).unwrap() - 0.355028053888).abs() < 1e-11);
        assert!((airy_ai(2.0).unwrap() - 0.0349241304233).abs() < 1e-11);
        assert!((airy_ai(1.0).unwrap() - 0.135292416313).abs() < 1e-11);
    }

    #[test]
    fn positivity_and_decay_on_positive_axis() {
        let v10 = airy_ai(10.0).unwrap();
        assert!(v10 > 0.0 && v10 < 1e-9);
        let mut prev = airy_ai(1.0).unwrap();
        let mut x = 1.5;
        while x <= 40.0 {
            let v = airy_ai(x).unwrap();
            assert!(v > 0.0 && v < prev, "not decreasing at {x}");
            prev = v;
            x += 0.5;
        }
    }

    #[test]
    fn domain_error_outside_range() {
        assert!(airy_ai(250.0).is_err());
        assert!(airy_ai(-150.0).is_err());
        assert!(airy_ai(f64::NAN).is_err());
    }

    // Normalization: int_R Ai = 1. The quadrature covers [-Y, 40]; the
    // remaining left tail int_{-inf}^{-Y} Ai dx is added from its asymptotic
    // expansion (three orders, residual O(xi^{-7/2}) ~ 4e-9 at Y = 40).
    #[test]
    fn normalization_with_tail_correction() {
        let y_cut = 40.0;
        let quad_part = crate::numerics::quad::integrate_panels(-y_cut, 40.0, 220, 24, |x| {
            airy_ai(x).unwrap()
        });
        let total = quad_part + left_tail(y_cut);
        assert!(
            (total - 1.0).abs() < 1e-6,
            "normalization off by {}",
            total - 1.0
        );
    }

    // int_Y^inf Ai(-v) dv by integration by parts in the phase variable.
    fn left_tail(y: f64) -> f64 {
        let u1 = 5.0 / 72.0;
        let u2 = 385.0 / 10368.0;
        let xi = (2.0 / 3.0) * y.powf(1.5);
        let th = xi + std::f64::consts::PI / 4.0;
        let c = (2.0 / (3.0 * std::f64::consts::PI)).sqrt();
        let cos_amp = xi.powf(-0.5) - (u2 + 1.5 * u1 + 0.75) * xi.powf(-2.5);
        let sin_amp = (0.5 + u1) * xi.powf(-1.5);
        c * (th.cos() * cos_amp + th.sin() * sin_amp)
    }

    // Cross-check the tail formula against direct quadrature on [Y1, Y2].
    // The omitted orders are O(xi^{-7/2}) ~ 2e-7 at Y = 25.
    #[test]
    fn tail_formula_consistency() {
        let (y1, y2) = (25.0, 40.0);
        let band = crate::numerics::quad::integrate_panels(-y2, -y1, 120, 24, |x| {
            airy_ai(x).unwrap()
        });
        let lhs = left_tail(y1);
        let rhs = band + left_tail(y2);
        assert!((lhs - rhs).abs() < 5e-7, "{lhs} vs {rhs}");
    }
}
