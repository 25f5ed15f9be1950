use super::{NumericsError, Result};
use num_complex::Complex64;

fn check_q(q: f64) -> Result<()> {
    if !q.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    if !(0.0..1.0).contains(&q) {
        return Err(NumericsError::Domain(format!(
            "q must lie in [0, 1), got {q}"
        )));
    }
    Ok(())
}

/// Infinite q-Pochhammer symbol (a; q)_inf = prod_{n>=0} (1 - q^n a).
///
/// The product is truncated at the first n with |q^n a| < 1e-16; the
/// truncation index is a deterministic function of (a, q).
pub fn q_pochhammer_inf(a: Complex64, q: f64) -> Result<Complex64> {
    check_q(q)?;
    if !a.re.is_finite() || !a.im.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qa = a;
    loop {
        if qa.norm() < 1e-16 {
            break;
        }
        prod *= Complex64::new(1.0, 0.0) - qa;
        qa *= q;
    }
    Ok(prod)
}

/// Finite q-Pochhammer symbol (a; q)_n = prod_{j=0}^{n-1} (1 - q^j a).
pub fn q_pochhammer(a: Complex64, q: f64, n: usize) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qa = a;
    for _ in 0..n {
        prod *= Complex64::new(1.0, 0.0) - qa;
        qa *= q;
    }
    prod
}

/// q-factorial (c)!_q = prod_{i=1}^{c} (1 - q^i) / (1 - q).
pub fn q_factorial(c: usize, q: f64) -> f64 {
    let mut prod = 1.0;
    for i in 1..=c {
        prod *= (1.0 - q.powi(i as i32)) / (1.0 - q);
    }
    prod
}

/// Gaussian binomial coefficient [n choose k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
pub fn q_binomial(n: usize, k: usize, q: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    // product form avoids the 0/0 cancellation of the Pochhammer ratio
    let mut val = 1.0;
    for i in 1..=k.min(n - k) {
        val *= (1.0 - q.powi((n - k.min(n - k) + i) as i32)) / (1.0 - q.powi(i as i32));
    }
    val
}
