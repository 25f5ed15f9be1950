use super::{NumericsError, Result};

// Asymptotic series coefficients B_{2k}/(2k) and B_{2k} for the psi family.
// Values of the Bernoulli numbers B_2..B_16.
const B: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

const LIFT: f64 = 12.0;

fn check(s: f64) -> Result<()> {
    if !s.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    if s <= 0.0 {
        return Err(NumericsError::Domain(format!("psi requires s > 0, got {s}")));
    }
    Ok(())
}

/// Digamma psi(s) = d/ds log Gamma(s) for s > 0, by upward recurrence into the
/// asymptotic region. Absolute error below 1e-12 on (0, inf).
pub fn digamma(s: f64) -> Result<f64> {
    check(s)?;
    let mut x = s;
    let mut acc = 0.0;
    while x < LIFT {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv2;
    for (k, &b) in B.iter().enumerate() {
        series += b / (2.0 * (k as f64 + 1.0)) * p;
        p *= inv2;
    }
    Ok(acc + x.ln() - 0.5 * inv - series)
}

/// Trigamma psi'(s) for s > 0.
pub fn trigamma(s: f64) -> Result<f64> {
    check(s)?;
    let mut x = s;
    let mut acc = 0.0;
    while x < LIFT {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv * inv2;
    for &b in B.iter() {
        series += b * p;
        p *= inv2;
    }
    Ok(acc + inv + 0.5 * inv2 + series)
}

/// Tetragamma psi''(s) for s > 0.
pub fn tetragamma(s: f64) -> Result<f64> {
    check(s)?;
    let mut x = s;
    let mut acc = 0.0;
    while x < LIFT {
        acc -= 2.0 / (x * x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv2 * inv2;
    for (k, &b) in B.iter().enumerate() {
        series += b * (2.0 * (k as f64 + 1.0) + 1.0) * p;
        p *= inv2;
    }
    Ok(acc - inv2 - inv * inv2 - series)
}
