use super::quad::QuadratureRule;
use super::{NumericsError, Result};
use num_complex::Complex64;

/// A closed circular contour (or the data for one level of a nested family).
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    /// Default node count when the contour is discretized.
    pub nodes: usize,
}

impl ContourSpec {
    pub fn rule(&self, nodes: usize) -> QuadratureRule {
        QuadratureRule::circle(self.center, self.radius, nodes)
    }
}

/// Construct k nested circles around `center` such that, for A < B, circle A
/// strictly contains q times circle B, every circle contains the point 1,
/// and (when `exclude_zero`) every circle excludes the origin.
///
/// Radii are built greedily from the innermost circle outward with a 5%
/// safety margin; if the constraints cannot all be met the nest is refused
/// rather than silently bent.
pub fn make_nested_circles(
    k: usize,
    q: f64,
    center: Complex64,
    exclude_zero: bool,
) -> Result<Vec<ContourSpec>> {
    if k == 0 {
        return Err(NumericsError::Domain("k must be >= 1".into()));
    }
    if !(0.0 < q && q < 1.0) {
        return Err(NumericsError::Domain(format!("q must be in (0,1), got {q}")));
    }
    let c = center.norm();
    let dist_to_one = (center - Complex64::new(1.0, 0.0)).norm();
    // The margin is the closest approach between circle A and q * circle B
    // (and between each contour and the pole at 1); the trapezoid rule
    // converges like exp(-M * margin / radius), so the margin should be a
    // healthy fraction of the radii. Expanding the recursion, the outermost
    // radius is |c|(1 - q^{k-1}) + q^{k-1} r_k plus accumulated margins, so
    // only about |c| q^{k-1} of slack exists between containing 1 and
    // excluding 0; the margin is budgeted against that squeeze.
    let budget = 0.9 * c * q.powi(k as i32 - 1);
    let margin = (budget / (k as f64 + 2.0))
        .min(0.12 * c * (1.0 - q))
        .max(1e-3 * c);

    // innermost circle: just big enough to hold 1 with margin
    let mut radii = vec![0.0_f64; k];
    radii[k - 1] = dist_to_one + margin;
    for j in (0..k.saturating_sub(1)).rev() {
        // containment of q * circle(j+1): |center|(1-q) + q r_{j+1} + margin
        let need = c * (1.0 - q) + q * radii[j + 1] + margin;
        radii[j] = need.max(radii[j + 1] + margin).max(dist_to_one + margin);
    }
    if exclude_zero {
        for (j, r) in radii.iter().enumerate() {
            if *r >= c - 0.5 * margin {
                return Err(NumericsError::InfeasibleNest(format!(
                    "circle {j} (radius {r:.4}) would swallow the origin (|center| = {c:.4})"
                )));
            }
        }
    }
    Ok(radii
        .into_iter()
        .map(|radius| ContourSpec {
            center,
            radius,
            nodes: 256,
        })
        .collect())
}
