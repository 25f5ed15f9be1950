use super::det::lu_det;
use super::FredholmError;
use crate::numerics::{airy_ai, gauss_legendre_on, QuadratureRule};
use num_complex::Complex64;
use serde::Serialize;

// Ai underflows long before this; treat as exactly zero to keep mapped
// half-line nodes far out of range harmless.
fn ai(x: f64) -> Result<f64, FredholmError> {
    if x > 90.0 {
        return Ok(0.0);
    }
    Ok(airy_ai(x)?)
}

/// Airy kernel K(x, y) = int_0^inf Ai(x + u) Ai(y + u) du, evaluated by
/// panel Gauss-Legendre on the u half-line (the integrand decays faster
/// than exponentially).
pub fn airy_kernel(x: f64, y: f64) -> Result<f64, FredholmError> {
    let (us, ws) = u_grid(x.min(y));
    let mut total = 0.0;
    for (u, w) in us.iter().zip(&ws) {
        total += w * ai(x + u)? * ai(y + u)?;
    }
    Ok(total)
}

fn u_grid(xmin: f64) -> (Vec<f64>, Vec<f64>) {
    // integrate until x + u ~ 42, past which Ai^2 < 1e-120
    let u_end = (42.0 - xmin).max(4.0);
    let panels = (u_end / 3.0).ceil() as usize;
    let step = u_end / panels as f64;
    let mut us = Vec::new();
    let mut ws = Vec::new();
    for p in 0..panels {
        let (mut xs, mut wts) = gauss_legendre_on(p as f64 * step, (p + 1) as f64 * step, 20);
        us.append(&mut xs);
        ws.append(&mut wts);
    }
    (us, ws)
}

/// Tracy-Widom GUE distribution F(s) = det(I - K_Airy) on L^2(s, inf),
/// discretized with mapped Gauss-Legendre x = s + 10 u/(1-u).
pub fn f_gue(s: f64, nodes: usize) -> Result<f64, FredholmError> {
    if !(-10.0..=6.0).contains(&s) {
        return Err(FredholmError::Domain(format!(
            "f_gue supports s in [-10, 6], got {s}"
        )));
    }
    let rule = QuadratureRule::halfline(s, 10.0, nodes);
    f_gue_with_rule(&rule.nodes, &rule.weights, s)
}

/// Same determinant on a truncated uniform grid (composite Simpson
/// weights): an independent discretization used to cross-check the mapped
/// rule.
pub fn f_gue_uniform_grid(s: f64, intervals: usize) -> Result<f64, FredholmError> {
    let m = if intervals % 2 == 0 { intervals } else { intervals + 1 };
    let x_end = 16.0_f64.max(s + 4.0);
    let h = (x_end - s) / m as f64;
    let xs: Vec<Complex64> = (0..=m).map(|i| Complex64::new(s + i as f64 * h, 0.0)).collect();
    let ws: Vec<Complex64> = (0..=m)
        .map(|i| {
            let c = if i == 0 || i == m {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            Complex64::new(c * h / 3.0, 0.0)
        })
        .collect();
    f_gue_with_rule(&xs, &ws, s)
}

fn f_gue_with_rule(
    nodes: &[Complex64],
    weights: &[Complex64],
    s: f64,
) -> Result<f64, FredholmError> {
    // tabulate Ai(x_i + u_l) once; the kernel matrix is then a weighted
    // Gram product
    let (us, uw) = u_grid(s);
    let m = nodes.len();
    let mut tab = vec![vec![0.0f64; us.len()]; m];
    for (i, x) in nodes.iter().enumerate() {
        for (l, u) in us.iter().enumerate() {
            tab[i][l] = ai(x.re + u)?;
        }
    }
    let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut k = 0.0;
            for l in 0..us.len() {
                k += uw[l] * tab[i][l] * tab[j][l];
            }
            a[i][j] = -k * weights[j];
            if i == j {
                a[i][j] += 1.0;
            }
        }
    }
    Ok(lu_det(a)?.re)
}

/// One row of the exported distribution table.
#[derive(Debug, Clone, Serialize)]
pub struct FgueRow {
    pub s: f64,
    pub f: f64,
    pub density: f64,
}

/// Table of (s, F(s), density) on a uniform grid; the density column is the
/// centered difference of F.
pub fn f_gue_table(s_min: f64, s_max: f64, step: f64, nodes: usize) -> Result<Vec<FgueRow>, FredholmError> {
    if step <= 0.0 || s_max <= s_min {
        return Err(FredholmError::Domain("need s_min < s_max, step > 0".into()));
    }
    let count = ((s_max - s_min) / step).round() as usize + 1;
    let fs: Vec<f64> = (0..count)
        .map(|i| f_gue(s_min + i as f64 * step, nodes))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let density = if i == 0 {
            (fs[1] - fs[0]) / step
        } else if i == count - 1 {
            (fs[i] - fs[i - 1]) / step
        } else {
            (fs[i + 1] - fs[i - 1]) / (2.0 * step)
        };
        rows.push(FgueRow {
            s: s_min + i as f64 * step,
            f: fs[i],
            density,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_symmetric_and_positive_diagonal() {
        let k01 = airy_kernel(0.0, 1.0).unwrap();
        let k10 = airy_kernel(1.0, 0.0).unwrap();
        assert!((k01 - k10).abs() < 1e-12);
        assert!(airy_kernel(0.0, 0.0).unwrap() > 0.0);
    }

    #[test]
    fn cdf_tails() {
        assert!(f_gue(4.0, 48).unwrap() > 0.999);
        assert!(f_gue(-8.0, 64).unwrap() < 1e-3);
    }

    #[test]
    fn node_doubling_stable() {
        for s in [-5.0, -3.0, -1.0, 0.0, 2.0] {
            let a = f_gue(s, 48).unwrap();
            let b = f_gue(s, 96).unwrap();
            assert!((a - b).abs() < 1e-8, "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn discretizations_agree() {
        for s in [-4.0, -2.0, 0.0, 1.0] {
            let a = f_gue(s, 64).unwrap();
            let b = f_gue_uniform_grid(s, 220).unwrap();
            assert!((a - b).abs() < 1e-6, "s={s}: mapped {a} vs uniform {b}");
        }
    }

    #[test]
    fn monotone_cdf_in_unit_interval() {
        let rows = f_gue_table(-6.0, 3.0, 0.25, 40).unwrap();
        let mut prev = -1e-12;
        for r in &rows {
            assert!(r.f >= prev - 1e-10, "not monotone at {}", r.s);
            assert!((-1e-10..=1.0 + 1e-9).contains(&r.f));
            prev = r.f;
        }
        // density integrates to ~1 over the bulk
        let mass: f64 = rows.iter().map(|r| r.density * 0.25).sum();
        assert!((mass - 1.0).abs() < 0.02, "density mass {mass}");
    }
}
