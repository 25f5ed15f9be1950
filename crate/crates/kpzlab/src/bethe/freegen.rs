use super::BetheError;
use crate::moments::tensor::tensor_product_sum;
use crate::numerics::{make_nested_circles, QuadratureRule};
use num_complex::Complex64;
use serde::Serialize;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeEvolutionReport {
    pub k: usize,
    pub q: f64,
    pub t: f64,
    pub pointwise_integrand_residual: f64,
    pub time_derivative_residual: f64,
    pub boundary_residual: f64,
    pub pass: bool,
}

/// The moment integrand u(t, n) (defined on all of Z^k, not just the ordered
/// sector) satisfies the free evolution equation d_t u = (1-q) sum_i grad_i u
/// and the two-point boundary condition (grad_i - q grad_{i+1}) u = 0 on
/// n_i = n_{i+1}. Both are verified numerically: the first through the
/// one-variable integrand identity d_t e^{(q-1)tz}(1-z)^{-n} =
/// (1-q) grad e^{(q-1)tz}(1-z)^{-n} and a central-difference check on the
/// integral, the second by evaluating the integral at the decremented
/// arguments.
pub fn check_free_evolution_and_boundary(
    k: usize,
    n: &[i64],
    t: f64,
    q: f64,
    nodes: usize,
) -> Result<FreeEvolutionReport, BetheError> {
    if n.len() != k || k == 0 {
        return Err(BetheError::Domain("need k components".into()));
    }
    // (a) pointwise integrand identity at sampled z
    let mut pointwise = 0.0f64;
    for &(re, im) in &[(0.4, 0.3), (1.6, -0.8), (-0.2, 1.1)] {
        let z = Complex64::new(re, im);
        for &nn in n {
            let g = |m: i64| ((q - 1.0) * t * z).exp() * cpow(c64(1.0) - z, -m);
            let lhs = (q - 1.0) * z * g(nn);
            let rhs = (1.0 - q) * (g(nn - 1) - g(nn));
            pointwise = pointwise.max((lhs - rhs).norm());
        }
    }

    let u = |time: f64, args: &[i64]| -> Result<Complex64, BetheError> {
        integrand_integral(k, args, time, q, nodes)
    };

    // (b) time derivative by central difference vs the lattice gradient sum
    let dt = 1e-4;
    let base = u(t, n)?;
    let du_dt = (u(t + dt, n)? - u(t - dt, n)?) / (2.0 * dt);
    let mut grad_sum = Complex64::new(0.0, 0.0);
    for i in 0..k {
        let mut shifted = n.to_vec();
        shifted[i] -= 1;
        grad_sum += u(t, &shifted)? - base;
    }
    let time_residual = (du_dt - (1.0 - q) * grad_sum).norm();

    // (c) boundary condition at clustered arguments
    let mut boundary = 0.0f64;
    for i in 0..k.saturating_sub(1) {
        if n[i] != n[i + 1] {
            continue;
        }
        let mut dec_i = n.to_vec();
        dec_i[i] -= 1;
        let mut dec_ip = n.to_vec();
        dec_ip[i + 1] -= 1;
        let residual =
            (u(t, &dec_i)? - base) - q * (u(t, &dec_ip)? - base);
        boundary = boundary.max(residual.norm());
    }

    let pass = pointwise < 1e-12 && time_residual < 1e-6 && boundary < 1e-9;
    Ok(FreeEvolutionReport {
        k,
        q,
        t,
        pointwise_integrand_residual: pointwise,
        time_derivative_residual: time_residual,
        boundary_residual: boundary,
        pass,
    })
}

fn integrand_integral(
    k: usize,
    n: &[i64],
    t: f64,
    q: f64,
    nodes: usize,
) -> Result<Complex64, BetheError> {
    let specs = make_nested_circles(k, q, c64(1.0), true)?;
    let rules: Vec<QuadratureRule> = specs.iter().map(|s| s.rule(nodes)).collect();
    let n = n.to_vec();
    Ok(tensor_product_sum(&rules, move |z: &[Complex64]| {
        let mut v = Complex64::new(1.0, 0.0);
        for a in 0..z.len() {
            for b in (a + 1)..z.len() {
                v *= (z[a] - z[b]) / (z[a] - q * z[b]);
            }
        }
        for (j, &nj) in n.iter().enumerate() {
            v *= ((q - 1.0) * t * z[j]).exp() * cpow(c64(1.0) - z[j], -nj) / z[j];
        }
        v
    }))
}

fn cpow(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.powu((-e) as u32).inv()
    }
}
