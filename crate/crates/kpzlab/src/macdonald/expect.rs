use super::diffop::{OperatorChain, SymmetricFunctionHandle};
use super::MacdonaldError;
use num_complex::Complex64;
use std::collections::BTreeMap;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Plancherel normalization Pi(a; rho_t) = prod_i e^{a_i t}.
pub fn plancherel_partition(a: &[f64], t_time: f64) -> Complex64 {
    c64((a.iter().sum::<f64>() * t_time).exp())
}

/// Operator route to the joint q-TASEP moment from step data:
///
///   E[prod_j q^{x_{n_j}(t) + n_j}] = D^{n_k}_1 ... D^{n_1}_1 Pi(a; rho_t)
///                                    / Pi(a; rho_t),
///
/// in the printed order (D^{n_1} innermost against Pi, D^{n_k} outermost),
/// each D^{n_j} touching only the first n_j variables. Using distinct n_j
/// makes the check against the contour formula order-sensitive, and only
/// this order matches it. The a_i must be pairwise distinct; the coincident
/// homogeneous point is reached by extrapolation (see
/// [`expectation_homogeneous`]). The substitution chain applies outermost
/// factors first.
pub fn expectation_via_operators(
    k: usize,
    ns: &[i64],
    t_time: f64,
    q: f64,
    a: &[f64],
) -> Result<Complex64, MacdonaldError> {
    if k == 0 || ns.len() != k {
        return Err(MacdonaldError::Domain("need k indices".into()));
    }
    if ns.windows(2).any(|w| w[0] < w[1]) || ns[k - 1] < 1 {
        return Err(MacdonaldError::Domain("need n_1 >= ... >= n_k >= 1".into()));
    }
    let n_max = ns[0] as usize;
    if a.len() < n_max {
        return Err(MacdonaldError::Domain(format!(
            "need at least {n_max} rate parameters"
        )));
    }
    let point: Vec<Complex64> = a.iter().map(|&x| c64(x)).collect();
    let mut chain = OperatorChain::identity(a.len(), q, &point);
    for &n in ns.iter().rev() {
        chain.apply(n as usize)?;
    }
    Ok(chain.eval_exp_ratio(t_time))
}

/// Homogeneous moment (all a_i = 1) by symmetric perturbation
/// a_i = 1 + eps * i and polynomial extrapolation eps -> 0. The operator
/// image is a polynomial in the point, so the extrapolation converges at
/// fixed order; four geometric eps levels leave an O(eps_0^4) residual.
pub fn expectation_homogeneous(
    k: usize,
    ns: &[i64],
    t_time: f64,
    q: f64,
) -> Result<Complex64, MacdonaldError> {
    let n_max = ns.first().copied().unwrap_or(1) as usize;
    let eps0 = 1e-2;
    let levels = 4;
    let mut pts = Vec::with_capacity(levels);
    let mut vals = Vec::with_capacity(levels);
    for l in 0..levels {
        let eps = eps0 / 2f64.powi(l as i32);
        let a: Vec<f64> = (1..=n_max).map(|i| 1.0 + eps * i as f64).collect();
        pts.push(eps);
        vals.push(expectation_via_operators(k, ns, t_time, q, &a)?);
    }
    Ok(neville_at_zero(&pts, &vals))
}

fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..(n - level) {
            let (x0, x1) = (xs[i], xs[i + level]);
            p[i] = (p[i + 1] * x0 - p[i] * x1) / (x0 - x1);
        }
    }
    p[0]
}

/// Difference-operator solution of the q-Boson evolution from occupation
/// data y (sites 1..=n): e^{-t p} (D^1)^{y_1} ... (D^n)^{y_n} e^{t p} F at
/// x = 1, reached by the same perturb-and-extrapolate policy. Occupations at
/// sites <= 0 make the value 0 identically.
pub fn qboson_via_operators(
    t_time: f64,
    y: &BTreeMap<i64, u32>,
    q: f64,
    f: &SymmetricFunctionHandle,
) -> Result<Complex64, MacdonaldError> {
    if y.iter().any(|(&site, &c)| site <= 0 && c > 0) {
        return Ok(c64(0.0));
    }
    let n = f.n_vars;
    let max_site = y.keys().next_back().copied().unwrap_or(1);
    if max_site as usize > n {
        return Err(MacdonaldError::Domain(format!(
            "occupied site {max_site} beyond the {n}-variable handle"
        )));
    }
    let eps0 = 1e-2;
    let levels = 4;
    let mut pts = Vec::with_capacity(levels);
    let mut vals = Vec::with_capacity(levels);
    for l in 0..levels {
        let eps = eps0 / 2f64.powi(l as i32);
        let point: Vec<Complex64> = (1..=n).map(|i| c64(1.0 + eps * i as f64)).collect();
        let mut chain = OperatorChain::identity(n, q, &point);
        // printed product (D^1)^{y_1} ... (D^n)^{y_n}: the site-n factor acts
        // innermost on e^{tp} F, so the chain walks sites in ascending order
        for (&site, &count) in y.iter() {
            for _ in 0..count {
                chain.apply(site as usize)?;
            }
        }
        // inner factor e^{t p} F evaluated on substituted points, then the
        // value is scaled by e^{-t p}(base point)
        let f_inner = f.clone();
        let expf = SymmetricFunctionHandle::new(n, f.symmetric, move |xs| {
            let s: Complex64 = xs.iter().sum();
            (s * t_time).exp() * f_inner.eval(xs)
        });
        let base_sum: Complex64 = point.iter().sum();
        let v = (-base_sum * t_time).exp() * chain.eval(&expf);
        pts.push(eps);
        vals.push(v);
    }
    Ok(neville_at_zero(&pts, &vals))
}
