use super::MacdonaldError;
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Arc;

/// A symmetric function given by an evaluator.
#[derive(Clone)]
pub struct SymmetricFunctionHandle {
    pub n_vars: usize,
    pub symmetric: bool,
    eval: Arc<dyn Fn(&[Complex64]) -> Complex64 + Send + Sync>,
}

impl SymmetricFunctionHandle {
    pub fn new(
        n_vars: usize,
        symmetric: bool,
        f: impl Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        SymmetricFunctionHandle {
            n_vars,
            symmetric,
            eval: Arc::new(f),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::new(n_vars, true, |_| Complex64::new(1.0, 0.0))
    }

    /// e_1 = x_1 + ... + x_n
    pub fn power_sum(n_vars: usize) -> Self {
        Self::new(n_vars, true, |xs| xs.iter().sum())
    }

    pub fn eval(&self, xs: &[Complex64]) -> Complex64 {
        (self.eval)(xs)
    }

    /// Sampled symmetry check: exchanging two coordinates moves the value by
    /// less than `tol`.
    pub fn check_symmetry(&self, xs: &[Complex64], tol: f64) -> bool {
        if xs.len() < 2 {
            return true;
        }
        let base = self.eval(xs);
        let mut swapped = xs.to_vec();
        swapped.swap(0, xs.len() - 1);
        (self.eval(&swapped) - base).norm() <= tol * (1.0 + base.norm())
    }
}

/// A composition of first difference operators, tracked as a linear
/// combination of q-power substitution states: each state records how many
/// times every variable has been scaled by q, and states reached along
/// different operator orders merge.
pub struct OperatorChain {
    n_vars: usize,
    q: f64,
    point: Vec<Complex64>,
    states: HashMap<Vec<u32>, Complex64>,
}

impl OperatorChain {
    pub fn identity(n_vars: usize, q: f64, point: &[Complex64]) -> Self {
        let mut states = HashMap::new();
        states.insert(vec![0u32; n_vars], Complex64::new(1.0, 0.0));
        OperatorChain {
            n_vars,
            q,
            point: point.to_vec(),
            states,
        }
    }

    fn substituted(&self, mu: &[u32]) -> Vec<Complex64> {
        mu.iter()
            .zip(&self.point)
            .map(|(&m, &x)| x * self.q.powi(m as i32))
            .collect()
    }

    /// Apply the first difference operator restricted to variables 1..=n.
    pub fn apply(&mut self, n: usize) -> Result<(), MacdonaldError> {
        assert!(n >= 1 && n <= self.n_vars);
        let mut next: HashMap<Vec<u32>, Complex64> = HashMap::new();
        for (mu, &coef) in &self.states {
            let xs = self.substituted(mu);
            for i in 0..n {
                let mut c = coef;
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    let denom = xs[i] - xs[j];
                    if denom.norm() < 1e-13 * (xs[i].norm() + xs[j].norm()).max(1e-300) {
                        return Err(MacdonaldError::CoincidentPoint { i, j });
                    }
                    c *= -xs[j] / denom;
                }
                let mut nu = mu.clone();
                nu[i] += 1;
                *next.entry(nu).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        self.states = next;
        Ok(())
    }

    /// Evaluate the accumulated combination against a function handle.
    pub fn eval(&self, f: &SymmetricFunctionHandle) -> Complex64 {
        self.states
            .iter()
            .map(|(mu, &coef)| coef * f.eval(&self.substituted(mu)))
            .sum()
    }

    /// Evaluate against the exponential product prod_l e^{x_l * t},
    /// normalized by its value at the base point (substitution states only
    /// shift exponents, so the ratio is a finite product).
    pub fn eval_exp_ratio(&self, t: f64) -> Complex64 {
        self.states
            .iter()
            .map(|(mu, &coef)| {
                let mut v = coef;
                for (&m, &x) in mu.iter().zip(&self.point) {
                    v *= (x * (self.q.powi(m as i32) - 1.0) * t).exp();
                }
                v
            })
            .sum()
    }
}

/// One application of the first difference operator (Macdonald parameter
/// t = 0) restricted to the first n variables, evaluated at the point a:
///
///   (D^n_1 f)(a) = sum_{i<=n} prod_{j<=n, j != i} (-a_j)/(a_i - a_j)
///                  f(a_1, .., q a_i, .., a_N)
pub fn apply_difference_operator(
    f: &SymmetricFunctionHandle,
    n: usize,
    q: f64,
    a: &[Complex64],
) -> Result<Complex64, MacdonaldError> {
    if n == 0 || n > a.len() || a.len() != f.n_vars {
        return Err(MacdonaldError::Domain(format!(
            "operator span n = {n} incompatible with {} variables",
            a.len()
        )));
    }
    let mut chain = OperatorChain::identity(a.len(), q, a);
    chain.apply(n)?;
    Ok(chain.eval(f))
}
