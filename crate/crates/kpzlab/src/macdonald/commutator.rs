use super::diffop::{OperatorChain, SymmetricFunctionHandle};
use super::MacdonaldError;
use num_complex::Complex64;
use serde::Serialize;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Outcome of one commutation-identity evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub n: usize,
    pub k: usize,
    pub q: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn apply_chain(
    ops: &[usize],
    f: &SymmetricFunctionHandle,
    q: f64,
    a: &[Complex64],
) -> Result<Complex64, MacdonaldError> {
    let mut chain = OperatorChain::identity(a.len(), q, a);
    // the substitution chain applies outermost factors first, so the printed
    // product [o_0, o_1, ...] (rightmost acting on f) is walked left to right
    for &n in ops.iter() {
        chain.apply(n)?;
    }
    Ok(chain.eval(f))
}

/// Verify [ (D^n_1)^k , p ] = (1 - q^k) x_n (D^{n-1}_1 - D^n_1) (D^n_1)^{k-1}
/// on a test function at the point a, where p multiplies by x_1 + ... + x_n.
/// Both sides are evaluated numerically; PASS means agreement to 1e-10.
pub fn commutator_check(
    n: usize,
    k: usize,
    q: f64,
    testfn: &SymmetricFunctionHandle,
    a: &[Complex64],
) -> Result<CommutatorReport, MacdonaldError> {
    if n < 1 || n > 3 || k < 1 || k > 3 {
        return Err(MacdonaldError::Domain("need 1 <= n, k <= 3".into()));
    }
    if a.len() != testfn.n_vars || a.len() < n {
        return Err(MacdonaldError::Domain(
            "point/function arity mismatch".into(),
        ));
    }
    let nv = a.len();
    let p_of = move |xs: &[Complex64]| -> Complex64 { xs.iter().take(n).sum() };
    // p * testfn as a new handle
    let inner = testfn.clone();
    let pf = SymmetricFunctionHandle::new(nv, false, move |xs| p_of(xs) * inner.eval(xs));

    // lhs = (D^n)^k (p f)(a) - p(a) (D^n)^k f(a)
    let dk_pf = apply_chain(&vec![n; k], &pf, q, a)?;
    let dk_f = apply_chain(&vec![n; k], testfn, q, a)?;
    let p_at_a: Complex64 = a.iter().take(n).sum();
    let lhs = dk_pf - p_at_a * dk_f;

    // rhs = (1 - q^k) x_n [ D^{n-1} (D^n)^{k-1} f - D^n (D^n)^{k-1} f ](a);
    // D^0 sums over an empty variable set, so for n = 1 the lower term
    // vanishes identically
    let low = if n >= 2 {
        let mut ops_low: Vec<usize> = vec![n; k - 1];
        ops_low.insert(0, n - 1);
        apply_chain(&ops_low, testfn, q, a)?
    } else {
        c64(0.0)
    };
    let high = apply_chain(&vec![n; k], testfn, q, a)?;
    let rhs = c64(1.0 - q.powi(k as i32)) * a[n - 1] * (low - high);

    let tolerance = 1e-10 * (1.0 + lhs.norm().max(rhs.norm()));
    let pass = (lhs - rhs).norm() <= tolerance;
    Ok(CommutatorReport {
        n,
        k,
        q,
        lhs_re: lhs.re,
        lhs_im: lhs.im,
        rhs_re: rhs.re,
        rhs_im: rhs.im,
        tolerance,
        pass,
    })
}
