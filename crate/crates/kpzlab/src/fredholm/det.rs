use super::FredholmError;
use crate::numerics::QuadratureRule;
use num_complex::Complex64;

/// Determinant of a dense complex matrix by LU with partial pivoting.
/// Singularity is reported, never masked.
pub fn lu_det(mut a: Vec<Vec<Complex64>>) -> Result<Complex64, FredholmError> {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pivot_mag < 1e-300 {
            return Err(FredholmError::SingularMatrix);
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        for r in (col + 1)..n {
            let factor = a[r][col] / pivot;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for c in (col + 1)..n {
                let sub = factor * a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Ok(det)
}

/// Nystrom value of det(I + K) against the discrete measure given by the
/// nodes and weights: det(delta_ij + K(w_i, w_j) omega_j).
pub fn fredholm_det(
    nodes: &[Complex64],
    weights: &[Complex64],
    mut kernel: impl FnMut(Complex64, Complex64) -> Complex64,
) -> Result<Complex64, FredholmError> {
    let m = nodes.len();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut v = kernel(nodes[i], nodes[j]) * weights[j];
            if i == j {
                v += 1.0;
            }
            a[i][j] = v;
        }
    }
    lu_det(a)
}

/// Same, taking the rule directly.
pub fn fredholm_det_rule(
    rule: &QuadratureRule,
    kernel: impl FnMut(Complex64, Complex64) -> Complex64,
) -> Result<Complex64, FredholmError> {
    fredholm_det(&rule.nodes, &rule.weights, kernel)
}
