use super::eigen::{psi_left, psi_right};
use super::{BetheError, OrderedState};
use crate::fredholm::lu_det;
use crate::moments::tensor::tensor_product_sum;
use crate::numerics::{make_nested_circles, QuadratureRule};
use num_complex::Complex64;
use std::sync::Arc;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A symmetric function of the spectral variables, used as transform data.
#[derive(Clone)]
pub struct SpectralFunction {
    pub k: usize,
    /// marks functions lying in the symmetric Laurent-polynomial image of
    /// the direct transform (analytic away from z = 1 and z = 0)
    pub laurent: bool,
    eval: Arc<dyn Fn(&[Complex64]) -> Complex64 + Send + Sync>,
}

impl SpectralFunction {
    pub fn new(
        k: usize,
        laurent: bool,
        f: impl Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        SpectralFunction {
            k,
            laurent,
            eval: Arc::new(f),
        }
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        (self.eval)(z)
    }

    /// Sampled symmetry check under one coordinate exchange.
    pub fn check_symmetry(&self, z: &[Complex64], tol: f64) -> bool {
        if z.len() < 2 {
            return true;
        }
        let a = self.eval(z);
        let mut zz = z.to_vec();
        zz.swap(0, z.len() - 1);
        (self.eval(&zz) - a).norm() <= tol * (1.0 + a.norm())
    }
}

/// Spectral data of step initial data: G(z) = q^{k(k-1)/2} prod (z_j - 1)/z_j
/// inverts to the indicator that every particle sits at a positive site.
pub fn step_spectral(k: usize, q: f64) -> SpectralFunction {
    SpectralFunction::new(k, false, move |z| {
        let mut v = c64(q.powi((k * (k - 1) / 2) as i32));
        for zj in z {
            v *= (zj - 1.0) / zj;
        }
        v
    })
}

/// Direct transform (F f)(z) = sum_n f(n) Psi^r_z(n) over the finite support
/// of f.
pub fn transform_direct(
    support: &[(OrderedState, Complex64)],
    z: &[Complex64],
    q: f64,
) -> Result<Complex64, BetheError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (state, weight) in support {
        acc += weight * psi_right(z, state, q)?;
    }
    Ok(acc)
}

/// Inverse transform in nested-contour form:
///
///   (J G)(n) = (2 pi i)^{-k} oint...oint prod_{A<B} (z_A - z_B)/(z_A - q z_B)
///              prod_j (1 - z_j)^{-n_j - 1} G(z) dz,
///
/// over circles around 1 containing q times every deeper circle and
/// excluding the origin.
pub fn transform_inverse(
    g: &SpectralFunction,
    state: &OrderedState,
    q: f64,
    nodes: usize,
) -> Result<Complex64, BetheError> {
    let k = state.k();
    if g.k != k {
        return Err(BetheError::Domain("spectral arity mismatch".into()));
    }
    let specs = make_nested_circles(k, q, c64(1.0), true)?;
    let rules: Vec<QuadratureRule> = specs.iter().map(|s| s.rule(nodes)).collect();
    let g = g.clone();
    let n = state.n.clone();
    Ok(tensor_product_sum(
        &rules,
        move |z: &[Complex64]| {
            let mut v = g.eval(z);
            for (j, &nj) in n.iter().enumerate() {
                v *= cpow_i64(c64(1.0) - z[j], -nj - 1);
            }
            for a in 0..z.len() {
                for b in (a + 1)..z.len() {
                    v *= (z[a] - z[b]) / (z[a] - q * z[b]);
                }
            }
            v
        },
    ))
}

/// The same inverse transform in determinantal single-contour form,
///
///   (J G)(n) = (q-1)^k q^{-k(k-1)/2} / ((2 pi i)^k k!)
///              oint...oint det[1/(q w_i - w_j)] prod_j w_j/(1 - w_j)
///              Psi^l_w(n) G(w) dw,
///
/// with every w_j on one large circle around the origin (radius > 1).
pub fn transform_inverse_determinantal(
    g: &SpectralFunction,
    state: &OrderedState,
    q: f64,
    nodes: usize,
) -> Result<Complex64, BetheError> {
    let k = state.k();
    if g.k != k {
        return Err(BetheError::Domain("spectral arity mismatch".into()));
    }
    let g = g.clone();
    let state = state.clone();
    spectral_integral(k, q, nodes, move |w| {
        let psi = match psi_left(w, &state, q) {
            Ok(v) => v,
            Err(_) => return Complex64::new(0.0, 0.0), // measure-zero grid hit
        };
        psi * g.eval(w)
    })
}

/// The spectral pairing <f, G>_C: the common machinery behind the
/// determinantal inverse transform and the biorthogonality checks.
pub fn spectral_integral(
    k: usize,
    q: f64,
    nodes: usize,
    integrand: impl Fn(&[Complex64]) -> Complex64 + 'static,
) -> Result<Complex64, BetheError> {
    let rule = QuadratureRule::circle(c64(0.0), 3.0, nodes);
    let rules: Vec<QuadratureRule> = (0..k).map(|_| rule.clone()).collect();
    let kf: f64 = (1..=k).map(|i| i as f64).product();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor = sign * (1.0 - q).powi(k as i32) * q.powi(-((k * (k - 1) / 2) as i32)) / kf;
    let value = tensor_product_sum(&rules, move |w: &[Complex64]| {
        // det [ 1/(q w_i - w_j) ]
        let m: Vec<Vec<Complex64>> = (0..k)
            .map(|i| (0..k).map(|j| 1.0 / (q * w[i] - w[j])).collect())
            .collect();
        let det = match lu_det(m) {
            Ok(d) => d,
            Err(_) => return Complex64::new(0.0, 0.0),
        };
        let mut v = det;
        for wj in w {
            v *= wj / (c64(1.0) - wj);
        }
        v * integrand(w)
    });
    Ok(prefactor * value)
}

/// Biorthogonality pairing <Psi^l(m), Psi^r(n)>_C.
pub fn spectral_inner_product(
    m_state: &OrderedState,
    n_state: &OrderedState,
    q: f64,
    nodes: usize,
) -> Result<Complex64, BetheError> {
    let k = m_state.k();
    if n_state.k() != k {
        return Err(BetheError::Domain("state arity mismatch".into()));
    }
    let m_state = m_state.clone();
    let n_state = n_state.clone();
    spectral_integral(k, q, nodes, move |w| {
        let l = match psi_left(w, &m_state, q) {
            Ok(v) => v,
            Err(_) => return Complex64::new(0.0, 0.0),
        };
        let r = match psi_right(w, &n_state, q) {
            Ok(v) => v,
            Err(_) => return Complex64::new(0.0, 0.0),
        };
        l * r
    })
}

fn cpow_i64(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.powu((-e) as u32).inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_transform_of_delta_is_psi_right() {
        let q = 0.5;
        let st = OrderedState::new(vec![2, 0]).unwrap();
        let z = vec![Complex64::new(0.3, 0.4), Complex64::new(-0.6, 0.2)];
        let f = vec![(st.clone(), c64(1.0))];
        let direct = transform_direct(&f, &z, q).unwrap();
        let psi = psi_right(&z, &st, q).unwrap();
        assert!((direct - psi).norm() < 1e-13);
    }

    #[test]
    fn direct_transform_linear() {
        let q = 0.5;
        let s1 = OrderedState::new(vec![1, 1]).unwrap();
        let s2 = OrderedState::new(vec![3, -1]).unwrap();
        let z = vec![Complex64::new(0.2, 0.7), Complex64::new(-0.4, -0.1)];
        let both = vec![(s1.clone(), c64(2.0)), (s2.clone(), c64(-0.5))];
        let v = transform_direct(&both, &z, q).unwrap();
        let v1 = transform_direct(&[(s1, c64(1.0))], &z, q).unwrap();
        let v2 = transform_direct(&[(s2, c64(1.0))], &z, q).unwrap();
        assert!((v - (2.0 * v1 - 0.5 * v2)).norm() < 1e-12);
    }

    // (J G_step)(n) = prod 1{n_j >= 1}: residues at z = 0 and z = 1
    #[test]
    fn step_data_inversion_k1() {
        let q = 0.5;
        let g = step_spectral(1, q);
        for (n, want) in [(-1i64, 0.0), (0, 0.0), (1, 1.0), (2, 1.0)] {
            let st = OrderedState::new(vec![n]).unwrap();
            let v = transform_inverse(&g, &st, q, 128).unwrap();
            assert!(
                (v - c64(want)).norm() < 1e-10,
                "n={n}: {v} vs {want}"
            );
        }
    }

    #[test]
    fn step_data_inversion_k2() {
        let q = 0.6;
        let g = step_spectral(2, q);
        for (n, want) in [
            (vec![2i64, 1], 1.0),
            (vec![1, 1], 1.0),
            (vec![1, 0], 0.0),
            (vec![0, -1], 0.0),
        ] {
            let st = OrderedState::new(n.clone()).unwrap();
            let v = transform_inverse(&g, &st, q, 192).unwrap();
            assert!((v - c64(want)).norm() < 1e-9, "n={n:?}: {v} vs {want}");
        }
    }

    #[test]
    fn nested_equals_determinantal_for_laurent_data() {
        let q = 0.5;
        // a genuine symmetric Laurent polynomial in (z_j - 1)
        let g = SpectralFunction::new(2, true, |z| {
            let u0 = z[0] - 1.0;
            let u1 = z[1] - 1.0;
            u0 * u1 + (u0 + u1) * 0.3 + 1.5 + 0.2 * (1.0 / u0 + 1.0 / u1)
        });
        for n in [vec![2i64, 1], vec![1, 0], vec![3, 3]] {
            let st = OrderedState::new(n.clone()).unwrap();
            let a = transform_inverse(&g, &st, q, 192).unwrap();
            let b = transform_inverse_determinantal(&g, &st, q, 128).unwrap();
            assert!(
                (a - b).norm() < 1e-8,
                "n={n:?}: nested {a} vs determinantal {b}"
            );
        }
    }

    // <Psi^l(m), Psi^r(n)>_C = 1{m = n} on the box {-2..3}^2
    #[test]
    fn biorthogonality_box_k2() {
        let q = 0.5;
        let mut states = Vec::new();
        for n1 in -2i64..=3 {
            for n2 in -2i64..=n1 {
                states.push(OrderedState::new(vec![n1, n2]).unwrap());
            }
        }
        for m in &states {
            for n in &states {
                let v = spectral_inner_product(m, n, q, 96).unwrap();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!(
                    (v - c64(want)).norm() < 1e-8,
                    "<{:?}, {:?}> = {v}, want {want}",
                    m.n,
                    n.n
                );
            }
        }
    }

    #[test]
    fn biorthogonality_k1() {
        let q = 0.35;
        for m in -2i64..=3 {
            for n in -2i64..=3 {
                let ms = OrderedState::new(vec![m]).unwrap();
                let ns = OrderedState::new(vec![n]).unwrap();
                let v = spectral_inner_product(&ms, &ns, q, 96).unwrap();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((v - c64(want)).norm() < 1e-9, "m={m} n={n}: {v}");
            }
        }
    }
}
