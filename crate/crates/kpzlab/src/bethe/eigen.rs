use super::{BetheError, OrderedState};
use crate::numerics::q_factorial;
use num_complex::Complex64;

fn check_spectral(z: &[Complex64], need_away_from_one: bool) -> Result<(), BetheError> {
    for i in 0..z.len() {
        for j in (i + 1)..z.len() {
            if (z[i] - z[j]).norm() < 1e-12 {
                return Err(BetheError::CoincidentSpectral { i, j });
            }
        }
        if need_away_from_one && (z[i] - 1.0).norm() < 1e-12 {
            return Err(BetheError::Domain(format!("z_{i} too close to 1")));
        }
    }
    Ok(())
}

fn cpow_i64(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.powu((-e) as u32).inv()
    }
}

// sum over permutations via Heap's algorithm
fn permutation_sum(
    k: usize,
    mut body: impl FnMut(&[usize]) -> Complex64,
) -> Complex64 {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut acc = body(&idx);
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                idx.swap(0, i);
            } else {
                idx.swap(c[i], i);
            }
            acc += body(&idx);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

/// Left eigenfunction of the zero-range generator:
///
///   Psi^l_z(n) = sum_sigma prod_{A > B} (z_{s(A)} - q z_{s(B)})
///                                       / (z_{s(A)} - z_{s(B)})
///                          prod_j (1 - z_{s(j)})^{-n_j}.
pub fn psi_left(z: &[Complex64], state: &OrderedState, q: f64) -> Result<Complex64, BetheError> {
    let k = state.k();
    if z.len() != k {
        return Err(BetheError::Domain("need one z per particle".into()));
    }
    check_spectral(z, true)?;
    Ok(permutation_sum(k, |sigma| {
        let mut v = Complex64::new(1.0, 0.0);
        for a in 0..k {
            for b in 0..a {
                v *= (z[sigma[a]] - q * z[sigma[b]]) / (z[sigma[a]] - z[sigma[b]]);
            }
        }
        for (j, &nj) in state.n.iter().enumerate() {
            v *= cpow_i64(Complex64::new(1.0, 0.0) - z[sigma[j]], -nj);
        }
        v
    }))
}

/// Cluster normalization c_q(n) = (-1)^k q^{-k(k-1)/2} (c_1)!_q (c_2)!_q ...
/// with (c)!_q = prod_{i<=c} (1 - q^i)/(1 - q); this convention is pinned by
/// the biorthogonality suite.
pub fn c_q_normalization(state: &OrderedState, q: f64) -> f64 {
    let k = state.k() as i32;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let fact: f64 = state.clusters().iter().map(|&c| q_factorial(c, q)).product();
    sign * q.powi(-k * (k - 1) / 2) * fact
}

/// Right eigenfunction:
///
///   Psi^r_z(n) = c_q(n)^{-1} sum_sigma prod_{A > B}
///       (z_{s(A)} - q^{-1} z_{s(B)}) / (z_{s(A)} - z_{s(B)})
///       prod_j (1 - z_{s(j)})^{n_j}.
pub fn psi_right(z: &[Complex64], state: &OrderedState, q: f64) -> Result<Complex64, BetheError> {
    let k = state.k();
    if z.len() != k {
        return Err(BetheError::Domain("need one z per particle".into()));
    }
    check_spectral(z, false)?;
    let qi = 1.0 / q;
    let sum = permutation_sum(k, |sigma| {
        let mut v = Complex64::new(1.0, 0.0);
        for a in 0..k {
            for b in 0..a {
                v *= (z[sigma[a]] - qi * z[sigma[b]]) / (z[sigma[a]] - z[sigma[b]]);
            }
        }
        for (j, &nj) in state.n.iter().enumerate() {
            v *= cpow_i64(Complex64::new(1.0, 0.0) - z[sigma[j]], nj);
        }
        v
    });
    Ok(sum / c_q_normalization(state, q))
}

/// Backward generator of the zero-range process on ordered states: the last
/// member of cluster i moves left at rate 1 - q^{c_i}.
pub fn apply_generator(
    f: impl Fn(&OrderedState) -> Complex64,
    state: &OrderedState,
    q: f64,
) -> Complex64 {
    let here = f(state);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &c) in state.clusters().iter().enumerate() {
        let rate = 1.0 - q.powi(c as i32);
        acc += rate * (f(&state.decrement_cluster(i)) - here);
    }
    acc
}

/// Transpose action: (H^t g)(n) = sum over states m jumping into n of
/// rate(m) g(m), minus the total escape rate of n times g(n).
pub fn apply_generator_transpose(
    g: impl Fn(&OrderedState) -> Complex64,
    state: &OrderedState,
    q: f64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    // states m with one coordinate incremented that decrement back onto n
    for p in 0..state.k() {
        if p > 0 && state.n[p - 1] < state.n[p] + 1 {
            continue;
        }
        let mut m = state.n.clone();
        m[p] += 1;
        let m_state = OrderedState { n: m };
        // in m, position p closes its cluster, so the decrement lands on n
        let sizes = m_state.clusters();
        let mut start = 0usize;
        let mut c_of_p = 0usize;
        for &c in &sizes {
            if p < start + c {
                c_of_p = c;
                break;
            }
            start += c;
        }
        acc += (1.0 - q.powi(c_of_p as i32)) * g(&m_state);
    }
    let escape: f64 = state
        .clusters()
        .iter()
        .map(|&c| 1.0 - q.powi(c as i32))
        .sum();
    acc - escape * g(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(vals: &[(f64, f64)]) -> Vec<Complex64> {
        vals.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }

    #[test]
    fn single_particle_forms() {
        let q = 0.5;
        let z = zs(&[(0.3, 0.4)]);
        let st = OrderedState::new(vec![3]).unwrap();
        let left = psi_left(&z, &st, q).unwrap();
        let want_l = cpow_i64(Complex64::new(1.0, 0.0) - z[0], -3);
        assert!((left - want_l).norm() < 1e-13);
        // c_q for one particle is -1, so Psi^r = -(1 - z)^n
        let right = psi_right(&z, &st, q).unwrap();
        let want_r = -cpow_i64(Complex64::new(1.0, 0.0) - z[0], 3);
        assert!((right - want_r).norm() < 1e-13);
        assert!((c_q_normalization(&st, q) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn left_eigenfunction_symmetric_in_z() {
        let q = 0.4;
        let st = OrderedState::new(vec![2, 0, -1]).unwrap();
        let z1 = zs(&[(0.3, 0.2), (-0.5, 0.7), (1.4, -0.3)]);
        let mut z2 = z1.clone();
        z2.swap(0, 1);
        let a = psi_left(&z1, &st, q).unwrap();
        let b = psi_left(&z2, &st, q).unwrap();
        assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "{a} vs {b}");
    }

    // H Psi^l = (1-q)(z_1 + ... + z_k) Psi^l applied numerically on states
    #[test]
    fn left_eigenrelation_on_window() {
        let q = 0.5;
        for (k, z) in [
            (2usize, zs(&[(0.4, 0.5), (-0.2, -0.8)])),
            (3, zs(&[(0.3, 0.6), (1.7, 0.2), (-0.4, -0.5)])),
        ] {
            let eig: Complex64 =
                (1.0 - q) * z.iter().sum::<Complex64>();
            // sample ordered states, including clustered ones
            let states: Vec<OrderedState> = match k {
                2 => vec![vec![2, 1], vec![1, 1], vec![0, -2], vec![3, 3]],
                _ => vec![vec![2, 1, 0], vec![1, 1, 1], vec![2, 2, -1]],
            }
            .into_iter()
            .map(|n| OrderedState::new(n).unwrap())
            .collect();
            for st in &states {
                let lhs = apply_generator(|s| psi_left(&z, s, q).unwrap(), st, q);
                let rhs = eig * psi_left(&z, st, q).unwrap();
                assert!(
                    (lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()),
                    "k={k} state {:?}: {lhs} vs {rhs}",
                    st.n
                );
            }
        }
    }

    // H^t Psi^r = (1-q)(z_1 + ... + z_k) Psi^r
    #[test]
    fn right_eigenrelation_on_window() {
        let q = 0.5;
        let z = zs(&[(0.4, 0.5), (-0.2, -0.8)]);
        let eig: Complex64 = (1.0 - q) * z.iter().sum::<Complex64>();
        for n in [vec![2, 1], vec![1, 1], vec![0, -1], vec![-1, -1]] {
            let st = OrderedState::new(n).unwrap();
            let lhs = apply_generator_transpose(|s| psi_right(&z, s, q).unwrap(), &st, q);
            let rhs = eig * psi_right(&z, &st, q).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()),
                "state {:?}: {lhs} vs {rhs}",
                st.n
            );
        }
    }

    #[test]
    fn eigenrelations_at_many_random_spectral_points() {
        let q = 0.35;
        let st = OrderedState::new(vec![1, 1]).unwrap();
        let mut x = 0.7_f64;
        for _ in 0..20 {
            x = (x * 997.3 + 0.1).fract();
            let z = zs(&[(2.0 * x - 1.0, 0.9 - x), (x + 0.2, -0.3 - x)]);
            if check_ok(&z) {
                let eig: Complex64 = (1.0 - q) * z.iter().sum::<Complex64>();
                let lhs = apply_generator(|s| psi_left(&z, s, q).unwrap(), &st, q);
                let rhs = eig * psi_left(&z, &st, q).unwrap();
                assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
            }
        }
    }

    fn check_ok(z: &[Complex64]) -> bool {
        z.iter().all(|w| (w - 1.0).norm() > 1e-3)
            && (z[0] - z[1]).norm() > 1e-3
    }

    #[test]
    fn coincident_spectral_rejected() {
        let st = OrderedState::new(vec![1]).unwrap();
        let z = zs(&[(0.5, 0.5), (0.5, 0.5)]);
        let st2 = OrderedState::new(vec![1, 0]).unwrap();
        assert!(psi_left(&zs(&[(0.2, 0.1)]), &st, 0.5).is_ok());
        assert!(matches!(
            psi_left(&z, &st2, 0.5),
            Err(BetheError::CoincidentSpectral { .. })
        ));
    }

    #[test]
    fn cluster_bookkeeping() {
        let st = OrderedState::new(vec![2, 2, 2, 1, 0, 0, 0, -1, -3, -3]).unwrap();
        assert_eq!(st.clusters(), vec![3, 1, 3, 1, 2]);
        let dec = st.decrement_cluster(0);
        assert_eq!(dec.n, vec![2, 2, 1, 1, 0, 0, 0, -1, -3, -3]);
        let dec4 = st.decrement_cluster(4);
        assert_eq!(dec4.n, vec![2, 2, 2, 1, 0, 0, 0, -1, -3, -4]);
    }
}
