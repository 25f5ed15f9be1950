use crate::numerics::QuadratureRule;
use num_complex::Complex64;

/// Tensor-product quadrature with a whole-tuple integrand: weights are
/// multiplied in, the integrand sees the full node vector. Suits integrands
/// that do not factor (permutation sums, determinants).
pub fn tensor_product_sum(
    rules: &[QuadratureRule],
    f: impl Fn(&[Complex64]) -> Complex64,
) -> Complex64 {
    let k = rules.len();
    let mut z = vec![Complex64::new(0.0, 0.0); k];
    fn rec(
        rules: &[QuadratureRule],
        f: &impl Fn(&[Complex64]) -> Complex64,
        d: usize,
        weight: Complex64,
        z: &mut Vec<Complex64>,
    ) -> Complex64 {
        if d == rules.len() {
            return weight * f(z);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (node, w) in rules[d].nodes.iter().zip(&rules[d].weights) {
            z[d] = *node;
            acc += rec(rules, f, d + 1, weight * w, z);
        }
        acc
    }
    rec(rules, &f, 0, Complex64::new(1.0, 0.0), &mut z)
}

/// Tensor-product evaluation of a k-fold contour integral whose integrand
/// factors as prod_j g_j(z_j) * prod_{A<B} cross(z_A, z_B).
///
/// `per_level[j][i]` already carries the quadrature weight; `cross[a][b]`
/// (a < b) is the pairwise factor tabulated on the node grids. The recursion
/// keeps partial products so each tuple costs O(k) multiplies.
pub struct TensorIntegrand {
    pub per_level: Vec<Vec<Complex64>>,
    /// cross[a][b - a - 1][ia][ib]
    pub cross: Vec<Vec<Vec<Vec<Complex64>>>>,
}

impl TensorIntegrand {
    pub fn build(
        rules: &[QuadratureRule],
        g: impl Fn(usize, Complex64) -> Complex64,
        cross: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Self {
        let k = rules.len();
        let per_level: Vec<Vec<Complex64>> = rules
            .iter()
            .enumerate()
            .map(|(j, rule)| {
                rule.nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&z, &w)| g(j, z) * w)
                    .collect()
            })
            .collect();
        let mut cross_tab = Vec::with_capacity(k);
        for a in 0..k {
            let mut row = Vec::new();
            for b in (a + 1)..k {
                let tab: Vec<Vec<Complex64>> = rules[a]
                    .nodes
                    .iter()
                    .map(|&za| rules[b].nodes.iter().map(|&zb| cross(za, zb)).collect())
                    .collect();
                row.push(tab);
            }
            cross_tab.push(row);
        }
        TensorIntegrand {
            per_level,
            cross: cross_tab,
        }
    }

    pub fn sum(&self) -> Complex64 {
        let k = self.per_level.len();
        let mut idx = vec![0usize; k];
        self.rec(0, Complex64::new(1.0, 0.0), &mut idx)
    }

    fn rec(&self, d: usize, partial: Complex64, idx: &mut Vec<usize>) -> Complex64 {
        if d == self.per_level.len() {
            return partial;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.per_level[d].len() {
            let mut factor = self.per_level[d][i];
            for a in 0..d {
                factor *= self.cross[a][d - a - 1][idx[a]][i];
            }
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            idx[d] = i;
            acc += self.rec(d + 1, partial * factor, idx);
        }
        acc
    }
}
