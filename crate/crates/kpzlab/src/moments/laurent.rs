//! Truncated multivariate Laurent arithmetic for iterated residue extraction.
//!
//! A `LaurentBox` stores the coefficients of a Laurent expansion in k local
//! variables eps_1..eps_k on a finite exponent box. Products are truncated
//! convolutions; the iterated residue of a term is the coefficient of
//! eps_1^{-1} ... eps_k^{-1}.
//!
//! Inverse factors are built structurally: whether an affine denominator has
//! an exactly vanishing constant term is decided from the pole-center
//! assignment, never from floating-point comparison, so valuations are always
//! exact. For a coincident denominator a eps_outer + b eps_inner, the
//! expansion runs in negative powers of the *outer* variable (the one
//! integrated later), matching the nesting of the original contours.

use num_complex::Complex64;

#[derive(Clone)]
pub struct LaurentBox {
    lo: Vec<i32>,
    len: Vec<usize>,
    strides: Vec<usize>,
    c: Vec<Complex64>,
}

impl LaurentBox {
    pub fn zero(lo: &[i32], hi: &[i32]) -> Self {
        assert_eq!(lo.len(), hi.len());
        let len: Vec<usize> = lo
            .iter()
            .zip(hi)
            .map(|(&l, &h)| {
                assert!(h >= l);
                (h - l + 1) as usize
            })
            .collect();
        let mut strides = vec![1usize; lo.len()];
        for j in (0..lo.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * len[j + 1];
        }
        let total: usize = len.iter().product();
        LaurentBox {
            lo: lo.to_vec(),
            len,
            strides,
            c: vec![Complex64::new(0.0, 0.0); total],
        }
    }

    pub fn k(&self) -> usize {
        self.lo.len()
    }

    fn offset(&self, exps: &[i32]) -> Option<usize> {
        let mut off = 0usize;
        for j in 0..self.k() {
            let rel = exps[j] - self.lo[j];
            if rel < 0 || rel as usize >= self.len[j] {
                return None;
            }
            off += rel as usize * self.strides[j];
        }
        Some(off)
    }

    pub fn set(&mut self, exps: &[i32], v: Complex64) {
        if let Some(off) = self.offset(exps) {
            self.c[off] = v;
        }
    }

    pub fn add_at(&mut self, exps: &[i32], v: Complex64) {
        if let Some(off) = self.offset(exps) {
            self.c[off] += v;
        }
    }

    pub fn get(&self, exps: &[i32]) -> Complex64 {
        self.offset(exps)
            .map(|off| self.c[off])
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn monomial(lo: &[i32], hi: &[i32], exps: &[i32], v: Complex64) -> Self {
        let mut b = Self::zero(lo, hi);
        b.set(exps, v);
        b
    }

    pub fn constant(lo: &[i32], hi: &[i32], v: Complex64) -> Self {
        let exps = vec![0i32; lo.len()];
        Self::monomial(lo, hi, &exps, v)
    }

    fn exps_of(&self, mut off: usize) -> Vec<i32> {
        let mut e = vec![0i32; self.k()];
        for j in 0..self.k() {
            let q = off / self.strides[j];
            off -= q * self.strides[j];
            e[j] = self.lo[j] + q as i32;
        }
        e
    }

    pub fn scale(&mut self, v: Complex64) {
        for c in &mut self.c {
            *c *= v;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.lo, other.lo);
        let hi: Vec<i32> = self
            .lo
            .iter()
            .zip(&self.len)
            .map(|(&l, &n)| l + n as i32 - 1)
            .collect();
        let mut out = Self::zero(&self.lo, &hi);
        // iterate the sparser operand on the outside
        let (a, b) = if self.c.iter().filter(|v| v.norm_sqr() != 0.0).count()
            <= other.c.iter().filter(|v| v.norm_sqr() != 0.0).count()
        {
            (self, other)
        } else {
            (other, self)
        };
        for (ia, &va) in a.c.iter().enumerate() {
            if va.norm_sqr() == 0.0 {
                continue;
            }
            let ea = a.exps_of(ia);
            for (ib, &vb) in b.c.iter().enumerate() {
                if vb.norm_sqr() == 0.0 {
                    continue;
                }
                let eb = b.exps_of(ib);
                let target: Vec<i32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                out.add_at(&target, va * vb);
            }
        }
        out
    }

    /// Affine polynomial c0 + sum coef_v eps_v.
    pub fn affine(lo: &[i32], hi: &[i32], c0: Complex64, lin: &[(usize, Complex64)]) -> Self {
        let mut b = Self::constant(lo, hi, c0);
        for &(var, coef) in lin {
            let mut e = vec![0i32; lo.len()];
            e[var] = 1;
            b.add_at(&e, coef);
        }
        b
    }

    /// Inverse of an affine factor with a structurally nonzero constant term:
    /// (c0 + L)^{-1} = (1/c0) sum_m (-L/c0)^m, truncated by the box.
    pub fn inverse_affine(
        lo: &[i32],
        hi: &[i32],
        c0: Complex64,
        lin: &[(usize, Complex64)],
    ) -> Self {
        assert!(c0.norm_sqr() > 0.0, "structural nonzero required");
        let ratio: Vec<(usize, Complex64)> =
            lin.iter().map(|&(v, a)| (v, -a / c0)).collect();
        let p = Self::affine(lo, hi, Complex64::new(0.0, 0.0), &ratio);
        let mut acc = Self::constant(lo, hi, Complex64::new(1.0, 0.0));
        let mut term = Self::constant(lo, hi, Complex64::new(1.0, 0.0));
        let degree_cap: i32 = hi.iter().sum::<i32>().max(1);
        for _ in 0..degree_cap {
            term = term.mul(&p);
            if term.c.iter().all(|v| v.norm_sqr() == 0.0) {
                break;
            }
            for (o, t) in acc.c.iter_mut().zip(&term.c) {
                *o += t;
            }
        }
        acc.scale(1.0 / c0);
        acc
    }

    /// Inverse of a eps_outer + b eps_inner whose constant term vanishes
    /// structurally (coincident pole centers):
    /// sum_{m>=0} (-b/a)^m a^{-1} eps_inner^m eps_outer^{-m-1}.
    pub fn inverse_coincident(
        lo: &[i32],
        hi: &[i32],
        outer: usize,
        a: Complex64,
        inner: usize,
        b: Complex64,
    ) -> Self {
        let mut out = Self::zero(lo, hi);
        let m_max = hi[inner].min(-lo[outer] - 1);
        let mut coef = 1.0 / a;
        for m in 0..=m_max.max(0) {
            let mut e = vec![0i32; lo.len()];
            e[inner] = m;
            e[outer] = -m - 1;
            out.add_at(&e, coef);
            coef *= -b / a;
        }
        out
    }

    /// exp(coef * eps_var), truncated.
    pub fn exp_single(lo: &[i32], hi: &[i32], var: usize, coef: Complex64) -> Self {
        let mut out = Self::zero(lo, hi);
        let mut term = Complex64::new(1.0, 0.0);
        for m in 0..=hi[var].max(0) {
            let mut e = vec![0i32; lo.len()];
            e[var] = m;
            out.add_at(&e, term);
            term *= coef / (m as f64 + 1.0);
        }
        out
    }

    /// Coefficient of eps_1^{-1} ... eps_k^{-1}: the iterated residue.
    pub fn residue(&self) -> Complex64 {
        let exps = vec![-1i32; self.k()];
        self.get(&exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn one_variable_simple_pole() {
        // Res_{z=1} e^{a z} / (1 - z) = -e^a: with z = 1 + eps,
        // 1/(1-z) = -1/eps
        let lo = [-3];
        let hi = [3];
        let a = 0.7_f64;
        let expfac = Complex64::from_polar(a.exp(), 0.0);
        let atom_exp = {
            let mut b = LaurentBox::exp_single(&lo, &hi, 0, c(a));
            b.scale(expfac);
            b
        };
        let pole = LaurentBox::monomial(&lo, &hi, &[-1], c(-1.0));
        let res = atom_exp.mul(&pole).residue();
        assert!((res - c(-a.exp())).norm() < 1e-12);
    }

    #[test]
    fn geometric_inverse_matches_direct() {
        // 1/(2 + eps) around eps = 0: coefficients (-1)^m / 2^{m+1}
        let lo = [-2];
        let hi = [6];
        let inv = LaurentBox::inverse_affine(&lo, &hi, c(2.0), &[(0, c(1.0))]);
        for m in 0..=6 {
            let want = (-1.0f64).powi(m) / 2.0f64.powi(m + 1);
            assert!((inv.get(&[m]) - c(want)).norm() < 1e-14);
        }
    }

    #[test]
    fn coincident_inverse_expansion_direction() {
        // 1/(e0 - q e1) = sum q^m e1^m e0^{-m-1}
        let lo = [-4, -4];
        let hi = [4, 4];
        let q = 0.5;
        let inv = LaurentBox::inverse_coincident(&lo, &hi, 0, c(1.0), 1, c(-q));
        for m in 0..=3 {
            assert!((inv.get(&[-m - 1, m]) - c(q.powi(m))).norm() < 1e-14);
        }
        assert!(inv.get(&[0, 0]).norm() < 1e-16);
    }

    #[test]
    fn two_variable_iterated_residue() {
        // f = 1/(e0 - 2 e1) * 1/e1 * g(e0), g analytic with g(0) = 3.
        // Inner residue in e1 at 0 first: coefficient of e1^{-1} in
        // (1/e1) * sum_m 2^m e1^m e0^{-m-1} is the m = 0 term: e0^{-1}.
        // Outer residue of 3-ish g: total = g(0) = 3.
        let lo = [-5, -5];
        let hi = [5, 5];
        let inv = LaurentBox::inverse_coincident(&lo, &hi, 0, c(1.0), 1, c(-2.0));
        let pole1 = LaurentBox::monomial(&lo, &hi, &[0, -1], c(1.0));
        let g = LaurentBox::affine(&lo, &hi, c(3.0), &[(0, c(1.0))]);
        let res = inv.mul(&pole1).mul(&g).residue();
        assert!((res - c(3.0)).norm() < 1e-13);
    }
}
