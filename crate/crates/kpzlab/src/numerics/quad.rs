use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Accurate to machine precision for n up to a few
/// thousand.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule mapped to a real interval [a, b].
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * half).collect(),
    )
}

/// Integrate f over [a, b] with panels of GL nodes, one panel per `panel_len`
/// of estimated phase/variation. The caller picks the panel count.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    panels: usize,
    nodes_per_panel: usize,
    mut f: F,
) -> f64 {
    let mut total = 0.0;
    let step = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + p as f64 * step;
        let (xs, ws) = gauss_legendre_on(lo, lo + step, nodes_per_panel);
        for (x, w) in xs.iter().zip(&ws) {
            total += w * f(*x);
        }
    }
    total
}

/// Discretization family used by the contour-integral and Fredholm layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    /// Equispaced nodes on a circle; weights carry the tangent differential
    /// so that sum(w_j f(z_j)) approximates the contour integral against
    /// dz/(2 pi i).
    CircleTrapezoid,
    /// Gauss-Legendre on a finite segment (vertical lines, mapped to
    /// dz/(2 pi i) for complex segments).
    SegmentGauss,
    /// Gauss-Legendre mapped onto a half line x = s + L u/(1-u).
    HalflineMapped,
}

/// A concrete quadrature rule: paired nodes and weights in the complex plane.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: QuadKind,
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
}

impl QuadratureRule {
    /// Trapezoid rule on the circle |z - center| = radius, measure dz/(2 pi i).
    pub fn circle(center: Complex64, radius: f64, m: usize) -> Self {
        assert!(m >= 1 && radius > 0.0);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for j in 0..m {
            let th = 2.0 * PI * (j as f64 + 0.5) / m as f64;
            let e = Complex64::new(th.cos(), th.sin());
            nodes.push(center + radius * e);
            // dz/(2 pi i) = r e^{i th} d th / (2 pi)
            weights.push(radius * e / m as f64);
        }
        QuadratureRule {
            kind: QuadKind::CircleTrapezoid,
            nodes,
            weights,
        }
    }

    /// Gauss-Legendre on the vertical segment from x0 - iY to x0 + iY,
    /// measure dz/(2 pi i) (so weights are real dy/(2 pi) values).
    pub fn vertical_segment(x0: f64, half_length: f64, m: usize) -> Self {
        let (ys, ws) = gauss_legendre_on(-half_length, half_length, m);
        QuadratureRule {
            kind: QuadKind::SegmentGauss,
            nodes: ys.iter().map(|y| Complex64::new(x0, *y)).collect(),
            weights: ws
                .iter()
                .map(|w| Complex64::new(w / (2.0 * PI), 0.0))
                .collect(),
        }
    }

    /// Mapped Gauss-Legendre on the half line (s, infinity) via
    /// x = s + L u/(1-u), u in (0,1); weights carry the Jacobian L/(1-u)^2.
    /// Measure is plain dx (real), for L^2(s, inf) kernel discretizations.
    pub fn halfline(s: f64, scale: f64, m: usize) -> Self {
        let (us, ws) = gauss_legendre_on(0.0, 1.0, m);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for (u, w) in us.iter().zip(&ws) {
            let den = 1.0 - u;
            nodes.push(Complex64::new(s + scale * u / den, 0.0));
            weights.push(Complex64::new(w * scale / (den * den), 0.0));
        }
        QuadratureRule {
            kind: QuadKind::HalflineMapped,
            nodes,
            weights,
        }
    }

    /// Apply the rule to an integrand.
    pub fn integrate<F: FnMut(Complex64) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| w * f(*z))
            .sum()
    }
}

/// Convenience alias for circle rules used by the nested-contour code.
pub type CircleRule = QuadratureRule;
