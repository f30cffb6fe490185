//! Quadrature rules: Gauss–Legendre for smooth integrands and tanh-sinh for
//! integrands with endpoint singularities.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::ComplexValue as C;

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_a^b f, with f given the offset `u - a`.
    pub fn integrate<F: FnMut(f64) -> C>(&self, a: f64, b: f64, mut f: F) -> C {
        let half = 0.5 * (b - a);
        let mut s = C::new(0.0, 0.0);
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(half * (1.0 + x));
        }
        s * half
    }

    pub fn integrate_real<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.integrate(a, b, |t| C::new(f(t), 0.0)).re
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub fn gl6() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(6))
}

pub fn gl20() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(20))
}

const TS_MAX_LEVEL: u32 = 8;
const TS_S_MAX: f64 = 6.5;

/// Tanh-sinh quadrature of f over an interval of length `len`.
///
/// `f` receives the distances `(from_left, from_right)` of the node to the two
/// endpoints, both computed without cancellation, so integrands singular at
/// an endpoint can be evaluated accurately right up to it. Step halving stops
/// when successive estimates agree to `tol` (relative, with an absolute floor
/// of `tol * 1e-3`).
pub fn tanh_sinh<F: FnMut(f64, f64) -> C>(len: f64, tol: f64, mut f: F) -> C {
    let half = 0.5 * len;
    let mut eval = |s: f64| -> C {
        // node x = tanh(q); distance to the nearer end is len / (e^{2q} + 1)
        let q = FRAC_PI_2 * s.sinh();
        let e = (-2.0 * q.abs()).exp();
        let near = len * e / (1.0 + e);
        let weight = FRAC_PI_2 * s.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e)) * half;
        if weight == 0.0 || near == 0.0 {
            return C::new(0.0, 0.0);
        }
        let far = len - near;
        let v = if s >= 0.0 { f(far, near) } else { f(near, far) };
        v * weight
    };
    let mut step = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * step <= TS_S_MAX {
        let s = k as f64 * step;
        sum += eval(s) + eval(-s);
        k += 1;
    }
    let mut estimate = sum * step;
    for _ in 0..TS_MAX_LEVEL {
        step *= 0.5;
        let mut k = 1;
        while k as f64 * step <= TS_S_MAX {
            let s = k as f64 * step;
            sum += eval(s) + eval(-s);
            k += 2;
        }
        let next = sum * step;
        let diff = (next - estimate).norm();
        estimate = next;
        if diff <= tol * next.norm() + tol * 1e-3 {
            break;
        }
    }
    estimate
}
