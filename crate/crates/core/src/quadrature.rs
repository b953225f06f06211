//! Small fixed-rule quadrature helpers shared by the other modules.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are roots of `P_n`, found by Newton iteration from the
    /// Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Composite rule: `panels` equal panels on `[lo, hi]`.
    pub fn integrate<F: FnMut(f64) -> f64>(
        &self,
        lo: f64,
        hi: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let width = (hi - lo) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let a = lo + p as f64 * width;
            let mid = a + 0.5 * width;
            let half = 0.5 * width;
            let mut s = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += w * f(mid + half * x);
            }
            total += s * half;
        }
        total
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
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

/// Composite Simpson weights for `intervals` equal intervals of width `h`.
/// Falls back to the trapezoid rule when `intervals` is odd.
pub fn simpson_weights(intervals: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; intervals + 1];
    if intervals == 0 {
        return w;
    }
    if intervals % 2 == 1 {
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = if i == 0 || i == intervals { 0.5 * h } else { h };
        }
        return w;
    }
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = if i == 0 || i == intervals {
            h / 3.0
        } else if i % 2 == 1 {
            4.0 * h / 3.0
        } else {
            2.0 * h / 3.0
        };
    }
    w
}

/// Composite Boole weights (sixth order) for `intervals` equal intervals of
/// width `h`. Falls back to [`simpson_weights`] unless `intervals % 4 == 0`.
pub fn boole_weights(intervals: usize, h: f64) -> Vec<f64> {
    if intervals == 0 || !intervals.is_multiple_of(4) {
        return simpson_weights(intervals, h);
    }
    let c = 2.0 * h / 45.0;
    (0..=intervals)
        .map(|i| {
            if i == 0 || i == intervals {
                7.0 * c
            } else {
                match i % 4 {
                    0 => 14.0 * c,
                    2 => 12.0 * c,
                    _ => 32.0 * c,
                }
            }
        })
        .collect()
}
