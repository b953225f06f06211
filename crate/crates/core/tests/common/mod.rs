//! Independent oracles shared by the integration tests. None of them call
//! into the library's numerical kernels.

#![allow(dead_code)]

/// Eigenvalues `λ₁ < λ₂` of `-u''` on `(0, a)` with `u'(0) + αu(0) = 0`,
/// `u'(a) + βu(a) = 0`, by a ghost-point finite difference scheme on `n`
/// intervals, symmetrized, and Sturm bisection.
pub fn fd_robin_pair(a: f64, alpha: f64, beta: f64, n: usize) -> (f64, f64) {
    let h = a / n as f64;
    let h2 = h * h;
    // symmetric tridiagonal S = D^{-1/2} A D^{-1/2}, D = diag(1/2, 1, …, 1, 1/2)
    let mut diag = vec![2.0 / h2; n + 1];
    let mut off = vec![-1.0 / h2; n];
    diag[0] = 2.0 * (1.0 - h * alpha) / h2;
    diag[n] = 2.0 * (1.0 + h * beta) / h2;
    off[0] = -(2f64).sqrt() / h2;
    off[n - 1] = -(2f64).sqrt() / h2;
    let count_below = |lambda: f64| -> usize {
        let mut d = diag[0] - lambda;
        let mut count = usize::from(d < 0.0);
        for i in 1..=n {
            let prev = if d == 0.0 { 1e-300 } else { d };
            d = diag[i] - lambda - off[i - 1] * off[i - 1] / prev;
            count += usize::from(d < 0.0);
        }
        count
    };
    let kth = |k: usize| -> f64 {
        // Gershgorin interval
        let mut lo = diag.iter().fold(f64::MAX, |m, v| m.min(*v)) - 4.0 / h2;
        let mut hi = (4.0 * std::f64::consts::PI / a).powi(2) + 1.0;
        while count_below(hi) < k {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if count_below(mid) >= k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-13 * hi.abs().max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    (kth(1), kth(2))
}

/// `𝒜(s) = e^s − 1 − s`, written independently of the library.
pub fn a_fn(s: f64) -> f64 {
    s.exp_m1() - s
}

/// `ℬ(s) = (1+s)ln(1+s) − s`.
pub fn b_fn(s: f64) -> f64 {
    (1.0 + s) * s.ln_1p() - s
}

/// Brute-force dual supremum `sup{Σ wᵢfᵢgᵢ : gᵢ ≥ 0, Σ wᵢ𝒜(gᵢ) ≤ 1}` for three
/// nodes: a grid over `(g₁, g₂)`, `g₃` solved from the active constraint,
/// followed by zoomed grids around the best point.
pub fn dual_sup3(f: [f64; 3], w: [f64; 3]) -> f64 {
    // largest g with wᵢ𝒜(g) ≤ budget
    let g_max = |wi: f64, budget: f64| -> f64 {
        if budget <= 0.0 {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        while wi * a_fn(hi) < budget {
            hi *= 2.0;
        }
        for _ in 0..56 {
            let mid = 0.5 * (lo + hi);
            if wi * a_fn(mid) <= budget {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let value = |g1: f64, g2: f64| -> f64 {
        let rest = 1.0 - w[0] * a_fn(g1) - w[1] * a_fn(g2);
        if rest < 0.0 {
            return f64::NEG_INFINITY;
        }
        let g3 = g_max(w[2], rest);
        w[0] * f[0] * g1 + w[1] * f[1] * g2 + w[2] * f[2] * g3
    };
    let (mut c1, mut c2) = (0.0, 0.0);
    let (mut r1, mut r2) = (g_max(w[0], 1.0), g_max(w[1], 1.0));
    let mut lo1 = 0.0;
    let mut lo2 = 0.0;
    let mut best = f64::NEG_INFINITY;
    for _pass in 0..5 {
        let n = 200;
        let (s1, s2) = (r1 / n as f64, r2 / n as f64);
        for i in 0..=n {
            for j in 0..=n {
                let (g1, g2) = (lo1 + i as f64 * s1, lo2 + j as f64 * s2);
                let v = value(g1, g2);
                if v > best {
                    best = v;
                    c1 = g1;
                    c2 = g2;
                }
            }
        }
        r1 = 4.0 * s1;
        r2 = 4.0 * s2;
        lo1 = (c1 - 0.5 * r1).max(0.0);
        lo2 = (c2 - 0.5 * r2).max(0.0);
    }
    best
}

/// Number of negative eigenvalues of `-ψ'' - q(x)ψ` on `(-L, L)` with
/// Dirichlet ends, as the number of interior zeros of the zero-energy
/// solution, tracked through the Prüfer angle with RK4 steps of size `step`.
pub fn shooting_count(q: impl Fn(f64) -> f64, half_length: f64, step: f64) -> usize {
    // ψ = r sin θ, ψ' = r cos θ  ⇒  θ' = cos²θ + q sin²θ
    let rhs = |x: f64, t: f64| {
        let (s, c) = t.sin_cos();
        c * c + q(x) * s * s
    };
    let n = (2.0 * half_length / step).round() as usize;
    let h = 2.0 * half_length / n as f64;
    let mut theta = 0.0;
    let mut x = -half_length;
    for _ in 0..n {
        let k1 = rhs(x, theta);
        let k2 = rhs(x + 0.5 * h, theta + 0.5 * h * k1);
        let k3 = rhs(x + 0.5 * h, theta + 0.5 * h * k2);
        let k4 = rhs(x + h, theta + h * k3);
        theta += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x += h;
    }
    // zeros in the open interval: θ passes kπ for k = 1, 2, …
    (theta / std::f64::consts::PI).floor() as usize
}
