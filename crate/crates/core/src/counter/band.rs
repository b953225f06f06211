//! Symmetric band matrices and their inertia.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bunch's pivot growth constant `(1 + √17)/8`.
pub(crate) const BUNCH_ALPHA: f64 = 0.640_388_203_202_208;

/// Counts of negative, zero and positive eigenvalues.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

impl Inertia {
    pub fn total(&self) -> usize {
        self.neg + self.zero + self.pos
    }

    pub(crate) fn record(&mut self, value: f64, zero_tol: f64) {
        if value.abs() <= zero_tol {
            self.zero += 1;
        } else if value < 0.0 {
            self.neg += 1;
        } else {
            self.pos += 1;
        }
    }

    /// Classifies both eigenvalues of a symmetric 2×2 block.
    pub(crate) fn record_block(&mut self, a: f64, b: f64, c: f64, zero_tol: f64) {
        let mean = 0.5 * (a + c);
        let radius = (0.5 * (a - c)).hypot(b);
        self.record(mean - radius, zero_tol);
        self.record(mean + radius, zero_tol);
    }

    /// Inertia from a list of eigenvalues.
    pub fn from_eigenvalues(values: impl IntoIterator<Item = f64>, zero_tol: f64) -> Self {
        let mut inertia = Inertia::default();
        for v in values {
            inertia.record(v, zero_tol);
        }
        inertia
    }
}

/// Symmetric matrix with `bandwidth` sub-diagonals; lower band stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBand {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl SymBand {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        Self {
            n,
            bw: bandwidth,
            data: vec![0.0; n * (bandwidth + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && i - j <= self.bw);
        i * (self.bw + 1) + (i - j)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if i - j > self.bw {
            0.0
        } else {
            self.data[self.idx(i, j)]
        }
    }

    /// Adds `v` to the symmetric pair `(i, j)`, `(j, i)`.
    ///
    /// Panics if the entry lies outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        assert!(
            i - j <= self.bw,
            "entry ({i}, {j}) outside bandwidth {}",
            self.bw
        );
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Nonzero entries of the full symmetric matrix in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let lo = i.saturating_sub(self.bw);
            let hi = (i + self.bw).min(self.n - 1);
            for j in lo..=hi {
                let v = self.get(i, j);
                if v != 0.0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn default_zero_tolerance(&self) -> f64 {
        1e-10 * self.max_abs()
    }

    /// Inertia by a block `LDLᵀ` factorization that keeps the band.
    ///
    /// No interchanges are made; a 2×2 pivot on rows `k, k+1` is taken when
    /// the diagonal entry fails Bunch's test against its column. Fails with
    /// [`Error::FactorizationBreakdown`] when neither pivot is usable.
    pub fn inertia(&self, zero_tol: f64) -> Result<Inertia> {
        let (n, bw) = (self.n, self.bw);
        let stride = bw + 1;
        let mut a = self.data.clone();
        let at = |i: usize, j: usize| i * stride + (i - j);
        let mut inertia = Inertia::default();
        let mut col = vec![0.0; bw + 2];
        let mut col2 = vec![0.0; bw + 2];
        let mut k = 0;
        while k < n {
            let last = (k + bw).min(n - 1);
            let akk = a[at(k, k)];
            let mut colmax = 0.0f64;
            for i in k + 1..=last {
                colmax = colmax.max(a[at(i, k)].abs());
            }
            let mut one_by_one = colmax == 0.0 || akk.abs() >= BUNCH_ALPHA * colmax || k + 1 == n;
            let mut det = 0.0;
            if !one_by_one {
                let (e00, e10, e11) = (akk, a[at(k + 1, k)], a[at(k + 1, k + 1)]);
                det = e00 * e11 - e10 * e10;
                let scale = e00.abs().max(e10.abs()).max(e11.abs()).max(colmax);
                if det.abs() <= 1e-14 * scale * scale {
                    if akk == 0.0 {
                        return Err(Error::FactorizationBreakdown { index: k, dim: n });
                    }
                    one_by_one = true;
                }
            }
            if one_by_one {
                inertia.record(akk, zero_tol);
                if colmax == 0.0 {
                    k += 1;
                    continue;
                }
                let m = last - k;
                for (t, i) in (k + 1..=last).enumerate() {
                    col[t] = a[at(i, k)];
                }
                for ti in 0..m {
                    let li = col[ti] / akk;
                    if li == 0.0 {
                        continue;
                    }
                    let i = k + 1 + ti;
                    for tj in 0..=ti {
                        let j = k + 1 + tj;
                        a[at(i, j)] -= li * col[tj];
                    }
                }
                k += 1;
            } else {
                let (e00, e10, e11) = (akk, a[at(k + 1, k)], a[at(k + 1, k + 1)]);
                inertia.record_block(e00, e10, e11, zero_tol);
                let last2 = (k + 1 + bw).min(n - 1);
                let m = last2.saturating_sub(k + 1);
                for t in 0..m {
                    let i = k + 2 + t;
                    col[t] = if i - k <= bw { a[at(i, k)] } else { 0.0 };
                    col2[t] = a[at(i, k + 1)];
                }
                let (i00, i01, i11) = (e11 / det, -e10 / det, e00 / det);
                for ti in 0..m {
                    // row ti of C E⁻¹
                    let l0 = col[ti] * i00 + col2[ti] * i01;
                    let l1 = col[ti] * i01 + col2[ti] * i11;
                    if l0 == 0.0 && l1 == 0.0 {
                        continue;
                    }
                    let i = k + 2 + ti;
                    for tj in 0..=ti {
                        let j = k + 2 + tj;
                        a[at(i, j)] -= l0 * col[tj] + l1 * col2[tj];
                    }
                }
                k += 2;
            }
        }
        Ok(inertia)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_inertia() {
        let mut m = SymBand::zeros(3, 1);
        m.add(0, 0, -1.0);
        m.add(1, 1, 2.0);
        let inertia = m.inertia(1e-12).unwrap();
        assert_eq!(
            inertia,
            Inertia {
                neg: 1,
                zero: 1,
                pos: 1
            }
        );
    }

    #[test]
    fn zero_diagonal_needs_a_block_pivot() {
        // [[0, 1], [1, 0]] has eigenvalues ±1
        let mut m = SymBand::zeros(2, 1);
        m.add(1, 0, 1.0);
        assert_eq!(
            m.inertia(1e-12).unwrap(),
            Inertia {
                neg: 1,
                zero: 0,
                pos: 1
            }
        );
    }

    #[test]
    fn singular_block_breaks_down() {
        // leading 2×2 block [[0, 0], [0, 0]] with coupling further down
        let mut m = SymBand::zeros(3, 2);
        m.add(2, 0, 1.0);
        assert!(matches!(
            m.inertia(0.0),
            Err(Error::FactorizationBreakdown { .. })
        ));
    }

    #[test]
    fn tridiagonal_laplacian_shift() {
        // eigenvalues 2 - 2cos(kπ/(n+1)); count those below a shift
        let n = 50;
        let shift = 1.0;
        let mut m = SymBand::zeros(n, 1);
        for i in 0..n {
            m.add(i, i, 2.0 - shift);
            if i > 0 {
                m.add(i, i - 1, -1.0);
            }
        }
        let expected = (1..=n)
            .filter(|k| {
                2.0 - 2.0 * (*k as f64 * std::f64::consts::PI / (n + 1) as f64).cos() < shift
            })
            .count();
        assert_eq!(m.inertia(1e-12).unwrap().neg, expected);
    }
}
