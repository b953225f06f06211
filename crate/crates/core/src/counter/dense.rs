//! Dense symmetric inertia: Bunch-Kaufman `LDLᵀ` and an eigenvalue fallback.

use nalgebra::DMatrix;

use super::band::{Inertia, BUNCH_ALPHA};

/// Inertia of a dense symmetric matrix by Bunch-Kaufman factorization with
/// symmetric interchanges. Only the lower triangle is read.
pub fn bunch_kaufman_inertia(matrix: &DMatrix<f64>, zero_tol: f64) -> Inertia {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    let mut a = matrix.clone();
    // symmetrize from the lower triangle
    for j in 0..n {
        for i in 0..j {
            a[(i, j)] = a[(j, i)];
        }
    }
    let mut inertia = Inertia::default();
    let mut k = 0;
    while k < n {
        let absakk = a[(k, k)].abs();
        let (mut r, mut colmax) = (k, 0.0f64);
        for i in k + 1..n {
            if a[(i, k)].abs() > colmax {
                colmax = a[(i, k)].abs();
                r = i;
            }
        }
        if absakk.max(colmax) == 0.0 {
            inertia.record(0.0, zero_tol);
            k += 1;
            continue;
        }
        let size = if absakk >= BUNCH_ALPHA * colmax {
            1
        } else {
            let mut rowmax = 0.0f64;
            for j in k..n {
                if j != r {
                    rowmax = rowmax.max(a[(r, j)].abs());
                }
            }
            if absakk * rowmax >= BUNCH_ALPHA * colmax * colmax {
                1
            } else if a[(r, r)].abs() >= BUNCH_ALPHA * rowmax {
                symmetric_swap(&mut a, k, r);
                1
            } else {
                symmetric_swap(&mut a, k + 1, r);
                2
            }
        };
        if size == 1 {
            let d = a[(k, k)];
            inertia.record(d, zero_tol);
            for i in k + 1..n {
                let li = a[(i, k)] / d;
                if li == 0.0 {
                    continue;
                }
                for j in k + 1..=i {
                    let v = a[(i, j)] - li * a[(j, k)];
                    a[(i, j)] = v;
                    a[(j, i)] = v;
                }
            }
            k += 1;
        } else {
            let (e00, e10, e11) = (a[(k, k)], a[(k + 1, k)], a[(k + 1, k + 1)]);
            inertia.record_block(e00, e10, e11, zero_tol);
            let det = e00 * e11 - e10 * e10;
            let (i00, i01, i11) = (e11 / det, -e10 / det, e00 / det);
            for i in k + 2..n {
                let (c0, c1) = (a[(i, k)], a[(i, k + 1)]);
                let l0 = c0 * i00 + c1 * i01;
                let l1 = c0 * i01 + c1 * i11;
                for j in k + 2..=i {
                    let v = a[(i, j)] - l0 * a[(j, k)] - l1 * a[(j, k + 1)];
                    a[(i, j)] = v;
                    a[(j, i)] = v;
                }
            }
            k += 2;
        }
    }
    inertia
}

fn symmetric_swap(a: &mut DMatrix<f64>, p: usize, q: usize) {
    if p != q {
        a.swap_rows(p, q);
        a.swap_columns(p, q);
    }
}

/// Inertia from a full symmetric eigendecomposition.
pub fn eigen_inertia(matrix: &DMatrix<f64>, zero_tol: f64) -> Inertia {
    let eig = matrix.clone().symmetric_eigen();
    Inertia::from_eigenvalues(eig.eigenvalues.iter().copied(), zero_tol)
}
