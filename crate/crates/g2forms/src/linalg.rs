//! Small dense numerical kernels: LU determinant/solve/inverse, a cyclic
//! Jacobi eigensolver for symmetric matrices and a minimum-norm least-squares
//! solver built on it.
//!
//! All matrices are row-major `&[f64]` buffers. Sizes in this crate never
//! exceed a few dozen rows, so no pivoting strategy beyond partial pivoting
//! is needed.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Determinant by LU with partial pivoting. `a` is consumed as scratch.
pub fn det_in_place(a: &mut [f64], n: usize) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f != 0.0 {
                for j in col..n {
                    a[row * n + j] -= f * a[col * n + j];
                }
            }
        }
    }
    det
}

pub fn det(a: &[f64], n: usize) -> f64 {
    let mut scratch = a.to_vec();
    det_in_place(&mut scratch, n)
}

/// Solves `a x = b` for a square system; `None` when the pivot collapses.
pub fn solve(a: &[f64], n: usize, b: &[f64]) -> Option<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[row * n + col].abs() > m[pivot * n + col].abs() {
                pivot = row;
            }
        }
        let p = m[pivot * n + col];
        if p.abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            x.swap(col, pivot);
        }
        for row in col + 1..n {
            let f = m[row * n + col] / m[col * n + col];
            if f != 0.0 {
                for j in col..n {
                    m[row * n + j] -= f * m[col * n + j];
                }
                x[row] -= f * x[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for j in col + 1..n {
            s -= m[col * n + j] * x[j];
        }
        x[col] = s / m[col * n + col];
    }
    Some(x)
}

/// Matrix inverse column by column; `None` for singular input.
pub fn invert(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut inv = vec![0.0; n * n];
    let mut unit = vec![0.0; n];
    for col in 0..n {
        unit.iter_mut().for_each(|v| *v = 0.0);
        unit[col] = 1.0;
        let x = solve(a, n, &unit)?;
        for row in 0..n {
            inv[row * n + col] = x[row];
        }
    }
    Some(inv)
}

/// `a (rows x inner) * b (inner x cols)`, row-major.
pub fn mat_mul(a: &[f64], b: &[f64], rows: usize, inner: usize, cols: usize) -> Vec<f64> {
    debug_assert_eq!(a.len(), rows * inner);
    debug_assert_eq!(b.len(), inner * cols);
    let mut out = vec![0.0; rows * cols];
    for i in 0..rows {
        for k in 0..inner {
            let aik = a[i * inner + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..cols {
                out[i * cols + j] += aik * b[k * cols + j];
            }
        }
    }
    out
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns `(values, vectors)` with eigenvectors stored as columns of the
/// second buffer; `a = V diag(values) V^T`.
pub fn jacobi_eigen(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frobenius(&m, n)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    (values, v)
}

fn frobenius(a: &[f64], n: usize) -> f64 {
    a.iter().take(n * n).map(|x| x * x).sum::<f64>().sqrt()
}

/// Result of a least-squares solve of `a x = b`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    /// Minimum-norm solution of the normal equations.
    pub solution: Vec<f64>,
    /// Euclidean norm of `a x - b`.
    pub residual: f64,
    /// Numerical rank of `a`.
    pub rank: usize,
    /// Dimension of the kernel of `a` (columns minus rank).
    pub kernel_dim: usize,
}

/// Minimum-norm least squares via the eigen-decomposition of the Gram matrix
/// `a^T a`. Eigenvalues below `1e-12 * lambda_max` count as zero, which both
/// regularizes the pseudo-inverse and measures the kernel.
pub fn lstsq_min_norm(a: &[f64], rows: usize, cols: usize, b: &[f64]) -> LeastSquares {
    debug_assert_eq!(a.len(), rows * cols);
    debug_assert_eq!(b.len(), rows);
    // gram = a^T a, rhs = a^T b
    let mut gram = vec![0.0; cols * cols];
    let mut rhs = vec![0.0; cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut s = 0.0;
            for r in 0..rows {
                s += a[r * cols + i] * a[r * cols + j];
            }
            gram[i * cols + j] = s;
        }
        let mut s = 0.0;
        for r in 0..rows {
            s += a[r * cols + i] * b[r];
        }
        rhs[i] = s;
    }
    let (values, vectors) = jacobi_eigen(&gram, cols);
    let lambda_max = values.iter().cloned().fold(0.0f64, |m, x| m.max(x.abs()));
    let cutoff = 1e-12 * lambda_max.max(1e-300);
    let mut rank = 0;
    let mut solution = vec![0.0; cols];
    for k in 0..cols {
        if values[k].abs() <= cutoff {
            continue;
        }
        rank += 1;
        let mut proj = 0.0;
        for i in 0..cols {
            proj += vectors[i * cols + k] * rhs[i];
        }
        let scale = proj / values[k];
        for i in 0..cols {
            solution[i] += scale * vectors[i * cols + k];
        }
    }
    let mut residual = 0.0;
    for r in 0..rows {
        let mut s = -b[r];
        for c in 0..cols {
            s += a[r * cols + c] * solution[c];
        }
        residual += s * s;
    }
    LeastSquares {
        solution,
        residual: residual.sqrt(),
        rank,
        kernel_dim: cols - rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn det_and_inverse() {
        let a = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let d = det(&a, 3);
        assert!((d - 8.0).abs() < 1e-12);
        let inv = invert(&a, 3).unwrap();
        let prod = mat_mul(&a, &inv, 3, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod[i * 3 + j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_solve_is_none() {
        let a = [1.0, 2.0, 2.0, 4.0];
        assert!(solve(&a, 2, &[1.0, 1.0]).is_none());
        assert!(invert(&a, 2).is_none());
    }

    #[test]
    fn jacobi_recovers_spectrum() {
        // diag(1, 2, 5) conjugated by a rotation in the (0,1) plane
        let c = 0.6f64;
        let s = 0.8f64;
        let r = [c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0];
        let d = [1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 5.0];
        let rd = mat_mul(&r, &d, 3, 3, 3);
        let rt = [c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0];
        let a = mat_mul(&rd, &rt, 3, 3, 3);
        let (mut values, vectors) = jacobi_eigen(&a, 3);
        values.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((values[0] - 1.0).abs() < 1e-10);
        assert!((values[1] - 2.0).abs() < 1e-10);
        assert!((values[2] - 5.0).abs() < 1e-10);
        // columns are orthonormal
        for i in 0..3 {
            for j in 0..3 {
                let mut dot = 0.0;
                for k in 0..3 {
                    dot += vectors[k * 3 + i] * vectors[k * 3 + j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn least_squares_overdetermined() {
        // fit y = 2x + 1 through exact points
        let a = [1.0, 0.0, 1.0, 1.0, 1.0, 2.0];
        let b = [1.0, 3.0, 5.0];
        let ls = lstsq_min_norm(&a, 3, 2, &b);
        assert!((ls.solution[0] - 1.0).abs() < 1e-10);
        assert!((ls.solution[1] - 2.0).abs() < 1e-10);
        assert!(ls.residual < 1e-10);
        assert_eq!(ls.rank, 2);
        assert_eq!(ls.kernel_dim, 0);
    }

    #[test]
    fn least_squares_min_norm_on_rank_deficient() {
        // a projects onto the first coordinate twice; kernel is dim 1
        let a = [1.0, 1.0, 1.0, 1.0];
        let b = [2.0, 2.0];
        let ls = lstsq_min_norm(&a, 2, 2, &b);
        assert_eq!(ls.rank, 1);
        assert_eq!(ls.kernel_dim, 1);
        // minimum-norm solution spreads the weight evenly
        assert!((ls.solution[0] - 1.0).abs() < 1e-10);
        assert!((ls.solution[1] - 1.0).abs() < 1e-10);
        assert!(ls.residual < 1e-12);
    }
}
