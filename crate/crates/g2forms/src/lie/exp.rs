//! Matrix exponential by scaling-and-squaring with a degree-13 Pade
//! approximant, and the integer-lattice scan that conjugates `exp(tD)` into
//! a candidate rational basis.

use super::Derivation;
use crate::error::FormError;
use crate::forms::LinearMap;
use crate::linalg;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371920351148152;

/// `exp(t M)` for a square map, accurate to ~1e-14 relative for moderate
/// `|t| |M|`.
pub fn matrix_exp(m: &LinearMap, t: f64) -> Result<LinearMap, FormError> {
    if m.rows() != m.cols() {
        return Err(FormError::ShapeMismatch {
            rows: m.rows(),
            cols: m.cols(),
            with: "matrix exponential of a non-square map".into(),
        });
    }
    let n = m.rows();
    let a: Vec<f64> = m.entries().iter().map(|x| x * t).collect();
    // 1-norm (max column sum) drives the scaling power
    let mut norm1 = 0.0f64;
    for j in 0..n {
        let mut col = 0.0;
        for i in 0..n {
            col += a[i * n + j].abs();
        }
        norm1 = norm1.max(col);
    }
    let squarings = if norm1 > THETA13 {
        (norm1 / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let a: Vec<f64> = a.iter().map(|x| x * scale).collect();

    let identity = {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    };
    let a2 = linalg::mat_mul(&a, &a, n, n, n);
    let a4 = linalg::mat_mul(&a2, &a2, n, n, n);
    let a6 = linalg::mat_mul(&a2, &a4, n, n, n);

    // c0 I + w2 A2 + w4 A4 + w6 A6
    let lin = |c0: f64, w2: f64, w4: f64, w6: f64| -> Vec<f64> {
        (0..n * n)
            .map(|i| c0 * identity[i] + w2 * a2[i] + w4 * a4[i] + w6 * a6[i])
            .collect()
    };

    // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let inner = lin(0.0, PADE13[9], PADE13[11], PADE13[13]);
    let mut u = linalg::mat_mul(&a6, &inner, n, n, n);
    let tail = lin(PADE13[1], PADE13[3], PADE13[5], PADE13[7]);
    for i in 0..n * n {
        u[i] += tail[i];
    }
    let u = linalg::mat_mul(&a, &u, n, n, n);

    // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let inner_v = lin(0.0, PADE13[8], PADE13[10], PADE13[12]);
    let mut v = linalg::mat_mul(&a6, &inner_v, n, n, n);
    let tail_v = lin(PADE13[0], PADE13[2], PADE13[4], PADE13[6]);
    for i in 0..n * n {
        v[i] += tail_v[i];
    }

    // (v - u) X = (v + u)
    let mut vm = vec![0.0; n * n];
    let mut vp = vec![0.0; n * n];
    for i in 0..n * n {
        vm[i] = v[i] - u[i];
        vp[i] = v[i] + u[i];
    }
    let mut result = vec![0.0; n * n];
    let mut rhs_col = vec![0.0; n];
    for col in 0..n {
        for row in 0..n {
            rhs_col[row] = vp[row * n + col];
        }
        let x = linalg::solve(&vm, n, &rhs_col).ok_or(FormError::Singular)?;
        for row in 0..n {
            result[row * n + col] = x[row];
        }
    }
    for _ in 0..squarings {
        result = linalg::mat_mul(&result, &result, n, n, n);
    }
    LinearMap::new(n, n, result)
}

/// Report for one candidate parameter of a lattice scan.
#[derive(Debug, Clone)]
pub struct LatticeStep {
    pub t: f64,
    /// `basis^{-1} exp(t D) basis`.
    pub conjugated: LinearMap,
    /// Largest distance from an entry to the nearest integer.
    pub integer_deviation: f64,
    /// All entries within `tol` of integers.
    pub integer: bool,
    pub det: f64,
    /// `|det| = 1` within `tol`.
    pub unimodular: bool,
}

/// Conjugates `exp(t D)` into the column basis `basis_change` for each
/// candidate `t` and reports integrality and determinant. An integer,
/// determinant +-1 outcome certifies that the basis spans a lattice
/// preserved at that parameter.
pub fn lattice_scan(
    derivation: &Derivation,
    basis_change: &LinearMap,
    candidates: &[f64],
    tol: f64,
) -> Result<Vec<LatticeStep>, FormError> {
    let inverse = basis_change.inverse()?;
    let mut steps = Vec::with_capacity(candidates.len());
    for &t in candidates {
        let exp = matrix_exp(derivation.matrix(), t)?;
        let conjugated = inverse.compose(&exp)?.compose(basis_change)?;
        let mut integer_deviation = 0.0f64;
        for row in 0..conjugated.rows() {
            for col in 0..conjugated.cols() {
                let x = conjugated.get(row, col);
                integer_deviation = integer_deviation.max((x - x.round()).abs());
            }
        }
        let det = conjugated.det()?;
        steps.push(LatticeStep {
            t,
            integer_deviation,
            integer: integer_deviation <= tol,
            det,
            unimodular: (det.abs() - 1.0).abs() <= tol,
            conjugated,
        });
    }
    Ok(steps)
}
