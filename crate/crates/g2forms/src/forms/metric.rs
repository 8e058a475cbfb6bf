//! Inner products: symmetric positive-definite metrics, the induced
//! Gram-determinant pairing on k-forms, musical isomorphisms and the metric
//! contraction of a 1-form against a 2-form.

use super::{KForm, Vector};
use crate::error::FormError;
use crate::linalg;

/// Symmetric positive-definite bilinear form with a cached inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    n: usize,
    mat: Vec<f64>,
    inv: Vec<f64>,
}

impl Metric {
    /// Validates symmetry and positive definiteness, then caches the inverse.
    pub fn new(n: usize, mat: Vec<f64>) -> Result<Self, FormError> {
        if mat.len() != n * n {
            return Err(FormError::ShapeMismatch {
                rows: n,
                cols: n,
                with: format!("{} entries", mat.len()),
            });
        }
        if mat.iter().any(|x| !x.is_finite()) {
            return Err(FormError::NonFinite("metric"));
        }
        let scale = mat.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        for i in 0..n {
            for j in i + 1..n {
                if (mat[i * n + j] - mat[j * n + i]).abs() > 1e-9 * scale {
                    return Err(FormError::NotSymmetric);
                }
            }
        }
        let (values, _) = linalg::jacobi_eigen(&mat, n);
        if values.iter().any(|&l| l <= 1e-9 * scale.min(1.0) || l <= 0.0) {
            return Err(FormError::NotPositiveDefinite);
        }
        let inv = linalg::invert(&mat, n).ok_or(FormError::Singular)?;
        // sanity: inverse * matrix = identity to 1e-10
        let prod = linalg::mat_mul(&inv, &mat, n, n, n);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                if (prod[i * n + j] - want).abs() > 1e-10 {
                    return Err(FormError::Singular);
                }
            }
        }
        Ok(Metric { n, mat, inv })
    }

    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0.0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1.0;
        }
        Metric {
            n,
            mat: mat.clone(),
            inv: mat,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[f64] {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &[f64] {
        &self.inv
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mat[i * self.n + j]
    }

    pub fn det(&self) -> f64 {
        linalg::det(&self.mat, self.n)
    }

    pub fn inner_vec(&self, u: &Vector, v: &Vector) -> f64 {
        debug_assert_eq!(u.dim(), self.n);
        debug_assert_eq!(v.dim(), self.n);
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.mat[i * self.n + j] * u.components()[i] * v.components()[j];
            }
        }
        s
    }

    pub fn norm_vec(&self, u: &Vector) -> f64 {
        self.inner_vec(u, u).sqrt()
    }

    pub fn approx_eq(&self, other: &Metric, tol: f64) -> bool {
        self.n == other.n
            && self
                .mat
                .iter()
                .zip(&other.mat)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Maximum absolute deviation from the identity matrix.
    pub fn deviation_from_identity(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.mat[i * self.n + j] - want).abs());
            }
        }
        worst
    }
}

/// Gram-determinant pairing of two k-forms:
/// `<a, b> = sum_{I,J} a_I b_J det(g^{-1}[I, J])`. Basis monomials of an
/// orthonormal coframe are orthonormal for it.
pub fn form_inner(a: &KForm, b: &KForm, g: &Metric) -> Result<f64, FormError> {
    if a.dim() != b.dim() || a.dim() != g.dim() {
        return Err(FormError::DimensionMismatch(a.dim(), b.dim().min(g.dim())));
    }
    if a.degree() != b.degree() {
        return Err(FormError::DegreeMismatch(a.degree(), b.degree()));
    }
    let k = a.degree();
    let n = g.dim();
    if k == 0 {
        return Ok(a.coefficients()[0] * b.coefficients()[0]);
    }
    let mut total = 0.0;
    let mut minor = vec![0.0; k * k];
    for (mi, ca) in a.terms() {
        for (mj, cb) in b.terms() {
            for (r, &i_label) in mi.labels().iter().enumerate() {
                for (s, &j_label) in mj.labels().iter().enumerate() {
                    minor[r * k + s] =
                        g.inverse_matrix()[(i_label as usize - 1) * n + (j_label as usize - 1)];
                }
            }
            total += ca * cb * linalg::det_in_place(&mut minor, k);
        }
    }
    Ok(total)
}

/// Squared Gram norm `<a, a>`.
pub fn norm2(a: &KForm, g: &Metric) -> Result<f64, FormError> {
    form_inner(a, a, g)
}

/// Squared norm by full index contraction,
/// `a_{i1..ik} g^{i1 j1} ... g^{ik jk} a_{j1..jk}` summed over all tuples;
/// equals `k!` times [`norm2`].
pub fn tensor_norm2(a: &KForm, g: &Metric) -> Result<f64, FormError> {
    let mut factorial = 1.0;
    for i in 2..=a.degree() {
        factorial *= i as f64;
    }
    Ok(factorial * norm2(a, g)?)
}

/// Index-raising: the vector `X` with `theta(.) = g(X, .)`.
pub fn sharp(theta: &KForm, g: &Metric) -> Result<Vector, FormError> {
    if theta.degree() != 1 {
        return Err(FormError::DegreeMismatch(theta.degree(), 1));
    }
    if theta.dim() != g.dim() {
        return Err(FormError::DimensionMismatch(theta.dim(), g.dim()));
    }
    let n = g.dim();
    let mut comps = vec![0.0; n];
    for (i, slot) in comps.iter_mut().enumerate() {
        let mut s = 0.0;
        for j in 0..n {
            s += g.inverse_matrix()[i * n + j] * theta.component(&[(j + 1) as u8]);
        }
        *slot = s;
    }
    Vector::new(comps)
}

/// Index-lowering: the 1-form `g(X, .)`.
pub fn flat(x: &Vector, g: &Metric) -> Result<KForm, FormError> {
    if x.dim() != g.dim() {
        return Err(FormError::DimensionMismatch(x.dim(), g.dim()));
    }
    let n = g.dim();
    let mut out = KForm::zero(n, 1);
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            s += g.matrix()[i * n + j] * x.components()[j];
        }
        out.add_term(&[(i + 1) as u8], s)?;
    }
    Ok(out)
}

/// The metric contraction `u` of a 1-form against a 2-form,
/// `u_i = g^{rk} theta_r omega_{ki}`; coincides with the interior product of
/// `omega` by the metric dual of `theta`.
pub fn dual_interior(theta: &KForm, omega: &KForm, g: &Metric) -> Result<KForm, FormError> {
    if theta.degree() != 1 {
        return Err(FormError::DegreeMismatch(theta.degree(), 1));
    }
    if omega.degree() != 2 {
        return Err(FormError::DegreeMismatch(omega.degree(), 2));
    }
    if theta.dim() != g.dim() || omega.dim() != g.dim() {
        return Err(FormError::DimensionMismatch(theta.dim(), omega.dim()));
    }
    let n = g.dim();
    let mut out = KForm::zero(n, 1);
    for i in 1..=n as u8 {
        let mut s = 0.0;
        for r in 1..=n as u8 {
            let tr = theta.component(&[r]);
            if tr == 0.0 {
                continue;
            }
            for k in 1..=n as u8 {
                let ginv = g.inverse_matrix()[(r as usize - 1) * n + (k as usize - 1)];
                if ginv == 0.0 {
                    continue;
                }
                s += ginv * tr * omega.component(&[k, i]);
            }
        }
        out.add_term(&[i], s)?;
    }
    Ok(out)
}
