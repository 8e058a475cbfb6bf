//! Linear maps between based vector spaces, acting on vectors and by
//! pullback on forms.

use super::{multi_indices, KForm, MultiIndex, Vector};
use crate::error::FormError;
use crate::linalg;

/// Row-major `rows x cols` matrix of the map `L: R^cols -> R^rows`, with
/// entries `L(e_j) = sum_i a[i][j] e_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self, FormError> {
        if entries.len() != rows * cols {
            return Err(FormError::ShapeMismatch {
                rows,
                cols,
                with: format!("{} entries", entries.len()),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(FormError::NonFinite("linear map"));
        }
        Ok(LinearMap {
            rows,
            cols,
            a: entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            a: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinearMap::zero(n, n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    /// Square map from its columns: `columns[j]` is the image of `e_{j+1}`.
    pub fn from_columns(columns: &[Vector]) -> Result<Self, FormError> {
        let cols = columns.len();
        let rows = columns.first().map(Vector::dim).unwrap_or(0);
        let mut a = vec![0.0; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(FormError::DimensionMismatch(c.dim(), rows));
            }
            for i in 0..rows {
                a[i * cols + j] = c.components()[i];
            }
        }
        Ok(LinearMap { rows, cols, a })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.a
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.a[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.a[row * self.cols + col] = value;
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, FormError> {
        if v.dim() != self.cols {
            return Err(FormError::DimensionMismatch(v.dim(), self.cols));
        }
        let mut out = vec![0.0; self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..self.cols {
                s += self.a[i * self.cols + j] * v.components()[j];
            }
            *slot = s;
        }
        Vector::new(out)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, FormError> {
        if self.cols != other.rows {
            return Err(FormError::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                with: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(LinearMap {
            rows: self.rows,
            cols: other.cols,
            a: linalg::mat_mul(&self.a, &other.a, self.rows, self.cols, other.cols),
        })
    }

    pub fn transpose(&self) -> LinearMap {
        let mut t = LinearMap::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.a[j * self.rows + i] = self.a[i * self.cols + j];
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> LinearMap {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn approx_eq(&self, other: &LinearMap, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .a
                .iter()
                .zip(&other.a)
                .all(|(x, y)| (x - y).abs() <= tol)
    }

    pub fn det(&self) -> Result<f64, FormError> {
        if self.rows != self.cols {
            return Err(FormError::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                with: "determinant of a non-square map".into(),
            });
        }
        Ok(linalg::det(&self.a, self.rows))
    }

    pub fn inverse(&self) -> Result<LinearMap, FormError> {
        if self.rows != self.cols {
            return Err(FormError::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                with: "inverse of a non-square map".into(),
            });
        }
        match linalg::invert(&self.a, self.rows) {
            Some(a) => Ok(LinearMap {
                rows: self.rows,
                cols: self.cols,
                a,
            }),
            None => Err(FormError::Singular),
        }
    }

    /// Pullback on forms: `(L^* a)(X_1, ..., X_k) = a(L X_1, ..., L X_k)`.
    /// Takes a k-form on the codomain to a k-form on the domain; the
    /// coefficient on a domain multi-index J is the sum over codomain
    /// multi-indices I of `a_I det(L[I, J])`.
    pub fn pullback(&self, a: &KForm) -> Result<KForm, FormError> {
        if a.dim() != self.rows {
            return Err(FormError::DimensionMismatch(a.dim(), self.rows));
        }
        let k = a.degree();
        let mut out = KForm::zero(self.cols, k);
        if k == 0 {
            out.coefficients_mut()[0] = a.coefficients()[0];
            return Ok(out);
        }
        if k > self.cols {
            return Ok(out);
        }
        let mut minor = vec![0.0; k * k];
        let source_terms: Vec<(MultiIndex, f64)> = a.terms().collect();
        for target in multi_indices(self.cols, k) {
            let mut total = 0.0;
            for (mi, c) in &source_terms {
                for (r, &i_label) in mi.labels().iter().enumerate() {
                    for (s, &j_label) in target.labels().iter().enumerate() {
                        minor[r * k + s] =
                            self.a[(i_label as usize - 1) * self.cols + (j_label as usize - 1)];
                    }
                }
                total += c * linalg::det_in_place(&mut minor, k);
            }
            out.set_coeff(&target, total);
        }
        Ok(out)
    }
}
