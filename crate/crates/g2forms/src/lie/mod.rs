//! Lie algebras given by structure constants: the Chevalley-Eilenberg
//! differential on the dual coframe, Jacobi/derivation/automorphism
//! predicates, realification of complex matrices, rank-one extensions, the
//! matrix exponential and candidate lattice scans.
//!
//! An algebra is stored through the 2-forms `de^k` on its coframe; the
//! brackets are recovered from `de^k(e_i, e_j) = -e^k([e_i, e_j])`.

mod exp;
mod salamon;

pub use exp::{lattice_scan, matrix_exp, LatticeStep};
pub use salamon::{parse_form, parse_algebra_at as parse_salamon_in_line, parse_form_at as parse_form_in_line};

use crate::error::{FormError, ParseError, StructureError};
use crate::forms::{KForm, LinearMap, Vector};

/// Default tolerance for the structural predicates in this module.
pub const EPS: f64 = 1e-9;

/// Lie algebra of dimension `n <= 8` described by its coframe differentials.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    /// `differentials[k]` is the 2-form `de^{k+1}`.
    differentials: Vec<KForm>,
}

impl LieAlgebra {
    /// Builds an algebra from the 2-forms `de^1, ..., de^n`. The Jacobi
    /// identity (`d . d = 0`) is checked and violations are rejected.
    pub fn new(differentials: Vec<KForm>) -> Result<Self, StructureError> {
        let alg = Self::new_unchecked(differentials)?;
        let residual = alg.jacobi_residual();
        if residual > EPS {
            return Err(StructureError::JacobiFailed(residual));
        }
        Ok(alg)
    }

    /// Same as [`LieAlgebra::new`] but skips the Jacobi check; used to probe
    /// would-be algebras that are expected to fail it.
    pub fn new_unchecked(differentials: Vec<KForm>) -> Result<Self, StructureError> {
        let dim = differentials.len();
        for d in &differentials {
            if d.dim() != dim {
                return Err(FormError::DimensionMismatch(d.dim(), dim).into());
            }
            if d.degree() != 2 {
                return Err(FormError::DegreeMismatch(d.degree(), 2).into());
            }
        }
        Ok(LieAlgebra { dim, differentials })
    }

    /// The abelian algebra: every coframe differential vanishes.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            differentials: (0..dim).map(|_| KForm::zero(dim, 2)).collect(),
        }
    }

    /// Parses the tuple notation `(de^1, ..., de^n)`, e.g.
    /// `(0,0,0,0,e14+e23,e13-e24)`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        salamon::parse_algebra(text)
    }

    /// Canonical tuple notation; `parse . to_string` is the identity and
    /// `to_string . parse` is the identity on canonical text.
    pub fn to_salamon(&self) -> String {
        salamon::print_algebra(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The 2-form `de^k` (1-based coframe label).
    pub fn differential_of_coframe(&self, k: u8) -> &KForm {
        &self.differentials[(k - 1) as usize]
    }

    pub fn differentials(&self) -> &[KForm] {
        &self.differentials
    }

    /// Bracket of two vectors, `[u, v]^k = -de^k(u, v)`.
    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let comps = self
            .differentials
            .iter()
            .map(|dk| -dk.eval(&[u.clone(), v.clone()]))
            .collect();
        Vector::new(comps).expect("finite bracket")
    }

    /// Chevalley-Eilenberg differential, extended from the coframe table as
    /// an antiderivation: `d(e^{i1..ik}) = sum_r (-1)^{r-1}
    /// e^{i1..} ^ de^{i_r} ^ e^{..ik}`.
    pub fn d(&self, a: &KForm) -> KForm {
        assert_eq!(a.dim(), self.dim, "form lives on a different algebra");
        let k = a.degree();
        let mut out = KForm::zero(self.dim, k + 1);
        if k == 0 || k + 1 > self.dim {
            return out;
        }
        for (mi, c) in a.terms() {
            for (pos, &label) in mi.labels().iter().enumerate() {
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                let mut prefix = KForm::one(self.dim);
                for (q, &other) in mi.labels().iter().enumerate() {
                    if q == pos {
                        continue;
                    }
                    let e = KForm::from_terms(self.dim, 1, &[(&[other], 1.0)]).expect("basis");
                    prefix = prefix.wedge(&e).expect("same dim");
                }
                // d(e^I) with e^{i_r} replaced by de^{i_r}, which commutes to
                // the front through pos coframe factors.
                let piece = self.differentials[(label - 1) as usize]
                    .wedge(&prefix)
                    .expect("same dim");
                out = &out + &piece.scale(sign * c);
            }
        }
        out
    }

    /// Worst `d(de^k)` coefficient over all coframe labels; zero iff the
    /// Jacobi identity holds.
    pub fn jacobi_residual(&self) -> f64 {
        self.differentials
            .iter()
            .map(|dk| self.d(dk).max_abs())
            .fold(0.0, f64::max)
    }

    pub fn satisfies_jacobi(&self, tol: f64) -> bool {
        self.jacobi_residual() <= tol
    }

    /// Leibniz residual of a square matrix acting as a candidate derivation:
    /// max over basis pairs of `|D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]|`.
    pub fn derivation_residual(&self, m: &LinearMap) -> Result<f64, FormError> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(FormError::ShapeMismatch {
                rows: m.rows(),
                cols: m.cols(),
                with: format!("algebra of dimension {}", self.dim),
            });
        }
        let mut worst = 0.0f64;
        for i in 1..=self.dim as u8 {
            for j in (i + 1)..=self.dim as u8 {
                let ei = Vector::basis(self.dim, i);
                let ej = Vector::basis(self.dim, j);
                let lhs = m.apply(&self.bracket(&ei, &ej))?;
                let rhs = self
                    .bracket(&m.apply(&ei)?, &ej)
                    .add(&self.bracket(&ei, &m.apply(&ej)?));
                worst = worst.max(lhs.add(&rhs.scale(-1.0)).max_abs());
            }
        }
        Ok(worst)
    }

    pub fn is_derivation(&self, m: &LinearMap, tol: f64) -> bool {
        matches!(self.derivation_residual(m), Ok(r) if r <= tol)
    }

    /// Automorphism residual: max over basis pairs of
    /// `|L[e_i,e_j] - [Le_i, Le_j]|`.
    pub fn automorphism_residual(&self, l: &LinearMap) -> Result<f64, FormError> {
        if l.rows() != self.dim || l.cols() != self.dim {
            return Err(FormError::ShapeMismatch {
                rows: l.rows(),
                cols: l.cols(),
                with: format!("algebra of dimension {}", self.dim),
            });
        }
        let mut worst = 0.0f64;
        for i in 1..=self.dim as u8 {
            for j in (i + 1)..=self.dim as u8 {
                let ei = Vector::basis(self.dim, i);
                let ej = Vector::basis(self.dim, j);
                let lhs = l.apply(&self.bracket(&ei, &ej))?;
                let rhs = self.bracket(&l.apply(&ei)?, &l.apply(&ej)?);
                worst = worst.max(lhs.add(&rhs.scale(-1.0)).max_abs());
            }
        }
        Ok(worst)
    }

    pub fn is_automorphism(&self, l: &LinearMap, tol: f64) -> bool {
        matches!(self.automorphism_residual(l), Ok(r) if r <= tol)
    }

    /// Conjugates the algebra by an invertible map `p` whose columns are the
    /// new basis vectors: the new bracket is `p^{-1} [p u, p v]`.
    pub fn change_basis(&self, p: &LinearMap) -> Result<LieAlgebra, StructureError> {
        let p_inv = p.inverse()?;
        let n = self.dim;
        let mut differentials = Vec::with_capacity(n);
        for k in 0..n {
            let mut dk = KForm::zero(n, 2);
            for i in 1..=n as u8 {
                for j in (i + 1)..=n as u8 {
                    let bi = p.apply(&Vector::basis(n, i))?;
                    let bj = p.apply(&Vector::basis(n, j))?;
                    let br = p_inv.apply(&self.bracket(&bi, &bj))?;
                    dk.add_term(&[i, j], -br.components()[k])?;
                }
            }
            differentials.push(dk);
        }
        LieAlgebra::new(differentials)
    }
}

/// A derivation paired with the algebra it acts on; construction validates
/// the Leibniz rule.
#[derive(Debug, Clone)]
pub struct Derivation {
    base: LieAlgebra,
    matrix: LinearMap,
}

impl Derivation {
    pub fn new(base: LieAlgebra, matrix: LinearMap) -> Result<Self, StructureError> {
        let residual = base.derivation_residual(&matrix)?;
        if residual > EPS {
            return Err(StructureError::NotDerivation(residual));
        }
        Ok(Derivation { base, matrix })
    }

    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn matrix(&self) -> &LinearMap {
        &self.matrix
    }
}

/// Rank-one extension by a derivation: the algebra on `h + R xi` with
/// `[xi, u] = D u`. On the dual coframe this reads
/// `d e^k = d_h e^k + (e^k . D) ^ eta` with `eta = e^{n+1}` closed.
pub fn extend(h: &LieAlgebra, d: &LinearMap) -> Result<LieAlgebra, StructureError> {
    let residual = h.derivation_residual(d)?;
    if residual > EPS {
        return Err(StructureError::NotDerivation(residual));
    }
    let g = extend_unchecked(h, d)?;
    debug_assert!(g.satisfies_jacobi(1e-10));
    Ok(g)
}

/// The extension coframe table without the derivation check; a non-derivation
/// produces a tuple that fails the Jacobi identity.
pub fn extend_unchecked(h: &LieAlgebra, d: &LinearMap) -> Result<LieAlgebra, StructureError> {
    let n = h.dim();
    if d.rows() != n || d.cols() != n {
        return Err(FormError::ShapeMismatch {
            rows: d.rows(),
            cols: d.cols(),
            with: format!("algebra of dimension {n}"),
        }
        .into());
    }
    let eta = KForm::from_terms(n + 1, 1, &[(&[(n + 1) as u8], 1.0)])?;
    let mut differentials = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut row = KForm::zero(n + 1, 1);
        for j in 0..n {
            row.add_term(&[(j + 1) as u8], d.get(k, j))?;
        }
        let extended = h.differentials()[k].embed(n + 1);
        differentials.push(&extended + &row.wedge(&eta)?);
    }
    differentials.push(KForm::zero(n + 1, 2));
    LieAlgebra::new_unchecked(differentials)
}

/// A complex number; only what the realification map needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex { re: 0.0, im: 0.0 }
    }
}

impl std::ops::Mul for Complex {
    type Output = Complex;
    fn mul(self, other: Complex) -> Complex {
        Complex {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }
}

impl std::ops::Add for Complex {
    type Output = Complex;
    fn add(self, other: Complex) -> Complex {
        Complex {
            re: self.re + other.re,
            im: self.im + other.im,
        }
    }
}

/// Realification of a complex 3x3 matrix: each entry becomes the 2x2 block
/// `[[Re, Im], [-Im, Re]]`, giving an algebra homomorphism
/// `gl(3, C) -> gl(6, R)`.
pub fn realify(a: &[[Complex; 3]; 3]) -> LinearMap {
    let mut m = LinearMap::zero(6, 6);
    for (i, row) in a.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            m.set(2 * i, 2 * j, z.re);
            m.set(2 * i, 2 * j + 1, z.im);
            m.set(2 * i + 1, 2 * j, -z.im);
            m.set(2 * i + 1, 2 * j + 1, z.re);
        }
    }
    m
}

/// Complex product of two 3x3 matrices, for the homomorphism tests.
pub fn complex_mat_mul(a: &[[Complex; 3]; 3], b: &[[Complex; 3]; 3]) -> [[Complex; 3]; 3] {
    let mut out = [[Complex::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = Complex::zero();
            for k in 0..3 {
                s = s + a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Orthogonal projection of a 6x6 matrix onto the realifications of
/// traceless complex 3x3 matrices, together with the projection residual.
/// A residual at tolerance zero certifies the block structure required by
/// the rank-one extension construction.
pub fn realified_traceless_fit(d: &LinearMap) -> Result<(LinearMap, [[Complex; 3]; 3], f64), FormError> {
    if d.rows() != 6 || d.cols() != 6 {
        return Err(FormError::ShapeMismatch {
            rows: d.rows(),
            cols: d.cols(),
            with: "realified 3x3 complex matrix".into(),
        });
    }
    let mut a = [[Complex::zero(); 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // Frobenius-nearest block of the form [[p, q], [-q, p]]
            let p = 0.5 * (d.get(2 * i, 2 * j) + d.get(2 * i + 1, 2 * j + 1));
            let q = 0.5 * (d.get(2 * i, 2 * j + 1) - d.get(2 * i + 1, 2 * j));
            *entry = Complex::new(p, q);
        }
    }
    let trace = a[0][0] + a[1][1] + a[2][2];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i] + Complex::new(-trace.re / 3.0, -trace.im / 3.0);
    }
    let projected = realify(&a);
    let mut residual = 0.0f64;
    for r in 0..6 {
        for c in 0..6 {
            residual = residual.max((d.get(r, c) - projected.get(r, c)).abs());
        }
    }
    Ok((projected, a, residual))
}
