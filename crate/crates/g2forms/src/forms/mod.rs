//! Exterior algebra over a fixed basis of an n-dimensional real vector space
//! (n <= 8): alternating k-forms with dense coefficients over sorted
//! multi-indices, wedge and interior products, pullbacks, metric pairings,
//! musical isomorphisms and the Hodge star.
//!
//! Conventions. A k-form is a k-linear alternating map; the stored
//! coefficient on the sorted multi-index `(i1 < ... < ik)` is the value of
//! the form on `(e_{i1}, ..., e_{ik})`. The wedge product follows the
//! determinant normalization
//!
//! ```text
//! alpha ^ beta = (r+s)!/(r!s!) Alt(alpha (x) beta),
//! ```
//!
//! so that in components `(theta ^ omega)_{ijk} = theta_i omega_{jk}
//! - theta_j omega_{ik} + theta_k omega_{ij}` for degrees (1,2), and basis
//! monomials multiply by index merging: `e^1 ^ e^2 = e^12`.

mod hodge;
mod linear_map;
mod metric;

pub use hodge::hodge_star;
pub use linear_map::LinearMap;
pub use metric::{dual_interior, flat, form_inner, norm2, sharp, tensor_norm2, Metric};

use crate::error::FormError;
use crate::linalg;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest ambient dimension supported by the dense storage.
pub const MAX_DIM: usize = 8;

/// Default absolute tolerance for coefficient comparisons.
pub const EPS: f64 = 1e-9;

/// Strictly increasing tuple of basis labels in `1..=n`, identifying one
/// basis monomial `e^{i1} ^ ... ^ e^{ik}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    len: u8,
    idx: [u8; MAX_DIM],
}

impl MultiIndex {
    /// Builds a multi-index from strictly increasing labels.
    pub fn new(labels: &[u8]) -> Result<Self, FormError> {
        if labels.len() > MAX_DIM {
            return Err(FormError::BadMultiIndex(labels.to_vec(), MAX_DIM));
        }
        let mut idx = [0u8; MAX_DIM];
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 || (i > 0 && labels[i - 1] >= l) {
                return Err(FormError::BadMultiIndex(labels.to_vec(), MAX_DIM));
            }
            idx[i] = l;
        }
        Ok(MultiIndex {
            len: labels.len() as u8,
            idx,
        })
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.idx[..self.len as usize]
    }

    pub fn contains(&self, label: u8) -> bool {
        self.labels().contains(&label)
    }

    /// Lexicographic rank among all degree-k subsets of `{1..n}`.
    pub fn rank(&self, dim: usize) -> usize {
        let k = self.degree();
        let mut rank = 0usize;
        let mut prev = 0usize;
        for (j, &ij) in self.labels().iter().enumerate() {
            for v in prev + 1..ij as usize {
                rank += linalg::binomial(dim - v, k - j - 1);
            }
            prev = ij as usize;
        }
        rank
    }

    /// Inverse of [`MultiIndex::rank`].
    pub fn from_rank(dim: usize, degree: usize, mut rank: usize) -> Self {
        let mut idx = [0u8; MAX_DIM];
        let mut v = 1usize;
        for (j, slot) in idx.iter_mut().enumerate().take(degree) {
            loop {
                let count = linalg::binomial(dim - v, degree - j - 1);
                if rank < count {
                    *slot = v as u8;
                    v += 1;
                    break;
                }
                rank -= count;
                v += 1;
            }
        }
        MultiIndex {
            len: degree as u8,
            idx,
        }
    }

    /// The complement within `{1..n}`, in increasing order.
    pub fn complement(&self, dim: usize) -> Self {
        let mut idx = [0u8; MAX_DIM];
        let mut len = 0;
        for v in 1..=dim as u8 {
            if !self.contains(v) {
                idx[len] = v;
                len += 1;
            }
        }
        MultiIndex {
            len: len as u8,
            idx,
        }
    }
}

/// Iterates all sorted multi-indices of one degree in lexicographic order.
pub fn multi_indices(dim: usize, degree: usize) -> impl Iterator<Item = MultiIndex> {
    (0..linalg::binomial(dim, degree)).map(move |r| MultiIndex::from_rank(dim, degree, r))
}

/// Sorts `labels` in place and returns the permutation sign, or `None` when a
/// label repeats (the corresponding monomial vanishes).
pub fn sort_labels(labels: &mut [u8]) -> Option<f64> {
    let mut sign = 1.0;
    // insertion sort; inputs have at most 8 entries
    for i in 1..labels.len() {
        let mut j = i;
        while j > 0 && labels[j - 1] > labels[j] {
            labels.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in labels.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

/// Column vector of components against the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    comps: Vec<f64>,
}

impl Vector {
    pub fn new(comps: Vec<f64>) -> Result<Self, FormError> {
        if comps.iter().any(|c| !c.is_finite()) {
            return Err(FormError::NonFinite("vector"));
        }
        Ok(Vector { comps })
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            comps: vec![0.0; dim],
        }
    }

    /// The basis vector `e_label` (1-based).
    pub fn basis(dim: usize, label: u8) -> Self {
        let mut comps = vec![0.0; dim];
        comps[(label - 1) as usize] = 1.0;
        Vector { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.comps
    }

    pub fn get(&self, label: u8) -> f64 {
        self.comps[(label - 1) as usize]
    }

    pub fn scale(&self, s: f64) -> Self {
        Vector {
            comps: self.comps.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

/// Alternating k-form with dense coefficients over sorted multi-indices.
#[derive(Debug, Clone, PartialEq)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        KForm {
            dim,
            degree,
            coeffs: vec![0.0; linalg::binomial(dim, degree)],
        }
    }

    /// The constant function 1 viewed as a 0-form.
    pub fn one(dim: usize) -> Self {
        let mut f = KForm::zero(dim, 0);
        f.coeffs[0] = 1.0;
        f
    }

    /// Builds a form from `(labels, coefficient)` terms. Labels need not be
    /// sorted; the alternating sign is applied, and repeated labels are
    /// rejected.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(&[u8], f64)]) -> Result<Self, FormError> {
        let mut form = KForm::zero(dim, degree);
        for (labels, coeff) in terms {
            form.add_term(labels, *coeff)?;
        }
        Ok(form)
    }

    /// Adds `coeff` times the monomial with the given (possibly unsorted)
    /// labels.
    pub fn add_term(&mut self, labels: &[u8], coeff: f64) -> Result<(), FormError> {
        if labels.len() != self.degree {
            return Err(FormError::DegreeMismatch(labels.len(), self.degree));
        }
        if !coeff.is_finite() {
            return Err(FormError::NonFinite("form coefficient"));
        }
        if labels.iter().any(|&l| l == 0 || l as usize > self.dim) {
            return Err(FormError::BadMultiIndex(labels.to_vec(), self.dim));
        }
        let mut sorted = labels.to_vec();
        match sort_labels(&mut sorted) {
            None => Err(FormError::BadMultiIndex(labels.to_vec(), self.dim)),
            Some(sign) => {
                let mi = MultiIndex::new(&sorted)?;
                let r = mi.rank(self.dim);
                self.coeffs[r] += sign * coeff;
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient on a sorted multi-index.
    pub fn coeff(&self, mi: &MultiIndex) -> f64 {
        debug_assert_eq!(mi.degree(), self.degree);
        self.coeffs[mi.rank(self.dim)]
    }

    pub fn set_coeff(&mut self, mi: &MultiIndex, value: f64) {
        debug_assert_eq!(mi.degree(), self.degree);
        let r = mi.rank(self.dim);
        self.coeffs[r] = value;
    }

    /// Fully alternating component lookup: labels may be unsorted, repeats
    /// give 0.
    pub fn component(&self, labels: &[u8]) -> f64 {
        if labels.len() != self.degree {
            return 0.0;
        }
        let mut sorted = labels.to_vec();
        match sort_labels(&mut sorted) {
            None => 0.0,
            Some(sign) => {
                let mi = MultiIndex::new(&sorted).expect("sorted labels");
                sign * self.coeff(&mi)
            }
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coefficients_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Iterates `(multi-index, coefficient)` over nonzero entries.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, f64)> + '_ {
        self.coeffs.iter().enumerate().filter_map(move |(r, &c)| {
            if c != 0.0 {
                Some((MultiIndex::from_rank(self.dim, self.degree, r), c))
            } else {
                None
            }
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Copy with every coefficient of magnitude at most `tol` set to zero;
    /// used when printing solver output that carries round-off dust.
    pub fn chop(&self, tol: f64) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| if c.abs() <= tol { 0.0 } else { c })
                .collect(),
        }
    }

    /// Coefficient-wise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &KForm, tol: f64) -> bool {
        self.dim == other.dim
            && self.degree == other.degree
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn scale(&self, s: f64) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Re-embeds the form in a larger ambient space, keeping all indices.
    pub fn embed(&self, dim: usize) -> KForm {
        assert!(dim >= self.dim);
        let mut out = KForm::zero(dim, self.degree);
        for (mi, c) in self.terms() {
            out.add_term(mi.labels(), c).expect("valid labels");
        }
        out
    }

    /// Wedge product. Degrees add; when they exceed the ambient dimension the
    /// result is the zero form of that degree.
    pub fn wedge(&self, other: &KForm) -> Result<KForm, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = KForm::zero(self.dim, self.degree + other.degree);
        if self.degree + other.degree > self.dim {
            return Ok(out);
        }
        let mut merged = Vec::with_capacity(self.degree + other.degree);
        for (mi_a, ca) in self.terms() {
            for (mi_b, cb) in other.terms() {
                merged.clear();
                merged.extend_from_slice(mi_a.labels());
                merged.extend_from_slice(mi_b.labels());
                if let Some(sign) = sort_labels(&mut merged) {
                    let mi = MultiIndex::new(&merged).expect("sorted");
                    let r = mi.rank(self.dim);
                    out.coeffs[r] += sign * ca * cb;
                }
            }
        }
        Ok(out)
    }

    /// Interior product `i_X`; an antiderivation of degree -1.
    pub fn interior(&self, x: &Vector) -> Result<KForm, FormError> {
        if self.degree == 0 {
            return Err(FormError::InteriorDegreeZero);
        }
        if x.dim() != self.dim {
            return Err(FormError::DimensionMismatch(x.dim(), self.dim));
        }
        let mut out = KForm::zero(self.dim, self.degree - 1);
        for (mi, c) in self.terms() {
            for (pos, &label) in mi.labels().iter().enumerate() {
                let xc = x.get(label);
                if xc == 0.0 {
                    continue;
                }
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                let rest: Vec<u8> = mi
                    .labels()
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != pos)
                    .map(|(_, &l)| l)
                    .collect();
                let sub = MultiIndex::new(&rest).expect("sorted");
                let r = sub.rank(self.dim);
                out.coeffs[r] += sign * xc * c;
            }
        }
        Ok(out)
    }

    /// Evaluates the form as an alternating multilinear map.
    pub fn eval(&self, vectors: &[Vector]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        if self.degree == 0 {
            return self.coeffs[0];
        }
        let k = self.degree;
        let mut total = 0.0;
        let mut minor = vec![0.0; k * k];
        for (mi, c) in self.terms() {
            for (row, &label) in mi.labels().iter().enumerate() {
                for (col, v) in vectors.iter().enumerate() {
                    minor[row * k + col] = v.get(label);
                }
            }
            total += c * linalg::det_in_place(&mut minor, k);
        }
        total
    }
}

impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        assert_eq!(self.dim, rhs.dim);
        assert_eq!(self.degree, rhs.degree);
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        assert_eq!(self.dim, rhs.dim);
        assert_eq!(self.degree, rhs.degree);
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &KForm {
    type Output = KForm;
    fn mul(self, rhs: f64) -> KForm {
        self.scale(rhs)
    }
}

/// Canonical coefficient format shared by the structure-constant notation,
/// structure files and the CLI: integers print bare, simple fractions print
/// as `p/q`, everything else uses the shortest round-trip decimal.
pub fn format_coefficient(value: f64) -> String {
    if value == value.round() && value.abs() < 1e15 {
        return format!("{}", value as i64);
    }
    if let Some((p, q)) = small_rational(value) {
        return format!("{p}/{q}");
    }
    format!("{value}")
}

/// Reconstructs `value` as `p/q` with `q <= 9999` when the match is exact to
/// 1e-12 relative.
fn small_rational(value: f64) -> Option<(i64, i64)> {
    let mut best: Option<(i64, i64)> = None;
    for q in 2..=9999i64 {
        let p = (value * q as f64).round();
        if p.abs() > 1e12 {
            continue;
        }
        if (p / q as f64 - value).abs() <= 1e-12 * value.abs().max(1.0) {
            best = Some((p as i64, q));
            break;
        }
    }
    best.filter(|&(p, q)| gcd(p.unsigned_abs(), q.unsigned_abs()) == 1)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for KForm {
    /// Canonical text: terms in lexicographic multi-index order, joined with
    /// `+`/`-`, no spaces; unit coefficients are left implicit. A 0-form
    /// prints its single coefficient, the zero form prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", format_coefficient(self.coeffs[0]));
        }
        let mut wrote = false;
        for (mi, c) in self.terms() {
            let mag = c.abs();
            let sign = c < 0.0;
            if wrote {
                write!(f, "{}", if sign { "-" } else { "+" })?;
            } else if sign {
                write!(f, "-")?;
            }
            if mag != 1.0 {
                write!(f, "{}", format_coefficient(mag))?;
            }
            write!(f, "e")?;
            for l in mi.labels() {
                write!(f, "{l}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(dim: usize, degree: usize, terms: &[(&[u8], f64)]) -> KForm {
        KForm::from_terms(dim, degree, terms).unwrap()
    }

    #[test]
    fn multi_index_rank_round_trip() {
        for dim in 1..=8 {
            for degree in 0..=dim {
                for (expected, mi) in multi_indices(dim, degree).enumerate() {
                    assert_eq!(mi.rank(dim), expected);
                    assert_eq!(MultiIndex::from_rank(dim, degree, expected), mi);
                }
            }
        }
    }

    #[test]
    fn wedge_of_basis_monomials() {
        let e1 = form(3, 1, &[(&[1], 1.0)]);
        let e2 = form(3, 1, &[(&[2], 1.0)]);
        let w = e1.wedge(&e2).unwrap();
        assert_eq!(w.component(&[1, 2]), 1.0);
        assert_eq!(w.component(&[2, 1]), -1.0);
    }

    #[test]
    fn wedge_component_formula_degree_one_two() {
        // (theta ^ omega)_{ijk} = theta_i omega_{jk} - theta_j omega_{ik} + theta_k omega_{ij}
        let theta = form(3, 1, &[(&[1], 1.0)]);
        let omega = form(3, 2, &[(&[2, 3], 1.0)]);
        let w = theta.wedge(&omega).unwrap();
        assert_eq!(w.component(&[1, 2, 3]), 1.0);
        assert_eq!(w.component(&[2, 1, 3]), -1.0);
    }

    #[test]
    fn wedge_beyond_dimension_is_zero() {
        let a = form(3, 2, &[(&[1, 2], 1.0)]);
        let b = form(3, 2, &[(&[2, 3], 1.0)]);
        let w = a.wedge(&b).unwrap();
        assert_eq!(w.degree(), 4);
        assert!(w.is_zero(0.0));
    }

    #[test]
    fn wedge_dimension_mismatch_is_error() {
        let a = form(3, 1, &[(&[1], 1.0)]);
        let b = form(4, 1, &[(&[1], 1.0)]);
        assert!(matches!(
            a.wedge(&b),
            Err(FormError::DimensionMismatch(3, 4))
        ));
    }

    #[test]
    fn interior_of_basis_monomial() {
        let e12 = form(2, 2, &[(&[1, 2], 1.0)]);
        let out = e12.interior(&Vector::basis(2, 1)).unwrap();
        assert_eq!(out.component(&[2]), 1.0);
        let out2 = e12.interior(&Vector::basis(2, 2)).unwrap();
        assert_eq!(out2.component(&[1]), -1.0);
    }

    #[test]
    fn interior_degree_zero_is_error() {
        let c = KForm::one(3);
        assert!(matches!(
            c.interior(&Vector::basis(3, 1)),
            Err(FormError::InteriorDegreeZero)
        ));
    }

    #[test]
    fn interior_twice_vanishes() {
        let a = form(4, 3, &[(&[1, 2, 3], 2.0), (&[1, 2, 4], -1.5), (&[2, 3, 4], 0.25)]);
        let x = Vector::new(vec![0.3, -1.2, 0.7, 2.0]).unwrap();
        let once = a.interior(&x).unwrap();
        let twice = once.interior(&x).unwrap();
        assert!(twice.is_zero(1e-14));
    }

    #[test]
    fn interior_contracts_model_three_form() {
        // i_{e7} of the dimension-7 model 3-form leaves e12+e34+e56
        let phi = form(
            7,
            3,
            &[
                (&[1, 2, 7], 1.0),
                (&[3, 4, 7], 1.0),
                (&[5, 6, 7], 1.0),
                (&[1, 3, 5], 1.0),
                (&[1, 4, 6], -1.0),
                (&[2, 3, 6], -1.0),
                (&[2, 4, 5], -1.0),
            ],
        );
        let out = phi.interior(&Vector::basis(7, 7)).unwrap();
        let expected = form(7, 2, &[(&[1, 2], 1.0), (&[3, 4], 1.0), (&[5, 6], 1.0)]);
        assert!(out.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn eval_matches_components() {
        let a = form(4, 2, &[(&[1, 2], 2.0), (&[3, 4], -1.0)]);
        let u = Vector::new(vec![1.0, 0.0, 2.0, 0.0]).unwrap();
        let v = Vector::new(vec![0.0, 1.0, 0.0, 3.0]).unwrap();
        // a(u, v) = 2 * (u1 v2 - u2 v1) - (u3 v4 - u4 v3) = 2 - 6
        assert!((a.eval(&[u, v]) + 4.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_finite_and_bad_indices() {
        let mut z = KForm::zero(3, 1);
        assert!(z.add_term(&[1], f64::NAN).is_err());
        assert!(z.add_term(&[4], 1.0).is_err());
        assert!(KForm::from_terms(3, 2, &[(&[1, 1], 1.0)]).is_err());
    }

    #[test]
    fn canonical_display() {
        let a = form(
            7,
            2,
            &[
                (&[1, 2], 5.0 / 7.0),
                (&[1, 4], -3.0 / 7.0),
                (&[2, 3], 3.0 / 7.0),
                (&[3, 4], -1.0 / 7.0),
                (&[5, 6], -1.0),
            ],
        );
        assert_eq!(a.to_string(), "5/7e12-3/7e14+3/7e23-1/7e34-e56");
        assert_eq!(KForm::zero(3, 2).to_string(), "0");
        let neg = form(7, 1, &[(&[7], -1.0)]);
        assert_eq!(neg.to_string(), "-e7");
        let sc = form(6, 2, &[(&[1, 4], 2.0)]);
        assert_eq!(sc.to_string(), "2e14");
    }

    #[test]
    fn display_uses_shortest_decimal_for_irrational() {
        let c = 3.0f64.sqrt() / 18.0;
        let a = form(6, 2, &[(&[1, 4], -c)]);
        let printed = a.to_string();
        let tail = printed.strip_prefix('-').unwrap();
        let coeff: f64 = tail.split('e').next().unwrap().parse().unwrap();
        assert_eq!(coeff, c);
    }
}
