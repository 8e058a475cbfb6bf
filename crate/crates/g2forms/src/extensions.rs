//! Constructions that produce G2-structures from SU(3)-structures: the
//! rank-one extension of a coupled structure by a derivation in the
//! realified-traceless block pattern, the mapping-torus algebra (the
//! derivation-zero case, with closed eta), and cylinder/cone structures in a
//! warped calculus over the radial coordinate.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::StructureError;
use crate::forms::{KForm, LinearMap};
use crate::g2::{G2Class, G2Structure};
use crate::lie::{extend, realified_traceless_fit, LieAlgebra};
use crate::su3::{classify, Su3Structure};

/// Default tolerance for the verifications in this module.
pub const EPS: f64 = 1e-9;

/// Action of a square matrix on a form by derivation:
/// `(D . a)(X_1, .., X_k) = sum_i a(X_1, .., D X_i, .., X_k)`.
pub fn infinitesimal_action(d: &LinearMap, a: &KForm) -> Result<KForm, StructureError> {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return Err(crate::error::FormError::ShapeMismatch {
            rows: d.rows(),
            cols: d.cols(),
            with: format!("form of dimension {n}"),
        }
        .into());
    }
    let mut out = KForm::zero(n, a.degree());
    for (mi, c) in a.terms() {
        for (pos, &label) in mi.labels().iter().enumerate() {
            for j in 1..=n as u8 {
                let dji = d.get((j - 1) as usize, (label - 1) as usize);
                if dji == 0.0 {
                    continue;
                }
                let mut labels = mi.labels().to_vec();
                labels[pos] = j;
                let mut sorted = labels.clone();
                if let Some(sign) = crate::forms::sort_labels(&mut sorted) {
                    out.add_term(&sorted, sign * dji * c)?;
                }
            }
        }
    }
    Ok(out)
}

/// Result of a rank-one extension: the seven-dimensional algebra, the
/// G2-structure `phi = omega ^ eta + psi_plus` on it, and the verified
/// torsion data.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub algebra: LieAlgebra,
    pub structure: G2Structure,
    /// The closed 1-form dual to the new direction (`e^7`).
    pub eta: KForm,
    /// Coupled constant of the input structure.
    pub coupled_constant: f64,
    /// The expected Lee form `c eta`.
    pub expected_theta: KForm,
    pub class: G2Class,
    /// `|d phi + c eta ^ phi|`.
    pub lcc_residual: f64,
    /// `|lee_form - c eta|`.
    pub theta_residual: f64,
}

/// Extends a coupled structure on a six-dimensional algebra by a derivation
/// `D` that realifies a traceless complex matrix, producing a locally
/// conformal calibrated G2-structure with Lee form `c eta` on
/// `h + R xi`.
pub fn g2_from_coupled(
    alg6: &LieAlgebra,
    s: &Su3Structure,
    d: &LinearMap,
) -> Result<ExtensionResult, StructureError> {
    let class6 = classify(alg6, s, EPS);
    if !class6.coupled {
        return Err(StructureError::NotCoupled(class6.residuals.coupled));
    }
    let c = class6.coupled_constant;
    let leibniz = alg6.derivation_residual(d)?;
    if leibniz > EPS {
        return Err(StructureError::NotDerivation(leibniz));
    }
    let (_, _, pattern_residual) = realified_traceless_fit(d)?;
    if pattern_residual > EPS {
        return Err(StructureError::NotRealifiedTraceless(pattern_residual));
    }
    let algebra = extend(alg6, d)?;
    let eta = KForm::from_terms(7, 1, &[(&[7], 1.0)])?;
    let phi = &s.omega().embed(7).wedge(&eta)? + &s.psi_plus().embed(7);
    let structure = G2Structure::build(algebra.clone(), phi)?;
    let dphi = algebra.d(structure.phi());
    let lcc_residual = (&dphi + &eta.wedge(structure.phi())?.scale(c)).max_abs();
    let class = structure.classify(EPS);
    let expected_theta = eta.scale(c);
    let theta_residual = (&class.theta - &expected_theta).max_abs();
    Ok(ExtensionResult {
        algebra,
        structure,
        eta,
        coupled_constant: c,
        expected_theta,
        class,
        lcc_residual,
        theta_residual,
    })
}

/// Mapping-torus data for a nearly Kahler structure: the derivation-zero
/// extension carries a locally conformal parallel G2-structure whose Hodge
/// dual is `psi_minus ^ eta + omega^2 / 2`.
#[derive(Debug, Clone)]
pub struct NkTorusResult {
    pub extension: ExtensionResult,
    /// `|*phi - (psi_minus ^ eta + omega^2 / 2)|`.
    pub star_phi_residual: f64,
    /// `|d phi + 3 eta ^ phi|`.
    pub dphi_residual: f64,
    /// `|d *phi + 4 eta ^ *phi|`.
    pub dstar_residual: f64,
    /// Sign-convention probe inherited from the SU(3) classification.
    pub psi_minus_sign_flipped: bool,
}

pub fn nk_mapping_torus(
    alg6: &LieAlgebra,
    s: &Su3Structure,
) -> Result<NkTorusResult, StructureError> {
    let class6 = classify(alg6, s, EPS);
    if !class6.nearly_kahler {
        return Err(StructureError::NotNearlyKahler);
    }
    let extension = g2_from_coupled(alg6, s, &LinearMap::zero(6, 6))?;
    let eta = &extension.eta;
    let structure = &extension.structure;
    let expected_star = &s.psi_minus().embed(7).wedge(eta)?
        + &s.omega().embed(7).wedge(&s.omega().embed(7))?.scale(0.5);
    let star_phi_residual = (&expected_star - structure.star_phi()).max_abs();
    let dphi = structure.algebra().d(structure.phi());
    let dphi_residual = (&dphi + &eta.wedge(structure.phi())?.scale(3.0)).max_abs();
    let dstar = structure.algebra().d(structure.star_phi());
    let dstar_residual = (&dstar + &eta.wedge(structure.star_phi())?.scale(4.0)).max_abs();
    Ok(NkTorusResult {
        psi_minus_sign_flipped: class6.psi_minus_sign_flipped,
        extension,
        star_phi_residual,
        dphi_residual,
        dstar_residual,
    })
}

/// A finite sum of terms `r^m (alpha + beta ^ dr)` over a six-dimensional
/// algebra, homogeneous of one total degree (`deg alpha = deg beta + 1`).
/// `dr` is always written rightmost; every sign follows from that single
/// ordering convention.
#[derive(Debug, Clone)]
pub struct WarpedForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<i64, (KForm, KForm)>,
}

impl WarpedForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        WarpedForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The term `r^m alpha` (no dr leg).
    pub fn radial(m: i64, alpha: &KForm) -> Self {
        let mut w = WarpedForm::zero(alpha.dim(), alpha.degree());
        w.add_alpha(m, alpha.clone());
        w
    }

    /// The term `r^m beta ^ dr`.
    pub fn radial_dr(m: i64, beta: &KForm) -> Self {
        let mut w = WarpedForm::zero(beta.dim(), beta.degree() + 1);
        w.add_beta(m, beta.clone());
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &KForm, &KForm)> {
        self.terms.iter().map(|(&m, (a, b))| (m, a, b))
    }

    fn entry(&mut self, m: i64) -> &mut (KForm, KForm) {
        let dim = self.dim;
        let degree = self.degree;
        self.terms.entry(m).or_insert_with(|| {
            (
                KForm::zero(dim, degree),
                if degree == 0 {
                    // a 0-form has no dr leg; keep a degree-0 zero as filler
                    KForm::zero(dim, 0)
                } else {
                    KForm::zero(dim, degree - 1)
                },
            )
        })
    }

    pub fn add_alpha(&mut self, m: i64, alpha: KForm) {
        assert_eq!(alpha.degree(), self.degree);
        let slot = &mut self.entry(m).0;
        *slot = &*slot + &alpha;
    }

    pub fn add_beta(&mut self, m: i64, beta: KForm) {
        assert_eq!(beta.degree() + 1, self.degree);
        let slot = &mut self.entry(m).1;
        *slot = &*slot + &beta;
    }

    pub fn add(&self, other: &WarpedForm) -> WarpedForm {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, alpha, beta) in other.terms() {
            out.add_alpha(m, alpha.clone());
            if beta.degree() + 1 == out.degree {
                out.add_beta(m, beta.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> WarpedForm {
        let mut out = WarpedForm::zero(self.dim, self.degree);
        for (m, alpha, beta) in self.terms() {
            out.add_alpha(m, alpha.scale(s));
            if beta.degree() + 1 == self.degree {
                out.add_beta(m, beta.scale(s));
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|(a, b)| a.max_abs().max(b.max_abs()))
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Drops terms with every coefficient at or below `tol`.
    pub fn compact(mut self, tol: f64) -> WarpedForm {
        self.terms
            .retain(|_, (a, b)| a.max_abs() > tol || b.max_abs() > tol);
        self
    }

    /// Wedge product in the warped calculus:
    /// `(a1 + b1^dr)(a2 + b2^dr) = a1a2 + (a1 b2 + (-1)^{deg a2} b1 a2)^dr`.
    pub fn wedge(&self, other: &WarpedForm) -> Result<WarpedForm, StructureError> {
        let total = self.degree + other.degree;
        let mut out = WarpedForm::zero(self.dim, total);
        let sign = if other.degree.is_multiple_of(2) { 1.0 } else { -1.0 };
        for (m1, a1, b1) in self.terms() {
            for (m2, a2, b2) in other.terms() {
                let m = m1 + m2;
                out.add_alpha(m, a1.wedge(a2)?);
                if total == 0 {
                    continue;
                }
                let mut beta = KForm::zero(self.dim, total - 1);
                if other.degree > 0 {
                    beta = &beta + &a1.wedge(b2)?;
                }
                if self.degree > 0 {
                    beta = &beta + &b1.wedge(a2)?.scale(sign);
                }
                out.add_beta(m, beta);
            }
        }
        Ok(out.compact(0.0))
    }

    /// Exterior differential:
    /// `d(r^m (alpha + beta ^ dr)) = r^m d alpha
    ///   + (r^m d beta + (-1)^{deg alpha} m r^{m-1} alpha) ^ dr`.
    pub fn d(&self, alg: &LieAlgebra) -> WarpedForm {
        assert_eq!(alg.dim(), self.dim);
        let mut out = WarpedForm::zero(self.dim, self.degree + 1);
        let alpha_sign = if self.degree.is_multiple_of(2) { 1.0 } else { -1.0 };
        for (m, alpha, beta) in self.terms() {
            out.add_alpha(m, alg.d(alpha));
            if beta.degree() + 1 == self.degree {
                out.add_beta(m, alg.d(beta));
            }
            if m != 0 {
                out.add_beta(m - 1, alpha.scale(alpha_sign * m as f64));
            }
        }
        out.compact(0.0)
    }

    pub fn approx_eq(&self, other: &WarpedForm, tol: f64) -> bool {
        if self.degree != other.degree || self.dim != other.dim {
            return false;
        }
        let diff = self.add(&other.scale(-1.0));
        diff.is_zero(tol)
    }
}

impl fmt::Display for WarpedForm {
    /// Terms print as `r^m*[alpha]` and `r^m*[beta]*dr`, highest exponent
    /// first; the `r^0` factor is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (&m, (alpha, beta)) in self.terms.iter().rev() {
            for (form, dr) in [(alpha, false), (beta, true)] {
                if form.degree() + usize::from(dr) != self.degree && self.degree > 0 {
                    continue;
                }
                if form.is_zero(0.0) {
                    continue;
                }
                if wrote {
                    write!(f, " + ")?;
                }
                match m {
                    0 => write!(f, "[{form}]")?,
                    1 => write!(f, "r*[{form}]")?,
                    _ => write!(f, "r^{m}*[{form}]")?,
                }
                if dr {
                    write!(f, "*dr")?;
                }
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Outcome of the cylinder / cone verification over a coupled structure.
#[derive(Debug, Clone)]
pub struct WarpedReport {
    pub coupled_constant: f64,
    pub phi: WarpedForm,
    pub theta: WarpedForm,
    /// `|d phi + theta ^ phi|` in the warped calculus.
    pub lcc_residual: f64,
    /// `|d theta|`.
    pub theta_closed_residual: f64,
}

/// Cylinder structure `phi = omega ^ dr + psi_plus`; its torsion 1-form is
/// `c dr`.
pub fn cylinder(alg6: &LieAlgebra, s: &Su3Structure) -> Result<WarpedReport, StructureError> {
    let class = classify(alg6, s, EPS);
    if !class.coupled {
        return Err(StructureError::NotCoupled(class.residuals.coupled));
    }
    let c = class.coupled_constant;
    let phi = WarpedForm::radial(0, s.psi_plus()).add(&WarpedForm::radial_dr(0, s.omega()));
    let theta = WarpedForm::radial_dr(0, &KForm::one(6).scale(c));
    finish_warped(alg6, c, phi, theta)
}

/// Cone structure `phi = r^2 omega ^ dr + r^3 psi_plus`; requires `c != 3`
/// (at `c = 3` the differential closes and the torsion 1-form would vanish)
/// and has torsion 1-form `(c - 3) r^{-1} dr`.
pub fn cone(alg6: &LieAlgebra, s: &Su3Structure) -> Result<WarpedReport, StructureError> {
    let class = classify(alg6, s, EPS);
    if !class.coupled {
        return Err(StructureError::NotCoupled(class.residuals.coupled));
    }
    let c = class.coupled_constant;
    if (c - 3.0).abs() <= EPS {
        return Err(StructureError::ConeConstantThree);
    }
    let phi = WarpedForm::radial(3, s.psi_plus()).add(&WarpedForm::radial_dr(2, s.omega()));
    let theta = WarpedForm::radial_dr(-1, &KForm::one(6).scale(c - 3.0));
    finish_warped(alg6, c, phi, theta)
}

fn finish_warped(
    alg6: &LieAlgebra,
    c: f64,
    phi: WarpedForm,
    theta: WarpedForm,
) -> Result<WarpedReport, StructureError> {
    let dphi = phi.d(alg6);
    let lcc_residual = dphi.add(&theta.wedge(&phi)?).max_abs();
    let theta_closed_residual = theta.d(alg6).max_abs();
    Ok(WarpedReport {
        coupled_constant: c,
        phi,
        theta,
        lcc_residual,
        theta_closed_residual,
    })
}
