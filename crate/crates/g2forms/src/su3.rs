//! SU(3)-structures on six-dimensional spaces: stability of the defining
//! forms, recovery of the almost complex structure, the companion 3-form and
//! the metric from the pair `(omega, psi_plus)`, compatibility and
//! normalization checks, and the coupled / nearly Kahler / half-flat
//! classification against a Lie algebra differential.
//!
//! Conventions pinned here and validated against the complex-volume model
//! `(e^1 + i e^2) ^ (e^3 + i e^4) ^ (e^5 + i e^6)`:
//!
//! - the reference volume for the stable-form endomorphism is `e^{123456}`;
//! - the sign of `J` is fixed by positive definiteness of `h = omega(., J.)`;
//! - `psi_minus(X, Y, Z) = psi_plus(JX, JY, JZ)`.

use crate::error::StructureError;
use crate::forms::{KForm, LinearMap, Metric, Vector};
use crate::lie::LieAlgebra;

/// Default tolerance for the structure checks in this module.
pub const EPS: f64 = 1e-9;

/// An SU(3)-structure: the defining stable pair plus everything it induces.
#[derive(Debug, Clone)]
pub struct Su3Structure {
    omega: KForm,
    psi_plus: KForm,
    psi_minus: KForm,
    j: LinearMap,
    h: Metric,
    vol: KForm,
    lambda: f64,
}

impl Su3Structure {
    /// Builds the structure from a stable, compatible, normalized pair.
    /// Each violated precondition reports its own error.
    pub fn build(omega: &KForm, psi_plus: &KForm) -> Result<Self, StructureError> {
        let dim = omega.dim();
        if dim != 6 || psi_plus.dim() != 6 || omega.degree() != 2 || psi_plus.degree() != 3 {
            return Err(crate::error::FormError::DimensionMismatch(dim, 6).into());
        }
        // stability of omega: omega^3 != 0. Orbit membership is
        // scale-invariant, so the threshold scales with |omega|^3.
        let omega2 = omega.wedge(omega)?;
        let omega3 = omega2.wedge(omega)?;
        if omega3.max_abs() <= EPS * omega.max_abs().powi(3) {
            return Err(StructureError::OmegaNotStable);
        }
        // stability of psi_plus: negative quartic invariant, threshold
        // scaled by |psi|^4 for the same reason
        let vol_ref = top_form(6, 1.0);
        let (k_endo, lambda) = hitchin_endomorphism(psi_plus, &vol_ref)?;
        if lambda >= -EPS * psi_plus.max_abs().powi(4) {
            return Err(StructureError::PsiNotStable(lambda));
        }
        // compatibility
        let compat = omega.wedge(psi_plus)?;
        if compat.max_abs() > EPS {
            return Err(StructureError::NotCompatible(compat.max_abs()));
        }
        let j_unsigned = k_endo.scale(1.0 / (-lambda).sqrt());
        // the sign of J is pinned by positive definiteness of omega(., J.)
        let (j, h) = match metric_candidate(omega, &j_unsigned) {
            Ok(h) => (j_unsigned, h),
            Err(_) => {
                let j = j_unsigned.scale(-1.0);
                let h = metric_candidate(omega, &j)
                    .map_err(|_| StructureError::MetricNotPositiveDefinite)?;
                (j, h)
            }
        };
        let psi_minus = j.pullback(psi_plus)?;
        // normalization: psi+ ^ psi- = (2/3) omega^3
        let lhs = psi_plus.wedge(&psi_minus)?;
        let rhs = omega3.scale(2.0 / 3.0);
        let norm_residual = (&lhs - &rhs).max_abs();
        if norm_residual > EPS.max(1e-12 * omega3.max_abs()) {
            return Err(StructureError::NotNormalized(norm_residual));
        }
        Ok(Su3Structure {
            omega: omega.clone(),
            psi_plus: psi_plus.clone(),
            psi_minus,
            j,
            h,
            vol: omega3.scale(1.0 / 6.0),
            lambda,
        })
    }

    pub fn omega(&self) -> &KForm {
        &self.omega
    }

    pub fn psi_plus(&self) -> &KForm {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &KForm {
        &self.psi_minus
    }

    /// The induced almost complex structure.
    pub fn j(&self) -> &LinearMap {
        &self.j
    }

    /// The induced Riemannian metric `h = omega(., J.)`.
    pub fn h(&self) -> &Metric {
        &self.h
    }

    /// The volume form `omega^3 / 6`.
    pub fn vol(&self) -> &KForm {
        &self.vol
    }

    /// Quartic invariant of `psi_plus` against `e^{123456}`; negative for
    /// every built structure.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// The endomorphism `K` and quartic invariant `lambda` of a 3-form on a
/// six-dimensional space: `K(X)` is the vector with
/// `i_{K(X)} vol_ref = (i_X psi) ^ psi`, and `lambda = tr(K^2) / 6`. The
/// form is stable of positive type (it induces an almost complex structure)
/// exactly when `lambda < 0`, in which case `K^2 = lambda id`.
pub fn hitchin_endomorphism(
    psi: &KForm,
    vol_ref: &KForm,
) -> Result<(LinearMap, f64), StructureError> {
    let n = psi.dim();
    if n != 6 || psi.degree() != 3 {
        return Err(crate::error::FormError::DimensionMismatch(psi.dim(), 6).into());
    }
    if vol_ref.degree() != 6 || vol_ref.dim() != 6 {
        return Err(crate::error::FormError::DegreeMismatch(vol_ref.degree(), 6).into());
    }
    let scale = vol_ref.coefficients()[0];
    if scale == 0.0 {
        return Err(crate::error::FormError::ZeroOrientation.into());
    }
    let mut k = LinearMap::zero(6, 6);
    for i in 1..=6u8 {
        let rho = psi.interior(&Vector::basis(6, i))?.wedge(psi)?;
        // invert i_v vol = rho: v_j = (-1)^{j-1} rho[complement of j] / scale
        for j in 1..=6u8 {
            let labels: Vec<u8> = (1..=6u8).filter(|&l| l != j).collect();
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            k.set(
                (j - 1) as usize,
                (i - 1) as usize,
                sign * rho.component(&labels) / scale,
            );
        }
    }
    let k2 = k.compose(&k)?;
    let mut trace = 0.0;
    for i in 0..6 {
        trace += k2.get(i, i);
    }
    Ok((k, trace / 6.0))
}

fn top_form(dim: usize, coeff: f64) -> KForm {
    let mut f = KForm::zero(dim, dim);
    f.coefficients_mut()[0] = coeff;
    f
}

/// `omega(., J.)` as a metric; errors when not symmetric positive definite.
fn metric_candidate(omega: &KForm, j: &LinearMap) -> Result<Metric, StructureError> {
    let n = omega.dim();
    let mut mat = vec![0.0; n * n];
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            let jb = j.apply(&Vector::basis(n, b))?;
            let value = omega.eval(&[Vector::basis(n, a), jb]);
            mat[(a - 1) as usize * n + (b - 1) as usize] = value;
        }
    }
    Metric::new(n, mat).map_err(StructureError::from)
}

/// Classification tag, most specific first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Su3Tag {
    NearlyKahler,
    Coupled(f64),
    HalfFlat,
    NoneOfThese,
}

/// Outcome of [`classify`]: the winning tag plus every individual predicate
/// and its residual, so callers can report rather than re-derive them.
#[derive(Debug, Clone)]
pub struct Su3Class {
    pub tag: Su3Tag,
    /// Least-squares coupled constant (always computed).
    pub coupled_constant: f64,
    pub coupled: bool,
    pub nearly_kahler: bool,
    pub half_flat: bool,
    /// `d psi_minus = -2 omega^2` held with the opposite sign only.
    pub psi_minus_sign_flipped: bool,
    pub residuals: Su3Residuals,
}

#[derive(Debug, Clone)]
pub struct Su3Residuals {
    /// `|d omega - c psi_plus|` for the fitted c.
    pub coupled: f64,
    /// `|d omega - 3 psi_plus|`.
    pub nk_domega: f64,
    /// `|d psi_minus + 2 omega^2|`.
    pub nk_dpsi_minus: f64,
    /// `|d psi_minus - 2 omega^2|` (the flipped-sign probe).
    pub nk_dpsi_minus_flipped: f64,
    /// `|d(omega^2)|`.
    pub half_flat_domega2: f64,
    /// `|d psi_plus|`.
    pub half_flat_dpsi_plus: f64,
}

/// Classifies the structure against the Chevalley-Eilenberg differential of
/// `alg`. The coupled constant is extracted as the least-squares ratio
/// `<d omega, psi_plus> / <psi_plus, psi_plus>` over coefficients, which
/// stays robust when individual coefficients of `psi_plus` vanish.
pub fn classify(alg: &LieAlgebra, s: &Su3Structure, tol: f64) -> Su3Class {
    assert_eq!(alg.dim(), 6, "classification needs a six-dimensional algebra");
    let domega = alg.d(s.omega());
    let psi = s.psi_plus();
    let denom: f64 = psi.coefficients().iter().map(|c| c * c).sum();
    let numer: f64 = psi
        .coefficients()
        .iter()
        .zip(domega.coefficients())
        .map(|(p, d)| p * d)
        .sum();
    let c = numer / denom;
    let coupled_residual = (&domega - &psi.scale(c)).max_abs();
    let coupled = coupled_residual <= tol && c.abs() > tol;

    let nk_domega = (&domega - &psi.scale(3.0)).max_abs();
    let omega2 = s.omega().wedge(s.omega()).expect("same space");
    let dpsi_minus = alg.d(s.psi_minus());
    let nk_dpsi_minus = (&dpsi_minus + &omega2.scale(2.0)).max_abs();
    let nk_dpsi_minus_flipped = (&dpsi_minus - &omega2.scale(2.0)).max_abs();
    let psi_minus_sign_flipped = nk_dpsi_minus > tol && nk_dpsi_minus_flipped <= tol;
    let nearly_kahler = nk_domega <= tol && nk_dpsi_minus.min(nk_dpsi_minus_flipped) <= tol;

    let half_flat_domega2 = alg.d(&omega2).max_abs();
    let half_flat_dpsi_plus = alg.d(psi).max_abs();
    let half_flat = half_flat_domega2 <= tol && half_flat_dpsi_plus <= tol;

    let tag = if nearly_kahler {
        Su3Tag::NearlyKahler
    } else if coupled {
        Su3Tag::Coupled(c)
    } else if half_flat {
        Su3Tag::HalfFlat
    } else {
        Su3Tag::NoneOfThese
    };
    Su3Class {
        tag,
        coupled_constant: c,
        coupled,
        nearly_kahler,
        half_flat,
        psi_minus_sign_flipped,
        residuals: Su3Residuals {
            coupled: coupled_residual,
            nk_domega,
            nk_dpsi_minus,
            nk_dpsi_minus_flipped,
            half_flat_domega2,
            half_flat_dpsi_plus,
        },
    }
}

/// Rescales a coupled structure by `(omega, psi_plus) -> (k^2 omega,
/// k^3 psi_plus)`, which divides the coupled constant by `k`, keeps `J` and
/// multiplies the metric by `k^2`.
pub fn rescale_coupled(
    alg: &LieAlgebra,
    s: &Su3Structure,
    k: f64,
) -> Result<Su3Structure, StructureError> {
    if k == 0.0 {
        return Err(StructureError::ZeroRescale);
    }
    let class = classify(alg, s, EPS);
    if !class.coupled {
        return Err(StructureError::NotCoupled(class.residuals.coupled));
    }
    Su3Structure::build(&s.omega().scale(k * k), &s.psi_plus().scale(k * k * k))
}

/// The model pair `omega = e^12 + e^34 + e^56`,
/// `psi_plus = e^135 - e^146 - e^236 - e^245`, shared by several catalog
/// entries and tests.
pub fn model_pair() -> (KForm, KForm) {
    let omega = KForm::from_terms(6, 2, &[(&[1, 2], 1.0), (&[3, 4], 1.0), (&[5, 6], 1.0)])
        .expect("model omega");
    let psi_plus = KForm::from_terms(
        6,
        3,
        &[
            (&[1, 3, 5], 1.0),
            (&[1, 4, 6], -1.0),
            (&[2, 3, 6], -1.0),
            (&[2, 4, 5], -1.0),
        ],
    )
    .expect("model psi+");
    (omega, psi_plus)
}
