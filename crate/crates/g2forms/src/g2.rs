//! G2-structures on seven-dimensional spaces: the metric and volume induced
//! by a definite 3-form, the Lee form, torsion-class predicates, the twisted
//! differential `d_theta = d + theta ^ .` with its exactness solver, Lie
//! derivatives along invariant vector fields, and the pointwise reduction to
//! an SU(3)-structure on the orthogonal complement of a unit vector.

use crate::error::StructureError;
use crate::forms::{
    hodge_star, KForm, LinearMap, Metric, Vector,
};
use crate::lie::LieAlgebra;
use crate::linalg;
use crate::su3::Su3Structure;

/// Default tolerance for the structure checks in this module.
pub const EPS: f64 = 1e-9;

/// Induced metric and volume of a definite 3-form in dimension 7, from
/// `g(X, Y) dV = (1/6) i_X phi ^ i_Y phi ^ phi`.
///
/// The bilinear form `B` produced by the right-hand side against the
/// reference volume `e^{1..7}` is normalized by `g = (det B)^{-1/9} B`,
/// `dV = (det B)^{1/9} e^{1..7}`. When `det B < 0` the reference volume is
/// negated and `B` recomputed, since the 3-form determines the orientation,
/// not the basis. Indefinite or singular `B` is rejected.
pub fn metric_from_phi(phi: &KForm) -> Result<(Metric, KForm), StructureError> {
    if phi.dim() != 7 || phi.degree() != 3 {
        return Err(crate::error::FormError::DimensionMismatch(phi.dim(), 7).into());
    }
    let interiors: Vec<KForm> = (1..=7u8)
        .map(|i| phi.interior(&Vector::basis(7, i)))
        .collect::<Result<_, _>>()?;
    let mut b = vec![0.0; 49];
    for i in 0..7 {
        for j in i..7 {
            let top = interiors[i]
                .wedge(&interiors[j])?
                .wedge(phi)?;
            let value = top.coefficients()[0] / 6.0;
            b[i * 7 + j] = value;
            b[j * 7 + i] = value;
        }
    }
    let mut orientation = 1.0;
    let det_b = linalg::det(&b, 7);
    if det_b == 0.0 {
        return Err(StructureError::NotAG2Form);
    }
    if det_b < 0.0 {
        orientation = -1.0;
        for entry in &mut b {
            *entry = -*entry;
        }
    }
    let det_b = det_b.abs();
    let (eigenvalues, _) = linalg::jacobi_eigen(&b, 7);
    if eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(StructureError::NotAG2Form);
    }
    let scale = det_b.powf(-1.0 / 9.0);
    let g_mat: Vec<f64> = b.iter().map(|x| x * scale).collect();
    let g = Metric::new(7, g_mat).map_err(|_| StructureError::NotAG2Form)?;
    let mut dv = KForm::zero(7, 7);
    dv.coefficients_mut()[0] = orientation * det_b.powf(1.0 / 9.0);
    Ok((g, dv))
}

/// A G2-structure: a definite 3-form on a seven-dimensional Lie algebra plus
/// the metric, volume and Hodge dual it induces.
#[derive(Debug, Clone)]
pub struct G2Structure {
    alg: LieAlgebra,
    phi: KForm,
    g: Metric,
    dv: KForm,
    star_phi: KForm,
}

impl G2Structure {
    pub fn build(alg: LieAlgebra, phi: KForm) -> Result<Self, StructureError> {
        if alg.dim() != 7 {
            return Err(crate::error::FormError::DimensionMismatch(alg.dim(), 7).into());
        }
        let (g, dv) = metric_from_phi(&phi)?;
        let star_phi = hodge_star(&phi, &g, &dv)?;
        debug_assert!({
            let seven_dv = phi.wedge(&star_phi).expect("top form");
            (&seven_dv - &dv.scale(7.0)).max_abs() < 1e-8 * dv.max_abs()
        });
        Ok(G2Structure {
            alg,
            phi,
            g,
            dv,
            star_phi,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn phi(&self) -> &KForm {
        &self.phi
    }

    pub fn metric(&self) -> &Metric {
        &self.g
    }

    pub fn volume(&self) -> &KForm {
        &self.dv
    }

    pub fn star_phi(&self) -> &KForm {
        &self.star_phi
    }

    /// Hodge star for the induced metric and orientation.
    pub fn star(&self, a: &KForm) -> KForm {
        hodge_star(a, &self.g, &self.dv).expect("induced star")
    }

    /// The Lee form `theta = (1/4) * (*d(phi) ^ phi)`; zero exactly when the
    /// structure is calibrated.
    pub fn lee_form(&self) -> KForm {
        let dphi = self.alg.d(&self.phi);
        let inner = self.star(&dphi).wedge(&self.phi).expect("6-form");
        self.star(&inner).scale(0.25)
    }

    /// Torsion-class predicates, most specific tag wins. `theta` is always
    /// the Lee form; residuals report every tested identity.
    pub fn classify(&self, tol: f64) -> G2Class {
        let dphi = self.alg.d(&self.phi);
        let theta = self.lee_form();
        let d_theta_form = self.alg.d(&theta);
        let lcc = (&dphi + &theta.wedge(&self.phi).expect("4-form")).max_abs();
        let d_star = self.alg.d(&self.star_phi);
        let lcp = (&d_star
            + &theta
                .wedge(&self.star_phi)
                .expect("5-form")
                .scale(4.0 / 3.0))
            .max_abs();
        let residuals = G2Residuals {
            dphi: dphi.max_abs(),
            dtheta: d_theta_form.max_abs(),
            lcc,
            lcp,
        };
        let tag = if residuals.dphi <= tol {
            G2Tag::Calibrated
        } else if residuals.dtheta <= tol && residuals.lcc <= tol && theta.max_abs() > tol {
            if residuals.lcp <= tol {
                G2Tag::LocallyConformalParallel
            } else {
                G2Tag::LocallyConformalCalibrated
            }
        } else {
            G2Tag::Other
        };
        G2Class {
            tag,
            theta,
            residuals,
        }
    }

    /// Least-squares solve of `d_theta gamma = phi` over all 2-forms.
    /// `gamma` is the minimum-norm solution and is returned only when the
    /// pointwise residual stays below `tol`; the kernel dimension of
    /// `d_theta` on 2-forms is reported alongside.
    pub fn d_theta_solve(&self, theta: &KForm, tol: f64) -> DThetaSolve {
        let n = 7;
        let rows = linalg::binomial(n, 3);
        let cols = linalg::binomial(n, 2);
        let mut matrix = vec![0.0; rows * cols];
        for col in 0..cols {
            let mut basis = KForm::zero(n, 2);
            basis.coefficients_mut()[col] = 1.0;
            let image = d_theta(&self.alg, theta, &basis);
            for (row, &value) in image.coefficients().iter().enumerate() {
                matrix[row * cols + col] = value;
            }
        }
        let ls = linalg::lstsq_min_norm(&matrix, rows, cols, self.phi.coefficients());
        let mut gamma = KForm::zero(n, 2);
        gamma.coefficients_mut().copy_from_slice(&ls.solution);
        let pointwise = (&d_theta(&self.alg, theta, &gamma) - &self.phi).max_abs();
        let theta_closed = self.alg.d(theta).max_abs() <= tol;
        DThetaSolve {
            gamma: (pointwise <= tol).then_some(gamma),
            residual: pointwise,
            residual_l2: ls.residual,
            kernel_dim: ls.kernel_dim,
            rank: ls.rank,
            theta_closed,
        }
    }

    /// Residual of `phi ^ i_X phi = 2 * (i_X phi)`.
    pub fn wedge_star_residual(&self, x: &Vector) -> f64 {
        let omega = self.phi.interior(x).expect("degree 3");
        let lhs = self.phi.wedge(&omega).expect("5-form");
        let rhs = self.star(&omega).scale(2.0);
        (&lhs - &rhs).max_abs()
    }

    /// Tests whether `X` acts as an infinitesimal conformal automorphism
    /// through the twisted differential of `omega = i_X phi`: reports the
    /// least-squares multiple `f` with `d_theta omega ~ f phi`, the constant
    /// `rho = f - theta(X)`, and the norm of the Lie derivative, which
    /// vanishes exactly when `theta(X) phi = d_theta omega`.
    pub fn conformal_analysis(&self, theta: &KForm, x: &Vector) -> ConformalReport {
        let omega = self.phi.interior(x).expect("degree 3");
        let twisted = d_theta(&self.alg, theta, &omega);
        let denom: f64 = self.phi.coefficients().iter().map(|c| c * c).sum();
        let numer: f64 = self
            .phi
            .coefficients()
            .iter()
            .zip(twisted.coefficients())
            .map(|(p, t)| p * t)
            .sum();
        let f = numer / denom;
        let proportionality_residual = (&twisted - &self.phi.scale(f)).max_abs();
        let theta_of_x = theta.eval(std::slice::from_ref(x));
        let proportional = proportionality_residual <= EPS;
        let lie_residual = lie_derivative(&self.alg, x, &self.phi).max_abs();
        ConformalReport {
            omega,
            f: proportional.then_some(f),
            rho: proportional.then_some(f - theta_of_x),
            proportionality_residual,
            lie_residual,
            theta_of_x,
            x_norm2: self.g.inner_vec(x, x),
        }
    }

    /// Pointwise reduction along a unit vector `n`: restricts `(i_n phi,
    /// phi)` to the orthogonal complement `W` of `n` in a deterministic
    /// orthonormal frame and rebuilds the SU(3)-structure. The frame drops
    /// the ambient basis vector with the largest overlap `|g(e_i, n)|`
    /// (lowest index on ties) and Gram-Schmidts the remaining six in index
    /// order.
    pub fn reduce_to_su3(&self, n_vec: &Vector, tol: f64) -> Result<Reduction, StructureError> {
        let nn = self.g.inner_vec(n_vec, n_vec);
        if (nn - 1.0).abs() > tol {
            return Err(StructureError::NotUnit(nn));
        }
        let overlaps: Vec<f64> = (1..=7u8)
            .map(|i| self.g.inner_vec(&Vector::basis(7, i), n_vec).abs())
            .collect();
        let dropped = overlaps
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| {
                a.partial_cmp(b)
                    .unwrap()
                    .then(ib.cmp(ia)) // ties resolve to the lowest index
            })
            .map(|(i, _)| i)
            .unwrap();
        let mut frame: Vec<Vector> = Vec::with_capacity(6);
        for i in 0..7 {
            if i == dropped {
                continue;
            }
            let mut v = Vector::basis(7, (i + 1) as u8);
            let along = self.g.inner_vec(&v, n_vec);
            v = v.add(&n_vec.scale(-along / nn));
            for w in &frame {
                let c = self.g.inner_vec(&v, w);
                v = v.add(&w.scale(-c));
            }
            let norm = self.g.norm_vec(&v);
            if norm <= 1e-12 {
                return Err(StructureError::NotAG2Form);
            }
            frame.push(v.scale(1.0 / norm));
        }
        let frame_map = LinearMap::from_columns(&frame)?;
        let omega = frame_map.pullback(&self.phi.interior(n_vec)?)?;
        let psi_plus = frame_map.pullback(&self.phi)?;
        let su3 = Su3Structure::build(&omega, &psi_plus)?;
        // g restricted to the orthonormal frame is the identity, so the
        // induced metric must match it
        let h_deviation = su3.h().deviation_from_identity();
        Ok(Reduction {
            su3,
            frame: frame_map,
            h_deviation,
        })
    }
}

/// The twisted differential `d_theta a = d a + theta ^ a`; nilpotent when
/// `theta` is closed.
pub fn d_theta(alg: &LieAlgebra, theta: &KForm, a: &KForm) -> KForm {
    &alg.d(a) + &theta.wedge(a).expect("wedge with 1-form")
}

/// Cartan formula `L_X a = d(i_X a) + i_X(d a)` for constant-coefficient
/// (left-invariant) `X`.
pub fn lie_derivative(alg: &LieAlgebra, x: &Vector, a: &KForm) -> KForm {
    let first = if a.degree() == 0 {
        KForm::zero(a.dim(), 0)
    } else {
        alg.d(&a.interior(x).expect("degree >= 1"))
    };
    &first + &alg.d(a).interior(x).expect("degree >= 1")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G2Tag {
    Calibrated,
    LocallyConformalCalibrated,
    LocallyConformalParallel,
    Other,
}

impl G2Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            G2Tag::Calibrated => "calibrated",
            G2Tag::LocallyConformalCalibrated => "lcc",
            G2Tag::LocallyConformalParallel => "lcp",
            G2Tag::Other => "other",
        }
    }
}

#[derive(Debug, Clone)]
pub struct G2Class {
    pub tag: G2Tag,
    /// The Lee form (zero for calibrated structures).
    pub theta: KForm,
    pub residuals: G2Residuals,
}

#[derive(Debug, Clone)]
pub struct G2Residuals {
    /// `|d phi|`.
    pub dphi: f64,
    /// `|d theta|`.
    pub dtheta: f64,
    /// `|d phi + theta ^ phi|`.
    pub lcc: f64,
    /// `|d *phi + (4/3) theta ^ *phi|`.
    pub lcp: f64,
}

#[derive(Debug, Clone)]
pub struct DThetaSolve {
    /// Minimum-norm solution when the residual meets the tolerance.
    pub gamma: Option<KForm>,
    /// Max-abs coefficient of `d_theta gamma - phi` for the solver's gamma.
    pub residual: f64,
    /// Euclidean-norm residual of the least-squares system.
    pub residual_l2: f64,
    /// Dimension of the kernel of `d_theta` on 2-forms.
    pub kernel_dim: usize,
    pub rank: usize,
    pub theta_closed: bool,
}

#[derive(Debug, Clone)]
pub struct ConformalReport {
    /// `i_X phi`.
    pub omega: KForm,
    /// The constant with `d_theta omega = f phi`, when proportional.
    pub f: Option<f64>,
    /// `f - theta(X)`, when proportional.
    pub rho: Option<f64>,
    pub proportionality_residual: f64,
    /// `|L_X phi|`.
    pub lie_residual: f64,
    pub theta_of_x: f64,
    pub x_norm2: f64,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub su3: Su3Structure,
    /// Columns are the orthonormal frame of `W` inside the ambient space.
    pub frame: LinearMap,
    /// Max-abs deviation of the induced metric from `g` restricted to the
    /// frame (the identity matrix).
    pub h_deviation: f64,
}

/// The model 3-form `e^127 + e^347 + e^567 + e^135 - e^146 - e^236 - e^245`.
pub fn model_phi() -> KForm {
    KForm::from_terms(
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
    )
    .expect("model phi")
}
