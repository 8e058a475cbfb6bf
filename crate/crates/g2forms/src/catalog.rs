//! Executable registry of the worked examples shipped as data files under
//! `catalog/`. Every entry re-derives its expected values through the
//! library and diffs them against the stored expectations; one entry encodes
//! a published claim that the computation contradicts and is reported as a
//! pass-with-note rather than silently repaired.

use crate::error::StructureError;
use crate::extensions::{g2_from_coupled, nk_mapping_torus};
use crate::forms::{sharp, KForm, LinearMap};
use crate::g2::{d_theta, lie_derivative, metric_from_phi, G2Structure, G2Tag};
use crate::lie::{lattice_scan, Derivation};
use crate::files::StructureFile;
use crate::su3::{classify, rescale_coupled, Su3Structure};

/// Default tolerance used by the catalog verifications.
pub const EPS: f64 = 1e-9;

/// The shipped data files, embedded so verification works from any working
/// directory. The same files are usable directly through the CLI.
pub const DATA_FILES: &[(&str, &str)] = &[
    ("model_g2.txt", include_str!("../catalog/model_g2.txt")),
    ("model_su3.txt", include_str!("../catalog/model_su3.txt")),
    ("iwasawa_s5.txt", include_str!("../catalog/iwasawa_s5.txt")),
    ("iwasawa_ex33.txt", include_str!("../catalog/iwasawa_ex33.txt")),
    ("su2su2_nk.txt", include_str!("../catalog/su2su2_nk.txt")),
    ("solvable_s.txt", include_str!("../catalog/solvable_s.txt")),
    ("solvable_q.txt", include_str!("../catalog/solvable_q.txt")),
    ("derivation_rot.txt", include_str!("../catalog/derivation_rot.txt")),
    ("derivation_hyp.txt", include_str!("../catalog/derivation_hyp.txt")),
    ("basis_hyp.txt", include_str!("../catalog/basis_hyp.txt")),
    ("basis_identity.txt", include_str!("../catalog/basis_identity.txt")),
];

pub const ENTRY_NAMES: &[&str] = &[
    "model_forms",
    "iwasawa_s5",
    "iwasawa_ex33",
    "su2su2_nk",
    "solvable_s",
    "solvable_q",
    "ex53_lattice",
];

/// One recomputed expectation. `basis` records where the expected value
/// comes from: `published` for values stated by the sources the data files
/// encode, `oracle: <operation>` for values recomputed through an
/// independent code path, `definitional` for immediate consequences.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub basis: &'static str,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    fn ok(name: &'static str, basis: &'static str, passed: bool) -> Self {
        Check {
            name,
            basis,
            passed,
            note: None,
        }
    }

    fn with_note(
        name: &'static str,
        basis: &'static str,
        passed: bool,
        note: impl Into<String>,
    ) -> Self {
        Check {
            name,
            basis,
            passed,
            note: Some(note.into()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EntryReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn has_notes(&self) -> bool {
        self.checks.iter().any(|c| c.note.is_some())
    }
}

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }

    /// Line-oriented rendering used by the CLI.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            let status = if !entry.passed() {
                "FAIL"
            } else if entry.has_notes() {
                "pass-with-note"
            } else {
                "pass"
            };
            out.push_str(&format!(
                "entry={} status={} checks={}\n",
                entry.name,
                status,
                entry.checks.len()
            ));
            if let Some(error) = &entry.error {
                out.push_str(&format!("  error={error}\n"));
            }
            for check in &entry.checks {
                if !check.passed || check.note.is_some() {
                    out.push_str(&format!(
                        "  check={} basis={} passed={}\n",
                        check.name, check.basis, check.passed
                    ));
                }
                if let Some(note) = &check.note {
                    out.push_str(&format!("  note[{}]={}\n", check.name, note));
                }
            }
        }
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        out.push_str(&format!(
            "total={} passed={} failed={}\n",
            self.entries.len(),
            passed,
            self.entries.len() - passed
        ));
        out
    }
}

pub fn data_file(name: &str) -> Option<&'static str> {
    DATA_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

fn load(name: &str) -> Result<StructureFile, String> {
    let text = data_file(name).ok_or_else(|| format!("unknown data file {name}"))?;
    StructureFile::parse(text).map_err(|e| format!("{name}: {e}"))
}

/// Verifies one entry by name.
pub fn verify(name: &str) -> Option<EntryReport> {
    let run = match name {
        "model_forms" => model_forms,
        "iwasawa_s5" => iwasawa_s5,
        "iwasawa_ex33" => iwasawa_ex33,
        "su2su2_nk" => su2su2_nk,
        "solvable_s" => solvable_s,
        "solvable_q" => solvable_q,
        "ex53_lattice" => ex53_lattice,
        _ => return None,
    };
    Some(match run() {
        Ok(checks) => EntryReport {
            name: ENTRY_NAMES.iter().find(|n| **n == name).unwrap(),
            checks,
            error: None,
        },
        Err(error) => EntryReport {
            name: ENTRY_NAMES.iter().find(|n| **n == name).unwrap(),
            checks: Vec::new(),
            error: Some(error),
        },
    })
}

/// Verifies every entry, in registry order.
pub fn verify_all() -> CatalogReport {
    CatalogReport {
        entries: ENTRY_NAMES
            .iter()
            .map(|name| verify(name).expect("registered entry"))
            .collect(),
    }
}

fn structure_error(e: StructureError) -> String {
    e.to_string()
}

fn model_forms() -> Result<Vec<Check>, String> {
    let g2_file = load("model_g2.txt")?;
    let su3_file = load("model_su3.txt")?;
    let phi = g2_file.form("phi").ok_or("missing phi")?;
    let mut checks = Vec::new();

    let (g, dv) = metric_from_phi(phi).map_err(structure_error)?;
    checks.push(Check::ok(
        "metric_is_identity",
        "oracle: metric_from_phi on the model coframe",
        g.deviation_from_identity() < 1e-12,
    ));
    checks.push(Check::ok(
        "volume_is_unit",
        "oracle: metric_from_phi on the model coframe",
        (dv.coefficients()[0] - 1.0).abs() < 1e-12,
    ));

    let structure =
        G2Structure::build(g2_file.algebra.clone(), phi.clone()).map_err(structure_error)?;
    let star_expected = KForm::from_terms(
        7,
        4,
        &[
            (&[1, 2, 3, 4], 1.0),
            (&[1, 2, 5, 6], 1.0),
            (&[3, 4, 5, 6], 1.0),
            (&[1, 3, 6, 7], 1.0),
            (&[1, 4, 5, 7], 1.0),
            (&[2, 3, 5, 7], 1.0),
            (&[2, 4, 6, 7], -1.0),
        ],
    )
    .expect("star expansion");
    checks.push(Check::ok(
        "hodge_dual_of_phi",
        "oracle: monomial-wise star with the identity metric",
        structure.star_phi().approx_eq(&star_expected, 1e-12),
    ));
    checks.push(Check::ok(
        "calibrated_on_abelian",
        "definitional",
        structure.classify(EPS).tag == G2Tag::Calibrated
            && structure.lee_form().is_zero(1e-12),
    ));

    let omega = su3_file.form("omega").ok_or("missing omega")?;
    let psi_plus = su3_file.form("psi_plus").ok_or("missing psi_plus")?;
    let su3 = Su3Structure::build(omega, psi_plus).map_err(structure_error)?;
    let psi_minus_expected = KForm::from_terms(
        6,
        3,
        &[
            (&[1, 3, 6], 1.0),
            (&[1, 4, 5], 1.0),
            (&[2, 3, 5], 1.0),
            (&[2, 4, 6], -1.0),
        ],
    )
    .expect("psi minus");
    checks.push(Check::ok(
        "su3_complex_volume_data",
        "oracle: expansion of (e1+ie2)^(e3+ie4)^(e5+ie6)",
        su3.psi_minus().approx_eq(&psi_minus_expected, 1e-12)
            && su3.h().deviation_from_identity() < 1e-12,
    ));

    let n7 = g2_file.vector("n7").ok_or("missing n7")?;
    let reduction = structure.reduce_to_su3(n7, EPS).map_err(structure_error)?;
    checks.push(Check::ok(
        "reduction_along_n7",
        "oracle: frame restriction of (i_n phi, phi)",
        reduction.su3.omega().approx_eq(omega, 1e-12)
            && reduction.su3.psi_plus().approx_eq(psi_plus, 1e-12)
            && reduction.h_deviation < 1e-12,
    ));
    let n1 = g2_file.vector("n1").ok_or("missing n1")?;
    let reduction1 = structure.reduce_to_su3(n1, EPS).map_err(structure_error)?;
    checks.push(Check::ok(
        "reduction_along_n1",
        "oracle: frame restriction of (i_n phi, phi)",
        reduction1.h_deviation < 1e-10,
    ));
    Ok(checks)
}

fn iwasawa_s5() -> Result<Vec<Check>, String> {
    let file = load("iwasawa_s5.txt")?;
    let omega = file.form("omega").ok_or("missing omega")?;
    let psi_plus = file.form("psi_plus").ok_or("missing psi_plus")?;
    let su3 = Su3Structure::build(omega, psi_plus).map_err(structure_error)?;
    let class = classify(&file.algebra, &su3, EPS);
    let mut checks = Vec::new();
    checks.push(Check::ok(
        "coupled_constant_minus_one",
        "published",
        class.coupled
            && (class.coupled_constant + 1.0).abs() < EPS
            && class.residuals.coupled < EPS,
    ));
    checks.push(Check::ok(
        "metric_is_identity",
        "oracle: structure recovery from the pair",
        su3.h().deviation_from_identity() < 1e-12,
    ));
    checks.push(Check::ok(
        "coupled_implies_psi_plus_closed",
        "definitional",
        class.residuals.half_flat_dpsi_plus < 1e-12,
    ));
    let flipped = rescale_coupled(&file.algebra, &su3, -1.0).map_err(structure_error)?;
    let class_flipped = classify(&file.algebra, &flipped, EPS);
    checks.push(Check::ok(
        "rescale_to_constant_one",
        "published",
        class_flipped.coupled && (class_flipped.coupled_constant - 1.0).abs() < EPS,
    ));
    Ok(checks)
}

fn iwasawa_ex33() -> Result<Vec<Check>, String> {
    let file = load("iwasawa_ex33.txt")?;
    let omega = file.form("omega").ok_or("missing omega")?;
    let psi_plus = file.form("psi_plus").ok_or("missing psi_plus")?;
    let nu = file.matrix("nu").ok_or("missing nu")?;
    let mut checks = Vec::new();
    checks.push(Check::ok(
        "nu_is_an_automorphism",
        "published",
        file.algebra.is_automorphism(nu, EPS),
    ));
    let pulled_omega = nu.pullback(omega).map_err(|e| e.to_string())?;
    checks.push(Check::ok(
        "nu_preserves_omega",
        "published",
        pulled_omega.approx_eq(omega, 1e-12),
    ));
    let pulled_psi = nu.pullback(psi_plus).map_err(|e| e.to_string())?;
    checks.push(Check::ok(
        "nu_preserves_psi_plus",
        "oracle: pullback of the stored pair",
        pulled_psi.approx_eq(psi_plus, 1e-12),
    ));
    let su3 = Su3Structure::build(omega, psi_plus).map_err(structure_error)?;
    let class = classify(&file.algebra, &su3, EPS);
    checks.push(Check::ok(
        "coupled_constant_minus_one",
        "oracle: Chevalley-Eilenberg differential of the stored coframe",
        class.coupled && (class.coupled_constant + 1.0).abs() < EPS,
    ));
    checks.push(Check::ok(
        "coupled_implies_psi_plus_closed",
        "definitional",
        class.residuals.half_flat_dpsi_plus < 1e-12,
    ));
    Ok(checks)
}

fn su2su2_nk() -> Result<Vec<Check>, String> {
    let file = load("su2su2_nk.txt")?;
    let omega = file.form("omega").ok_or("missing omega")?;
    let psi_plus = file.form("psi_plus").ok_or("missing psi_plus")?;
    let nu = file.matrix("nu").ok_or("missing nu")?;
    let su3 = Su3Structure::build(omega, psi_plus).map_err(structure_error)?;
    let class = classify(&file.algebra, &su3, EPS);
    let mut checks = Vec::new();
    checks.push(Check::ok(
        "nearly_kahler",
        "published",
        class.nearly_kahler
            && class.residuals.nk_domega < EPS
            && class.residuals.nk_dpsi_minus.min(class.residuals.nk_dpsi_minus_flipped) < EPS,
    ));
    if class.psi_minus_sign_flipped {
        checks.push(Check::with_note(
            "psi_minus_sign_convention",
            "published",
            true,
            format!(
                "d psi_minus matched +2 omega^2 instead of -2 omega^2 \
                 (residuals {:.3e} / {:.3e})",
                class.residuals.nk_dpsi_minus, class.residuals.nk_dpsi_minus_flipped
            ),
        ));
    } else {
        checks.push(Check::ok(
            "psi_minus_sign_convention",
            "published",
            class.residuals.nk_dpsi_minus < EPS,
        ));
    }
    checks.push(Check::ok(
        "coupled_with_constant_three",
        "definitional",
        class.coupled && (class.coupled_constant - 3.0).abs() < EPS,
    ));
    checks.push(Check::ok(
        "half_flat",
        "definitional",
        class.half_flat,
    ));
    checks.push(Check::ok(
        "nu_is_an_automorphism_preserving_omega",
        "published",
        file.algebra.is_automorphism(nu, EPS)
            && nu
                .pullback(omega)
                .map(|p| p.approx_eq(omega, 1e-12))
                .unwrap_or(false),
    ));
    let torus = nk_mapping_torus(&file.algebra, &su3).map_err(structure_error)?;
    checks.push(Check::ok(
        "mapping_torus_is_lcp",
        "published",
        torus.extension.class.tag == G2Tag::LocallyConformalParallel
            && torus.dphi_residual < EPS
            && torus.dstar_residual < EPS,
    ));
    checks.push(Check::ok(
        "star_phi_splits",
        "oracle: Hodge star of the induced metric",
        torus.star_phi_residual < EPS,
    ));
    let expected_theta = KForm::from_terms(7, 1, &[(&[7], 3.0)]).expect("3 eta");
    checks.push(Check::ok(
        "lee_form_is_three_eta",
        "definitional",
        torus.extension.class.theta.approx_eq(&expected_theta, 1e-9),
    ));
    let rescaled = rescale_coupled(&file.algebra, &su3, 3.0).map_err(structure_error)?;
    let rescaled_class = classify(&file.algebra, &rescaled, EPS);
    checks.push(Check::ok(
        "rescale_by_three_normalizes_the_constant",
        "oracle: structure recovery on the rescaled pair",
        rescaled_class.coupled
            && (rescaled_class.coupled_constant - 1.0).abs() < EPS
            && rescaled.j().approx_eq(su3.j(), 1e-10),
    ));
    Ok(checks)
}

fn solvable_s() -> Result<Vec<Check>, String> {
    let file = load("solvable_s.txt")?;
    let base = load("iwasawa_s5.txt")?;
    let derivation_file = load("derivation_rot.txt")?;
    let d = derivation_file.first_matrix().ok_or("missing derivation")?;
    let mut checks = Vec::new();

    let omega = base.form("omega").ok_or("missing omega")?;
    let psi_plus = base.form("psi_plus").ok_or("missing psi_plus")?;
    let su3 = Su3Structure::build(omega, psi_plus).map_err(structure_error)?;
    let ext = g2_from_coupled(&base.algebra, &su3, d).map_err(structure_error)?;
    checks.push(Check::ok(
        "extension_structure_equations",
        "published",
        ext.algebra.to_salamon() == file.algebra.to_salamon(),
    ));

    let phi = file.form("phi").ok_or("missing phi")?;
    let structure =
        G2Structure::build(file.algebra.clone(), phi.clone()).map_err(structure_error)?;
    let theta = structure.lee_form();
    let minus_e7 = KForm::from_terms(7, 1, &[(&[7], -1.0)]).expect("-e7");
    checks.push(Check::ok(
        "lee_form_is_minus_e7",
        "published",
        theta.approx_eq(&minus_e7, 1e-9),
    ));
    let class = structure.classify(EPS);
    checks.push(Check::ok(
        "lcc_but_not_lcp",
        "published",
        class.tag == G2Tag::LocallyConformalCalibrated && class.residuals.lcp > 1e-3,
    ));
    checks.push(Check::ok(
        "metric_is_identity",
        "oracle: metric_from_phi",
        structure.metric().deviation_from_identity() < 1e-12,
    ));

    let x = file.vector("X").ok_or("missing X")?;
    checks.push(Check::ok(
        "x_is_dual_of_theta",
        "published",
        sharp(&theta, structure.metric())
            .map(|v| {
                v.components()
                    .iter()
                    .zip(x.components())
                    .all(|(a, b)| (a - b).abs() < 1e-12)
            })
            .unwrap_or(false),
    ));
    checks.push(Check::ok(
        "phi_is_x_invariant",
        "published",
        lie_derivative(&file.algebra, x, phi).is_zero(1e-9),
    ));

    let gamma = file.form("gamma").ok_or("missing gamma")?;
    checks.push(Check::ok(
        "twisted_primitive_is_minus_omega",
        "published",
        d_theta(&file.algebra, &theta, gamma).approx_eq(phi, 1e-9),
    ));
    let solve = structure.d_theta_solve(&theta, EPS);
    checks.push(Check::with_note(
        "twisted_solver_finds_a_primitive",
        "oracle: d_theta_solve",
        solve.gamma.is_some() && solve.residual < EPS,
        format!("kernel_dim={} residual={:.3e}", solve.kernel_dim, solve.residual),
    ));

    let report = structure.conformal_analysis(&theta, x);
    checks.push(Check::ok(
        "conformal_constants",
        "published",
        report.f.map(|f| (f - 1.0).abs() < 1e-9).unwrap_or(false)
            && report.rho.map(|r| r.abs() < 1e-9).unwrap_or(false)
            && (report.theta_of_x - report.x_norm2).abs() < 1e-12,
    ));

    let derivation =
        Derivation::new(base.algebra.clone(), d.clone()).map_err(structure_error)?;
    let steps = lattice_scan(
        &derivation,
        &LinearMap::identity(6),
        &[std::f64::consts::PI],
        1e-9,
    )
    .map_err(|e| e.to_string())?;
    checks.push(Check::ok(
        "exp_pi_d_is_integral_unimodular",
        "published",
        steps[0].integer && (steps[0].det - 1.0).abs() < 1e-9,
    ));
    Ok(checks)
}

fn solvable_q() -> Result<Vec<Check>, String> {
    let file = load("solvable_q.txt")?;
    let base = load("iwasawa_s5.txt")?;
    let derivation_file = load("derivation_hyp.txt")?;
    let d = derivation_file.first_matrix().ok_or("missing derivation")?;
    let mut checks = Vec::new();

    let omega = base.form("omega").ok_or("missing omega")?;
    let psi_plus = base.form("psi_plus").ok_or("missing psi_plus")?;
    let su3 = Su3Structure::build(omega, psi_plus).map_err(structure_error)?;
    let ext = g2_from_coupled(&base.algebra, &su3, d).map_err(structure_error)?;
    checks.push(Check::ok(
        "extension_structure_equations",
        "published",
        ext.algebra.to_salamon() == file.algebra.to_salamon(),
    ));

    let phi = file.form("phi").ok_or("missing phi")?;
    let structure =
        G2Structure::build(file.algebra.clone(), phi.clone()).map_err(structure_error)?;
    let theta = structure.lee_form();
    let minus_e7 = KForm::from_terms(7, 1, &[(&[7], -1.0)]).expect("-e7");
    checks.push(Check::ok(
        "lee_form_is_minus_e7",
        "published",
        theta.approx_eq(&minus_e7, 1e-9),
    ));

    let x = file.vector("X").ok_or("missing X")?;
    let lie = lie_derivative(&file.algebra, x, phi);
    checks.push(Check::ok(
        "phi_is_not_x_invariant",
        "published",
        lie.max_abs() > 1e-3,
    ));
    let report = structure.conformal_analysis(&theta, x);
    checks.push(Check::ok(
        "twisted_image_not_proportional_to_phi",
        "published",
        report.f.is_none() && report.proportionality_residual > 1e-3,
    ));

    let gamma = file.form("gamma").ok_or("missing gamma")?;
    checks.push(Check::ok(
        "stored_gamma_is_a_twisted_primitive",
        "published",
        d_theta(&file.algebra, &theta, gamma).approx_eq(phi, 1e-9),
    ));
    let solve = structure.d_theta_solve(&theta, EPS);
    checks.push(Check::with_note(
        "twisted_solver_finds_a_primitive",
        "oracle: d_theta_solve",
        solve.gamma.is_some() && solve.residual < EPS,
        format!("kernel_dim={} residual={:.3e}", solve.kernel_dim, solve.residual),
    ));
    checks.push(Check::with_note(
        "lattice_scan_at_sqrt2",
        "published (not reproduced)",
        true,
        "the integer-exponential claim for this algebra's derivation is recorded \
         as an expected failure under entry ex53_lattice",
    ));
    Ok(checks)
}

fn ex53_lattice() -> Result<Vec<Check>, String> {
    let derivation_file = load("derivation_hyp.txt")?;
    let basis_file = load("basis_hyp.txt")?;
    let d = derivation_file.first_matrix().ok_or("missing derivation")?;
    let basis = basis_file.matrix("basis").ok_or("missing basis")?;
    let derivation =
        Derivation::new(derivation_file.algebra.clone(), d.clone()).map_err(structure_error)?;
    let t = 2.0f64.sqrt();
    let steps =
        lattice_scan(&derivation, basis, &[0.0, t], 1e-9).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    checks.push(Check::ok(
        "identity_at_t_zero",
        "definitional",
        steps[0].integer && steps[0].conjugated.approx_eq(&LinearMap::identity(6), 1e-12),
    ));

    let step = &steps[1];
    let mut claimed = LinearMap::zero(6, 6);
    for (i, v) in [-2.0, -2.0, 2.0, 2.0, 0.0, 0.0].iter().enumerate() {
        claimed.set(i, i, *v);
    }
    let matches_claim = step.conjugated.approx_eq(&claimed, 1e-6);
    let diag: Vec<String> = (0..6)
        .map(|i| format!("{:.6}", step.conjugated.get(i, i)))
        .collect();
    // The published claim asserts an integer exponential here; the direct
    // computation contradicts it (an exponential is always invertible), so
    // the expected outcome of this entry is that the claim fails.
    checks.push(Check::with_note(
        "published_integer_exponential_claim",
        "published (not reproduced)",
        !matches_claim && !step.integer,
        format!(
            "claimed diag(-2,-2,2,2,0,0); computed diagonal [{}] with integer_deviation={:.3e}; \
             the claimed matrix equals the conjugated generator sqrt(2)*D, not its exponential; \
             the lattice existence certified by that claim is left unverified here",
            diag.join(", "),
            step.integer_deviation
        ),
    ));
    let gen = basis
        .inverse()
        .map_err(|e| e.to_string())?
        .compose(&d.scale(t))
        .map_err(|e| e.to_string())?
        .compose(basis)
        .map_err(|e| e.to_string())?;
    checks.push(Check::ok(
        "claimed_matrix_is_the_conjugated_generator",
        "oracle: basis^-1 (sqrt(2) D) basis",
        gen.approx_eq(&claimed, 1e-9),
    ));
    Ok(checks)
}
