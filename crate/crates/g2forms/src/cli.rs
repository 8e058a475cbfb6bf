//! Command-line front end. The binary is a thin wrapper around [`run`],
//! which parses structure files, dispatches one subcommand and writes
//! line-oriented `key=value` output with stable formatting.
//!
//! Exit codes: 0 success, 1 predicate false (unrecognized class, no twisted
//! primitive, round-trip diff, catalog mismatch), 2 parse error (with
//! line/column) or usage error, 3 numeric failure (degenerate forms,
//! unstable pairs, singular solves, invalid derivations).

use std::fmt::Write as _;
use std::io::Write;

use crate::catalog;
use crate::error::{ParseError, StructureError};
use crate::extensions::{cone, cylinder, g2_from_coupled};
use crate::files::StructureFile;
use crate::forms::KForm;
use crate::g2::{d_theta, G2Structure, G2Tag};
use crate::lie::{lattice_scan, parse_form, realified_traceless_fit, Derivation};
use crate::su3::{classify, Su3Structure, Su3Tag};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PREDICATE_FALSE: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;
pub const EXIT_NUMERIC_FAILURE: i32 = 3;

const USAGE: &str = "\
usage: g2forms <command> [args]

commands:
  classify-g2 FILE --form NAME            torsion class, Lee form, residuals
  classify-su3 FILE --omega W --psi P     coupled / nearly-Kahler / half-flat
  lee FILE --form NAME                    Lee form components
  extend FILE --derivation DFILE [--check-pattern4] [--omega W] [--psi P]
                                          rank-one extension and its torsion
  dtheta-solve FILE --form NAME --theta T [--verify-gamma G]
                                          twisted-exactness solver
  reduce FILE --form NAME --vector N      restriction to the complement of N
  cylinder FILE --omega W --psi P         warped cylinder structure
  cone FILE --omega W --psi P             warped cone structure (needs c != 3)
  lattice-scan DFILE --basis BFILE --t v1,v2,...  [--tol T]
                                          integrality of exp(tD) in a basis
  catalog verify-all                      run the shipped regression entries
  parse --roundtrip FILE                  canonical re-print and byte diff

FILE is a structure file: one `algebra (...)` line in tuple notation plus
named `form`, `vector` and `matrix` items; `#` starts a comment. Inline
form arguments (e.g. --theta -e7) accept the same monomial-sum notation.
The `--t` list accepts decimals plus the tokens pi and sqrt2.
";

enum CliError {
    Usage(String),
    Parse(String),
    Numeric(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<crate::error::FormError> for CliError {
    fn from(e: crate::error::FormError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

type CliResult = Result<(String, i32), CliError>;

/// Formats a scalar with 12 significant digits.
pub fn sig12(x: f64) -> String {
    // normalize -0.0 so output is byte-stable
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.11e}", x)
}

/// Runs one invocation; `args` excludes the program name. Output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = dispatch(args);
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = err.write_all(USAGE.as_bytes());
            EXIT_PARSE_ERROR
        }
        Err(CliError::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE_ERROR
        }
        Err(CliError::Numeric(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_NUMERIC_FAILURE
        }
    }
}

fn dispatch(args: &[String]) -> CliResult {
    let Some(command) = args.first() else {
        return Err(CliError::Usage("missing command".into()));
    };
    let rest = &args[1..];
    match command.as_str() {
        "classify-g2" => classify_g2_cmd(rest),
        "classify-su3" => classify_su3_cmd(rest),
        "lee" => lee_cmd(rest),
        "extend" => extend_cmd(rest),
        "dtheta-solve" => dtheta_solve_cmd(rest),
        "reduce" => reduce_cmd(rest),
        "cylinder" => warped_cmd(rest, false),
        "cone" => warped_cmd(rest, true),
        "lattice-scan" => lattice_scan_cmd(rest),
        "catalog" => catalog_cmd(rest),
        "parse" => parse_cmd(rest),
        "help" | "--help" | "-h" => Ok((USAGE.to_string(), EXIT_OK)),
        other => Err(CliError::Usage(format!("unknown command '{other}'"))),
    }
}

/// Splits `args` into positionals and `--flag value` / bare-flag pairs.
struct Parsed<'a> {
    positional: Vec<&'a str>,
    options: Vec<(&'a str, &'a str)>,
    flags: Vec<&'a str>,
}

const VALUE_OPTIONS: &[&str] = &[
    "--form", "--omega", "--psi", "--theta", "--vector", "--derivation", "--basis", "--t",
    "--tol", "--verify-gamma",
];
const BARE_FLAGS: &[&str] = &["--check-pattern4", "--roundtrip"];

fn parse_args<'a>(args: &'a [String]) -> Result<Parsed<'a>, CliError> {
    let mut parsed = Parsed {
        positional: Vec::new(),
        options: Vec::new(),
        flags: Vec::new(),
    };
    let mut i = 0;
    while i < args.len() {
        let arg = args[i].as_str();
        if BARE_FLAGS.contains(&arg) {
            parsed.flags.push(arg);
            i += 1;
        } else if VALUE_OPTIONS.contains(&arg) {
            let value = args
                .get(i + 1)
                .ok_or_else(|| CliError::Usage(format!("{arg} needs a value")))?;
            parsed.options.push((arg, value.as_str()));
            i += 2;
        } else if arg.starts_with("--") {
            return Err(CliError::Usage(format!("unknown option '{arg}'")));
        } else {
            parsed.positional.push(arg);
            i += 1;
        }
    }
    Ok(parsed)
}

impl<'a> Parsed<'a> {
    fn option(&self, name: &str) -> Option<&'a str> {
        self.options
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }

    fn required(&self, name: &str) -> Result<&'a str, CliError> {
        self.option(name)
            .ok_or_else(|| CliError::Usage(format!("missing required option {name}")))
    }

    fn file(&self, index: usize) -> Result<&'a str, CliError> {
        self.positional
            .get(index)
            .copied()
            .ok_or_else(|| CliError::Usage("missing FILE argument".into()))
    }

    fn flag(&self, name: &str) -> bool {
        self.flags.contains(&name)
    }
}

fn read_file(path: &str) -> Result<(StructureFile, String), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))?;
    let file = StructureFile::parse(&text)
        .map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    Ok((file, text))
}

/// A named form from the file, or an inline monomial-sum expression.
fn resolve_form(
    file: &StructureFile,
    token: &str,
    degree: usize,
    what: &str,
) -> Result<KForm, CliError> {
    if let Some(form) = file.form(token) {
        if form.degree() != degree {
            return Err(CliError::Usage(format!(
                "{what} '{token}' has degree {}, expected {degree}",
                form.degree()
            )));
        }
        return Ok(form.clone());
    }
    parse_form(token, file.algebra.dim(), degree)
        .map_err(|e| CliError::Parse(format!("{what} '{token}': {e}")))
}

fn su3_from(file: &StructureFile, parsed: &Parsed) -> Result<(KForm, KForm, Su3Structure), CliError> {
    let omega_name = parsed.option("--omega").unwrap_or("omega");
    let psi_name = parsed.option("--psi").unwrap_or("psi_plus");
    let omega = resolve_form(file, omega_name, 2, "omega")?;
    let psi = resolve_form(file, psi_name, 3, "psi")?;
    let su3 = Su3Structure::build(&omega, &psi)?;
    Ok((omega, psi, su3))
}

fn classify_g2_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let phi = resolve_form(&file, parsed.required("--form")?, 3, "form")?;
    let structure = G2Structure::build(file.algebra.clone(), phi)?;
    let class = structure.classify(crate::g2::EPS);
    let mut text = String::new();
    let _ = writeln!(text, "tag={}", class.tag.as_str());
    let _ = writeln!(text, "theta={}", class.theta);
    let _ = writeln!(text, "residual.dphi={}", sig12(class.residuals.dphi));
    let _ = writeln!(text, "residual.dtheta={}", sig12(class.residuals.dtheta));
    let _ = writeln!(text, "residual.lcc={}", sig12(class.residuals.lcc));
    let _ = writeln!(text, "residual.lcp={}", sig12(class.residuals.lcp));
    let code = if class.tag == G2Tag::Other {
        EXIT_PREDICATE_FALSE
    } else {
        EXIT_OK
    };
    Ok((text, code))
}

fn su3_tag_str(tag: Su3Tag) -> &'static str {
    match tag {
        Su3Tag::NearlyKahler => "nearly_kahler",
        Su3Tag::Coupled(_) => "coupled",
        Su3Tag::HalfFlat => "half_flat",
        Su3Tag::NoneOfThese => "none_of_these",
    }
}

fn classify_su3_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let (_, _, su3) = su3_from(&file, &parsed)?;
    let class = classify(&file.algebra, &su3, crate::su3::EPS);
    let mut text = String::new();
    let _ = writeln!(text, "tag={}", su3_tag_str(class.tag));
    let _ = writeln!(text, "c={}", sig12(class.coupled_constant));
    let _ = writeln!(text, "coupled={}", class.coupled);
    let _ = writeln!(text, "nearly_kahler={}", class.nearly_kahler);
    let _ = writeln!(text, "half_flat={}", class.half_flat);
    let _ = writeln!(
        text,
        "psi_minus_sign_flipped={}",
        class.psi_minus_sign_flipped
    );
    let _ = writeln!(text, "residual.coupled={}", sig12(class.residuals.coupled));
    let _ = writeln!(
        text,
        "residual.nk_domega={}",
        sig12(class.residuals.nk_domega)
    );
    let _ = writeln!(
        text,
        "residual.nk_dpsi_minus={}",
        sig12(class.residuals.nk_dpsi_minus)
    );
    let _ = writeln!(
        text,
        "residual.half_flat_domega2={}",
        sig12(class.residuals.half_flat_domega2)
    );
    let _ = writeln!(
        text,
        "residual.half_flat_dpsi_plus={}",
        sig12(class.residuals.half_flat_dpsi_plus)
    );
    let code = if matches!(class.tag, Su3Tag::NoneOfThese) {
        EXIT_PREDICATE_FALSE
    } else {
        EXIT_OK
    };
    Ok((text, code))
}

fn lee_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let phi = resolve_form(&file, parsed.required("--form")?, 3, "form")?;
    let structure = G2Structure::build(file.algebra.clone(), phi)?;
    let theta = structure.lee_form();
    let mut text = String::new();
    let _ = writeln!(text, "theta={theta}");
    let comps: Vec<String> = (1..=7u8)
        .map(|i| sig12(theta.component(&[i])))
        .collect();
    let _ = writeln!(text, "components={}", comps.join(" "));
    Ok((text, EXIT_OK))
}

fn extend_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let (dfile, _) = read_file(parsed.required("--derivation")?)?;
    let d = dfile
        .first_matrix()
        .ok_or_else(|| CliError::Usage("derivation file has no matrix".into()))?;
    if dfile.algebra.to_salamon() != file.algebra.to_salamon() {
        return Err(CliError::Usage(
            "derivation file algebra differs from FILE algebra".into(),
        ));
    }
    let (_, _, su3) = su3_from(&file, &parsed)?;
    let mut text = String::new();
    if parsed.flag("--check-pattern4") {
        let (_, _, residual) = realified_traceless_fit(d)?;
        if residual > crate::su3::EPS {
            return Err(CliError::Numeric(format!(
                "derivation is not the real form of a traceless complex matrix (residual {residual:.3e})"
            )));
        }
        let _ = writeln!(text, "pattern4_residual={}", sig12(residual));
        let _ = writeln!(text, "pattern4=ok");
    }
    let ext = g2_from_coupled(&file.algebra, &su3, d)?;
    let _ = writeln!(text, "algebra={}", ext.algebra.to_salamon());
    let _ = writeln!(text, "coupled_constant={}", sig12(ext.coupled_constant));
    let _ = writeln!(text, "tag={}", ext.class.tag.as_str());
    let _ = writeln!(text, "theta={}", ext.class.theta);
    let _ = writeln!(text, "residual.lcc={}", sig12(ext.lcc_residual));
    let _ = writeln!(text, "residual.theta={}", sig12(ext.theta_residual));
    Ok((text, EXIT_OK))
}

fn dtheta_solve_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let phi = resolve_form(&file, parsed.required("--form")?, 3, "form")?;
    let theta = resolve_form(&file, parsed.required("--theta")?, 1, "theta")?;
    let structure = G2Structure::build(file.algebra.clone(), phi.clone())?;
    let solve = structure.d_theta_solve(&theta, crate::g2::EPS);
    let mut text = String::new();
    let _ = writeln!(text, "theta_closed={}", solve.theta_closed);
    let _ = writeln!(text, "kernel_dim={}", solve.kernel_dim);
    let _ = writeln!(text, "residual={}", sig12(solve.residual));
    match &solve.gamma {
        Some(gamma) => {
            let _ = writeln!(text, "exact=true");
            let _ = writeln!(text, "gamma={}", gamma.chop(1e-12));
        }
        None => {
            let _ = writeln!(text, "exact=false");
            let _ = writeln!(text, "gamma=NOT-EXACT");
        }
    }
    if let Some(user_gamma) = parsed.option("--verify-gamma") {
        let gamma = resolve_form(&file, user_gamma, 2, "gamma")?;
        let residual = (&d_theta(&file.algebra, &theta, &gamma) - &phi).max_abs();
        let _ = writeln!(text, "user_gamma_residual={}", sig12(residual));
        let _ = writeln!(text, "user_gamma_exact={}", residual <= crate::g2::EPS);
    }
    let code = if solve.gamma.is_some() {
        EXIT_OK
    } else {
        EXIT_PREDICATE_FALSE
    };
    Ok((text, code))
}

fn reduce_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let phi = resolve_form(&file, parsed.required("--form")?, 3, "form")?;
    let name = parsed.required("--vector")?;
    let n_vec = file
        .vector(name)
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("vector '{name}' not found in FILE")))?;
    let structure = G2Structure::build(file.algebra.clone(), phi)?;
    let reduction = structure.reduce_to_su3(&n_vec, crate::g2::EPS)?;
    let mut text = String::new();
    let _ = writeln!(text, "omega={}", reduction.su3.omega());
    let _ = writeln!(text, "psi_plus={}", reduction.su3.psi_plus());
    let _ = writeln!(text, "psi_minus={}", reduction.su3.psi_minus());
    let _ = writeln!(text, "h_deviation={}", sig12(reduction.h_deviation));
    for col in 0..6 {
        let entries: Vec<String> = (0..7)
            .map(|row| sig12(reduction.frame.get(row, col)))
            .collect();
        let _ = writeln!(text, "frame.{}={}", col + 1, entries.join(" "));
    }
    Ok((text, EXIT_OK))
}

fn warped_cmd(args: &[String], is_cone: bool) -> CliResult {
    let parsed = parse_args(args)?;
    let (file, _) = read_file(parsed.file(0)?)?;
    let (_, _, su3) = su3_from(&file, &parsed)?;
    let report = if is_cone {
        cone(&file.algebra, &su3)?
    } else {
        cylinder(&file.algebra, &su3)?
    };
    let mut text = String::new();
    let _ = writeln!(text, "c={}", sig12(report.coupled_constant));
    let _ = writeln!(text, "phi={}", report.phi);
    let _ = writeln!(text, "theta={}", report.theta);
    let _ = writeln!(text, "residual.lcc={}", sig12(report.lcc_residual));
    let _ = writeln!(
        text,
        "residual.dtheta={}",
        sig12(report.theta_closed_residual)
    );
    Ok((text, EXIT_OK))
}

fn parse_t_list(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|tok| match tok.trim() {
            "pi" => Ok(std::f64::consts::PI),
            "sqrt2" | "sqrt(2)" => Ok(2.0f64.sqrt()),
            other => other
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("malformed t value '{other}'"))),
        })
        .collect()
}

fn lattice_scan_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    let (dfile, _) = read_file(parsed.file(0)?)?;
    let d = dfile
        .first_matrix()
        .ok_or_else(|| CliError::Usage("derivation file has no matrix".into()))?;
    let (bfile, _) = read_file(parsed.required("--basis")?)?;
    let basis = bfile
        .first_matrix()
        .ok_or_else(|| CliError::Usage("basis file has no matrix".into()))?;
    let ts = parse_t_list(parsed.required("--t")?)?;
    let tol = match parsed.option("--tol") {
        Some(tok) => tok
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("malformed tolerance '{tok}'")))?,
        None => 1e-9,
    };
    let derivation = Derivation::new(dfile.algebra.clone(), d.clone())?;
    let steps = lattice_scan(&derivation, basis, &ts, tol)?;
    let mut text = String::new();
    for (i, step) in steps.iter().enumerate() {
        if i > 0 {
            let _ = writeln!(text);
        }
        let _ = writeln!(text, "t={}", sig12(step.t));
        let _ = writeln!(text, "integer={}", step.integer);
        let _ = writeln!(text, "integer_deviation={}", sig12(step.integer_deviation));
        let _ = writeln!(text, "det={}", sig12(step.det));
        let _ = writeln!(text, "unimodular={}", step.unimodular);
        for row in 0..step.conjugated.rows() {
            let entries: Vec<String> = (0..step.conjugated.cols())
                .map(|col| sig12(step.conjugated.get(row, col)))
                .collect();
            let _ = writeln!(text, "row.{}={}", row + 1, entries.join(" "));
        }
    }
    Ok((text, EXIT_OK))
}

fn catalog_cmd(args: &[String]) -> CliResult {
    match args.first().map(String::as_str) {
        Some("verify-all") => {
            let report = catalog::verify_all();
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_PREDICATE_FALSE
            };
            Ok((report.render(), code))
        }
        Some(other) => Err(CliError::Usage(format!(
            "unknown catalog subcommand '{other}' (expected verify-all)"
        ))),
        None => Err(CliError::Usage(
            "catalog needs a subcommand (verify-all)".into(),
        )),
    }
}

fn parse_cmd(args: &[String]) -> CliResult {
    let parsed = parse_args(args)?;
    if !parsed.flag("--roundtrip") {
        return Err(CliError::Usage("parse requires --roundtrip FILE".into()));
    }
    let path = parsed.file(0)?;
    let (file, original) = read_file(path)?;
    let canonical = file.canonical();
    if canonical == original {
        Ok((canonical, EXIT_OK))
    } else {
        let mut text = canonical.clone();
        for (i, (a, b)) in original.lines().zip(canonical.lines()).enumerate() {
            if a != b {
                let _ = writeln!(text, "diff: line {} differs", i + 1);
                break;
            }
        }
        if original.lines().count() != canonical.lines().count() {
            let _ = writeln!(text, "diff: line counts differ");
        }
        Ok((text, EXIT_PREDICATE_FALSE))
    }
}
