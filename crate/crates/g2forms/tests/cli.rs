//! Exit-code and output-format contract of the command-line front end,
//! exercised through `cli::run` with captured writers.

use std::path::PathBuf;

use g2forms::cli::{run, EXIT_NUMERIC_FAILURE, EXIT_OK, EXIT_PARSE_ERROR, EXIT_PREDICATE_FALSE};

fn catalog_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("catalog")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join("g2forms-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn classify_g2_recognized_class_exits_zero() {
    let (code, out, _) = invoke(&[
        "classify-g2",
        &catalog_path("solvable_s.txt"),
        "--form",
        "phi",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("tag=lcc"));
    assert!(out.contains("theta=-e7"));
    assert!(out.contains("residual.lcc=0.00000000000e0"));
}

#[test]
fn classify_g2_other_exits_one() {
    // a definite but unclassified 3-form: perturb the model on s
    let file = temp_file(
        "other.txt",
        "algebra (e37,e47,-e17,-e27,e14+e23,e13-e24,0)\n\
         form phi 3 e127+e135-e146-e236-e245+e347+e567+1/10e123\n",
    );
    let (code, out, _) = invoke(&["classify-g2", &file, "--form", "phi"]);
    assert_eq!(code, EXIT_PREDICATE_FALSE);
    assert!(out.contains("tag=other"));
}

#[test]
fn classify_su3_tags() {
    let (code, out, _) = invoke(&[
        "classify-su3",
        &catalog_path("su2su2_nk.txt"),
        "--omega",
        "omega",
        "--psi",
        "psi_plus",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("tag=nearly_kahler"));
    assert!(out.contains("c=3.00000000000e0"));

    // the model pair makes no recognized class on su(2)+su(2)
    let file = temp_file(
        "none.txt",
        "algebra (e23,-e13,e12,e56,-e46,e45)\n\
         form omega 2 e12+e34+e56\n\
         form psi_plus 3 e135-e146-e236-e245\n",
    );
    let (code, out, _) = invoke(&["classify-su3", &file, "--omega", "omega", "--psi", "psi_plus"]);
    assert_eq!(code, EXIT_PREDICATE_FALSE);
    assert!(out.contains("tag=none_of_these"));
}

#[test]
fn lee_prints_components() {
    let (code, out, _) = invoke(&["lee", &catalog_path("solvable_q.txt"), "--form", "phi"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("theta=-e7"));
    assert!(out.ends_with(
        "components=0.00000000000e0 0.00000000000e0 0.00000000000e0 0.00000000000e0 \
         0.00000000000e0 0.00000000000e0 -1.00000000000e0\n"
    ));
}

#[test]
fn extend_prints_the_exact_tuple() {
    let (code, out, _) = invoke(&[
        "extend",
        &catalog_path("iwasawa_s5.txt"),
        "--derivation",
        &catalog_path("derivation_hyp.txt"),
        "--check-pattern4",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("pattern4=ok"));
    assert!(out.contains("algebra=(e37,e47,2e17,2e27,e14+e23,e13-e24,0)"));
    assert!(out.contains("theta=-e7"));
}

#[test]
fn extend_rejects_non_derivations_with_exit_three() {
    let dfile = temp_file(
        "bad-derivation.txt",
        "algebra (0,0,0,0,e14+e23,e13-e24)\n\
         matrix D 6\n\
         1 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n",
    );
    let (code, _, err) = invoke(&[
        "extend",
        &catalog_path("iwasawa_s5.txt"),
        "--derivation",
        &dfile,
    ]);
    assert_eq!(code, EXIT_NUMERIC_FAILURE);
    assert!(err.contains("not a derivation"));
}

#[test]
fn extend_check_pattern4_rejects_center_valued_derivations() {
    // e1 -> e5 is a derivation but not a realified traceless matrix
    let dfile = temp_file(
        "center-derivation.txt",
        "algebra (0,0,0,0,e14+e23,e13-e24)\n\
         matrix D 6\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         0 0 0 0 0 0\n\
         1 0 0 0 0 0\n\
         0 0 0 0 0 0\n",
    );
    let (code, out, err) = invoke(&[
        "extend",
        &catalog_path("iwasawa_s5.txt"),
        "--derivation",
        &dfile,
        "--check-pattern4",
    ]);
    assert_eq!(code, EXIT_NUMERIC_FAILURE);
    assert!(out.is_empty());
    assert!(err.contains("traceless"));
}

#[test]
fn dtheta_solve_exact_and_inexact() {
    let (code, out, _) = invoke(&[
        "dtheta-solve",
        &catalog_path("solvable_q.txt"),
        "--form",
        "phi",
        "--theta",
        "-e7",
        "--verify-gamma",
        "gamma",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("exact=true"));
    assert!(out.contains("gamma=5/7e12-3/7e14+3/7e23-1/7e34-e56"));
    assert!(out.contains("kernel_dim=6"));
    assert!(out.contains("user_gamma_exact=true"));

    // no invariant primitive exists on the abelian algebra
    let file = temp_file(
        "abelian7.txt",
        "algebra (0,0,0,0,0,0,0)\n\
         form phi 3 e127+e135-e146-e236-e245+e347+e567\n",
    );
    let (code, out, _) = invoke(&["dtheta-solve", &file, "--form", "phi", "--theta", "0e1"]);
    assert_eq!(code, EXIT_PREDICATE_FALSE);
    assert!(out.contains("exact=false"));
    assert!(out.contains("gamma=NOT-EXACT"));
    assert!(out.contains("kernel_dim=21"));
}

#[test]
fn reduce_recovers_the_model_pair() {
    let (code, out, _) = invoke(&[
        "reduce",
        &catalog_path("model_g2.txt"),
        "--form",
        "phi",
        "--vector",
        "n7",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("omega=e12+e34+e56"));
    assert!(out.contains("psi_plus=e135-e146-e236-e245"));
    assert!(out.contains("h_deviation=0.00000000000e0"));
}

#[test]
fn reduce_rejects_non_unit_vectors() {
    let file = temp_file(
        "nonunit.txt",
        "algebra (0,0,0,0,0,0,0)\n\
         form phi 3 e127+e135-e146-e236-e245+e347+e567\n\
         vector n 0 0 0 0 0 0 2\n",
    );
    let (code, _, err) = invoke(&["reduce", &file, "--form", "phi", "--vector", "n"]);
    assert_eq!(code, EXIT_NUMERIC_FAILURE);
    assert!(err.contains("not unit"));
}

#[test]
fn cylinder_and_cone_outputs() {
    let (code, out, _) = invoke(&[
        "cylinder",
        &catalog_path("iwasawa_s5.txt"),
        "--omega",
        "omega",
        "--psi",
        "psi_plus",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("theta=[-1]*dr"));

    let (code, out, _) = invoke(&[
        "cone",
        &catalog_path("iwasawa_s5.txt"),
        "--omega",
        "omega",
        "--psi",
        "psi_plus",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("theta=r^-1*[-4]*dr"));

    // the cone refuses coupled constant 3
    let (code, _, err) = invoke(&[
        "cone",
        &catalog_path("su2su2_nk.txt"),
        "--omega",
        "omega",
        "--psi",
        "psi_plus",
    ]);
    assert_eq!(code, EXIT_NUMERIC_FAILURE);
    assert!(err.contains("coupled constant != 3"));
}

#[test]
fn lattice_scan_reports_each_candidate() {
    let (code, out, _) = invoke(&[
        "lattice-scan",
        &catalog_path("derivation_rot.txt"),
        "--basis",
        &catalog_path("basis_identity.txt"),
        "--t",
        "0,pi",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with("t=")).count(), 2);
    assert_eq!(out.matches("integer=true").count(), 2);

    let (code, out, _) = invoke(&[
        "lattice-scan",
        &catalog_path("derivation_hyp.txt"),
        "--basis",
        &catalog_path("basis_hyp.txt"),
        "--t",
        "sqrt2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("integer=false"));
}

#[test]
fn catalog_verify_all_passes() {
    let (code, out, _) = invoke(&["catalog", "verify-all"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("total=7 passed=7 failed=0"));
    assert!(out.contains("entry=ex53_lattice status=pass-with-note"));
}

#[test]
fn parse_roundtrip_on_canonical_and_noncanonical_files() {
    let (code, out, _) = invoke(&[
        "parse",
        "--roundtrip",
        &catalog_path("iwasawa_s5.txt"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("algebra (0,0,0,0,e14+e23,e13-e24)"));

    let file = temp_file(
        "noncanonical.txt",
        "algebra   (0,0,0,0,e14+e23,e13-e24)\nform omega 2 e34+e12+e56\n",
    );
    let (code, out, _) = invoke(&["parse", "--roundtrip", &file]);
    assert_eq!(code, EXIT_PREDICATE_FALSE);
    assert!(out.contains("diff: line 1 differs"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let file = temp_file("syntax-error.txt", "algebra (0,0,0,0,e14+e23,e13-e2x)\n");
    let (code, _, err) = invoke(&["parse", "--roundtrip", &file]);
    assert_eq!(code, EXIT_PARSE_ERROR);
    assert!(err.contains("line 1, column 32"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = invoke(&["no-such-command"]);
    assert_eq!(code, EXIT_PARSE_ERROR);
    assert!(err.contains("unknown command"));

    let (code, _, err) = invoke(&[]);
    assert_eq!(code, EXIT_PARSE_ERROR);
    assert!(err.contains("missing command"));

    let (code, _, err) = invoke(&["classify-g2", &catalog_path("solvable_s.txt")]);
    assert_eq!(code, EXIT_PARSE_ERROR);
    assert!(err.contains("--form"));

    let (code, _, err) = invoke(&["classify-g2", "/no/such/file", "--form", "phi"]);
    assert_eq!(code, EXIT_PARSE_ERROR);
    assert!(err.contains("cannot read"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = invoke(&["help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("usage: g2forms"));
}

#[test]
fn numeric_failures_exit_three() {
    // a 3-form that induces an indefinite bilinear form
    let file = temp_file(
        "indefinite.txt",
        "algebra (0,0,0,0,0,0,0)\n\
         form phi 3 e127+e135-e146-e236-e245+e347-e567\n",
    );
    let (code, _, err) = invoke(&["classify-g2", &file, "--form", "phi"]);
    assert_eq!(code, EXIT_NUMERIC_FAILURE);
    assert!(err.contains("definite"));

    // an unstable SU(3) pair
    let file = temp_file(
        "unstable.txt",
        "algebra (0,0,0,0,0,0)\n\
         form omega 2 e12+e34+e56\n\
         form psi_plus 3 e123\n",
    );
    let (code, _, err) = invoke(&["classify-su3", &file, "--omega", "omega", "--psi", "psi_plus"]);
    assert_eq!(code, EXIT_NUMERIC_FAILURE);
    assert!(err.contains("not stable"));
}
