//! Integer-lattice scans of exp(tD): the rotation derivation gives an
//! integer unimodular matrix at t = pi; the hyperbolic derivation, checked
//! in its published eigenbasis at t = sqrt(2), does not, because the
//! claimed diagonal matrix is the conjugated generator rather than its
//! exponential.

use g2forms::forms::{LinearMap, Vector};
use g2forms::lie::{lattice_scan, Derivation, LieAlgebra};

fn main() {
    let base = LieAlgebra::parse("(0,0,0,0,e14+e23,e13-e24)").expect("structure equations");

    let mut rot = LinearMap::zero(6, 6);
    rot.set(2, 0, -1.0);
    rot.set(3, 1, -1.0);
    rot.set(0, 2, 1.0);
    rot.set(1, 3, 1.0);
    let derivation = Derivation::new(base.clone(), rot).expect("derivation");
    let steps = lattice_scan(
        &derivation,
        &LinearMap::identity(6),
        &[std::f64::consts::PI],
        1e-9,
    )
    .unwrap();
    println!("rotation derivation at t = pi:");
    println!(
        "  integer = {}, det = {:.6} (deviation from integers {:.2e})",
        steps[0].integer, steps[0].det, steps[0].integer_deviation
    );

    // hyperbolic derivation, scanned in the basis that diagonalizes it
    let mut hyp = LinearMap::zero(6, 6);
    hyp.set(2, 0, 2.0);
    hyp.set(3, 1, 2.0);
    hyp.set(0, 2, 1.0);
    hyp.set(1, 3, 1.0);
    let derivation = Derivation::new(base, hyp.clone()).expect("derivation");
    let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
    let columns = [
        Vector::new(vec![0.0, -inv_sqrt2, 0.0, 1.0, 0.0, 0.0]).unwrap(),
        Vector::new(vec![-inv_sqrt2, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap(),
        Vector::new(vec![inv_sqrt2, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap(),
        Vector::new(vec![0.0, inv_sqrt2, 0.0, 1.0, 0.0, 0.0]).unwrap(),
        Vector::new(vec![0.0, 0.0, 0.0, 0.0, 2.0f64.sqrt(), 0.0]).unwrap(),
        Vector::new(vec![0.0, 0.0, 0.0, 0.0, 0.0, 2.0f64.sqrt()]).unwrap(),
    ];
    let basis = LinearMap::from_columns(&columns).unwrap();
    let t = 2.0f64.sqrt();
    let steps = lattice_scan(&derivation, &basis, &[t], 1e-9).unwrap();
    let step = &steps[0];
    println!();
    println!("hyperbolic derivation at t = sqrt(2), eigenbasis frame:");
    let diag: Vec<String> = (0..6)
        .map(|i| format!("{:.6}", step.conjugated.get(i, i)))
        .collect();
    println!("  conjugated exp diagonal: [{}]", diag.join(", "));
    println!(
        "  integer = {} (deviation {:.3})",
        step.integer, step.integer_deviation
    );
    // the diagonal matrix (-2,-2,2,2,0,0) sometimes quoted here is the
    // conjugated generator sqrt(2) D, not its exponential:
    let gen = basis
        .inverse()
        .unwrap()
        .compose(&hyp.scale(t))
        .unwrap()
        .compose(&basis)
        .unwrap();
    let gen_diag: Vec<String> = (0..6).map(|i| format!("{:.1}", gen.get(i, i))).collect();
    println!("  conjugated generator diagonal: [{}]", gen_diag.join(", "));
}
