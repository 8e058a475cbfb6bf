//! Pointwise reduction: restricting (i_n phi, phi) to the orthogonal
//! complement of a unit vector n recovers an SU(3)-structure whose metric is
//! the ambient one restricted to the complement.

use g2forms::forms::Vector;
use g2forms::g2::{model_phi, G2Structure};
use g2forms::lie::LieAlgebra;

fn main() {
    let structure =
        G2Structure::build(LieAlgebra::abelian(7), model_phi()).expect("model structure");

    for (label, n) in [
        ("e7", Vector::basis(7, 7)),
        ("e1", Vector::basis(7, 1)),
        (
            "(e1+e7)/sqrt(2)",
            Vector::new(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
                .unwrap()
                .scale(1.0 / 2.0f64.sqrt()),
        ),
    ] {
        let reduction = structure.reduce_to_su3(&n, 1e-9).expect("unit vector");
        println!("reduction along n = {label}:");
        println!("  omega     = {}", reduction.su3.omega().chop(1e-12));
        println!("  psi_plus  = {}", reduction.su3.psi_plus().chop(1e-12));
        println!("  h deviates from g|_W by {:.2e}", reduction.h_deviation);
        println!();
    }

    // the extension structure on the solvable algebra reduces back to the
    // coupled pair it was built from
    let solvable = LieAlgebra::parse("(e37,e47,-e17,-e27,e14+e23,e13-e24,0)").unwrap();
    let structure = G2Structure::build(solvable, model_phi()).unwrap();
    let reduction = structure
        .reduce_to_su3(&Vector::basis(7, 7), 1e-9)
        .expect("xi is unit");
    println!("reduction of the solvable extension along xi = e7:");
    println!("  omega    = {}", reduction.su3.omega().chop(1e-12));
    println!("  psi_plus = {}", reduction.su3.psi_plus().chop(1e-12));
}
