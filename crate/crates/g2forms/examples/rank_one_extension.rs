//! Rank-one extensions: a coupled structure on the Iwasawa algebra plus a
//! derivation in the realified-traceless block pattern yields a
//! seven-dimensional solvable algebra with a locally conformal calibrated
//! G2-structure and Lee form c * e7.

use g2forms::extensions::g2_from_coupled;
use g2forms::forms::LinearMap;
use g2forms::lie::LieAlgebra;
use g2forms::su3::{model_pair, Su3Structure};

fn rotation_derivation() -> LinearMap {
    // De1 = -e3, De2 = -e4, De3 = e1, De4 = e2
    let mut d = LinearMap::zero(6, 6);
    d.set(2, 0, -1.0);
    d.set(3, 1, -1.0);
    d.set(0, 2, 1.0);
    d.set(1, 3, 1.0);
    d
}

fn hyperbolic_derivation() -> LinearMap {
    // De1 = 2e3, De2 = 2e4, De3 = e1, De4 = e2
    let mut d = LinearMap::zero(6, 6);
    d.set(2, 0, 2.0);
    d.set(3, 1, 2.0);
    d.set(0, 2, 1.0);
    d.set(1, 3, 1.0);
    d
}

fn main() {
    let base = LieAlgebra::parse("(0,0,0,0,e14+e23,e13-e24)").expect("structure equations");
    let (omega, psi_plus) = model_pair();
    let s = Su3Structure::build(&omega, &psi_plus).expect("coupled pair");

    for (label, d) in [
        ("rotation", rotation_derivation()),
        ("hyperbolic", hyperbolic_derivation()),
        ("zero (mapping torus)", LinearMap::zero(6, 6)),
    ] {
        let ext = g2_from_coupled(&base, &s, &d).expect("extension");
        println!("derivation: {label}");
        println!("  extended algebra: {}", ext.algebra.to_salamon());
        println!("  class: {}", ext.class.tag.as_str());
        println!("  Lee form: {}", ext.class.theta);
        println!("  |d phi - (-c eta ^ phi)| = {:.2e}", ext.lcc_residual);
        println!();
    }
}
