//! Coupled SU(3)-structures on the complex Heisenberg (Iwasawa) algebra:
//! building the structure from the pair, reading off the coupled constant,
//! and rescaling it to +1.

use g2forms::lie::LieAlgebra;
use g2forms::su3::{classify, model_pair, rescale_coupled, Su3Structure, Su3Tag};

fn main() {
    let algebra = LieAlgebra::parse("(0,0,0,0,e14+e23,e13-e24)").expect("structure equations");
    let (omega, psi_plus) = model_pair();
    println!("algebra  : {}", algebra.to_salamon());
    println!("omega    : {omega}");
    println!("psi_plus : {psi_plus}");
    println!("d(omega) : {}", algebra.d(&omega));

    let s = Su3Structure::build(&omega, &psi_plus).expect("stable compatible normalized pair");
    println!("psi_minus: {}", s.psi_minus());

    let class = classify(&algebra, &s, 1e-9);
    match class.tag {
        Su3Tag::Coupled(c) => println!("coupled with constant c = {c}"),
        other => println!("unexpected class {other:?}"),
    }
    println!("coupled residual = {:.2e}", class.residuals.coupled);

    // Rescaling (omega, psi+) -> (k^2 omega, k^3 psi+) divides c by k, so
    // k = -1 produces the normalized constant +1.
    let flipped = rescale_coupled(&algebra, &s, -1.0).expect("rescale");
    let class_flipped = classify(&algebra, &flipped, 1e-9);
    println!(
        "after rescaling by k = -1: c = {}",
        class_flipped.coupled_constant
    );
}
