//! The tuple notation for structure equations: parsing, canonical printing,
//! positioned errors, and the Chevalley-Eilenberg differential it defines.

use g2forms::forms::KForm;
use g2forms::lie::LieAlgebra;

fn main() {
    for text in [
        "(0,0,0)",
        "(0,0,0,0,e14+e23,e13-e24)",
        "(e37,e47,2e17,2e27,e14+e23,e13-e24,0)",
        "(e23,-e13,e12,e56,-e46,e45)",
    ] {
        let algebra = LieAlgebra::parse(text).expect("canonical tuple");
        let printed = algebra.to_salamon();
        println!(
            "{printed}  (round-trip {})",
            if printed == text { "stable" } else { "NOT STABLE" }
        );
    }

    println!();
    let n = LieAlgebra::parse("(0,0,0,0,e14+e23,e13-e24)").unwrap();
    let omega = KForm::from_terms(6, 2, &[(&[1, 2], 1.0), (&[3, 4], 1.0), (&[5, 6], 1.0)]).unwrap();
    println!("d(e12+e34+e56) on the Iwasawa algebra = {}", n.d(&omega));
    println!("Jacobi residual: {:.2e}", n.jacobi_residual());

    println!();
    for bad in ["(0,0,x)", "(e11,0,0)", "(e14,0,0)", "(0,0"] {
        match LieAlgebra::parse(bad) {
            Ok(_) => println!("{bad}: unexpectedly parsed"),
            Err(e) => println!("{bad}: {e}"),
        }
    }
}
