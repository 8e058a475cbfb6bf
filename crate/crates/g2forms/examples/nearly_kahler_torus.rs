//! The nearly Kahler structure on su(2) + su(2) and its mapping-torus
//! extension, which is locally conformal parallel.

use g2forms::extensions::nk_mapping_torus;
use g2forms::forms::KForm;
use g2forms::lie::LieAlgebra;
use g2forms::su3::{classify, Su3Structure};

fn main() {
    let algebra = LieAlgebra::parse("(e23,-e13,e12,e56,-e46,e45)").expect("structure equations");
    let c_omega = -(3.0f64).sqrt() / 18.0;
    let c_psi = (3.0f64).sqrt() / 54.0;
    let omega = KForm::from_terms(
        6,
        2,
        &[(&[1, 4], c_omega), (&[2, 5], c_omega), (&[3, 6], c_omega)],
    )
    .unwrap();
    let psi_plus = KForm::from_terms(
        6,
        3,
        &[
            (&[2, 3, 4], -c_psi),
            (&[1, 5, 6], c_psi),
            (&[1, 3, 5], c_psi),
            (&[2, 4, 6], -c_psi),
            (&[1, 2, 6], -c_psi),
            (&[3, 4, 5], c_psi),
        ],
    )
    .unwrap();

    let s = Su3Structure::build(&omega, &psi_plus).expect("nearly Kahler pair");
    let class = classify(&algebra, &s, 1e-9);
    println!("nearly Kahler    : {}", class.nearly_kahler);
    println!("coupled constant : {}", class.coupled_constant);
    println!("half flat        : {}", class.half_flat);
    println!(
        "|d omega - 3 psi+| = {:.2e}, |d psi- + 2 omega^2| = {:.2e}",
        class.residuals.nk_domega, class.residuals.nk_dpsi_minus
    );

    let torus = nk_mapping_torus(&algebra, &s).expect("mapping torus");
    println!();
    println!("mapping-torus algebra: {}", torus.extension.algebra.to_salamon());
    println!("class    : {}", torus.extension.class.tag.as_str());
    let three_eta = KForm::from_terms(7, 1, &[(&[7], 3.0)]).unwrap();
    println!(
        "Lee form : 3e7 up to {:.2e}",
        (&torus.extension.class.theta - &three_eta).max_abs()
    );
    println!(
        "|*phi - (psi- ^ eta + omega^2/2)| = {:.2e}",
        torus.star_phi_residual
    );
    println!(
        "|d phi + 3 eta ^ phi| = {:.2e}, |d *phi + 4 eta ^ *phi| = {:.2e}",
        torus.dphi_residual, torus.dstar_residual
    );
}
