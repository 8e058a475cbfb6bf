//! The twisted differential d_theta = d + theta ^ . and its exactness
//! solver, on the two solvable extensions of the Iwasawa algebra. The two
//! cases land on opposite sides of the conformal-automorphism dichotomy:
//! the dual of the Lee form preserves phi on one algebra and moves it on
//! the other, yet phi is twisted-exact on both.

use g2forms::forms::sharp;
use g2forms::g2::{d_theta, lie_derivative, model_phi, G2Structure};
use g2forms::lie::LieAlgebra;

fn main() {
    for (label, tuple) in [
        ("s", "(e37,e47,-e17,-e27,e14+e23,e13-e24,0)"),
        ("q", "(e37,e47,2e17,2e27,e14+e23,e13-e24,0)"),
    ] {
        let algebra = LieAlgebra::parse(tuple).expect("structure equations");
        let structure = G2Structure::build(algebra, model_phi()).expect("G2 structure");
        let theta = structure.lee_form();
        println!("algebra {label}: {tuple}");
        println!("  Lee form: {theta}");

        let x = sharp(&theta, structure.metric()).expect("metric dual");
        let lie = lie_derivative(structure.algebra(), &x, structure.phi());
        println!("  |L_X phi| for X = theta-dual: {:.3e}", lie.max_abs());

        let report = structure.conformal_analysis(&theta, &x);
        match report.f {
            Some(f) => println!(
                "  d_theta(i_X phi) = f phi with f = {f:.3}; theta(X) = {:.3}",
                report.theta_of_x
            ),
            None => println!(
                "  d_theta(i_X phi) is not proportional to phi (residual {:.3e})",
                report.proportionality_residual
            ),
        }

        let solve = structure.d_theta_solve(&theta, 1e-9);
        match &solve.gamma {
            Some(gamma) => {
                println!("  twisted primitive: gamma = {}", gamma.chop(1e-12));
                let back = d_theta(structure.algebra(), &theta, gamma);
                println!(
                    "  |d_theta gamma - phi| = {:.2e}, kernel dimension {}",
                    (&back - structure.phi()).max_abs(),
                    solve.kernel_dim
                );
            }
            None => println!("  no twisted primitive (residual {:.3e})", solve.residual),
        }
        println!();
    }
}
