//! Cylinder and cone structures over a coupled pair, in the warped calculus
//! with terms r^m (alpha + beta ^ dr).

use g2forms::extensions::{cone, cylinder};
use g2forms::lie::LieAlgebra;
use g2forms::su3::{model_pair, Su3Structure};

fn main() {
    let algebra = LieAlgebra::parse("(0,0,0,0,e14+e23,e13-e24)").expect("structure equations");
    let (omega, psi_plus) = model_pair();
    let s = Su3Structure::build(&omega, &psi_plus).expect("coupled pair");

    let cyl = cylinder(&algebra, &s).expect("cylinder");
    println!("cylinder over the coupled pair (c = {}):", cyl.coupled_constant);
    println!("  phi   = {}", cyl.phi);
    println!("  theta = {}", cyl.theta);
    println!(
        "  |d phi + theta ^ phi| = {:.2e}, |d theta| = {:.2e}",
        cyl.lcc_residual, cyl.theta_closed_residual
    );

    let cone_report = cone(&algebra, &s).expect("cone");
    println!();
    println!("cone over the coupled pair:");
    println!("  phi   = {}", cone_report.phi);
    println!("  theta = {}", cone_report.theta);
    println!(
        "  |d phi + theta ^ phi| = {:.2e}, |d theta| = {:.2e}",
        cone_report.lcc_residual, cone_report.theta_closed_residual
    );
}
