//! The model 3-form in dimension 7: induced metric, volume, Hodge dual and
//! the norm identity linking interior products to vector lengths.

use g2forms::forms::{norm2, Vector};
use g2forms::g2::{metric_from_phi, model_phi, G2Structure};
use g2forms::lie::LieAlgebra;

fn main() {
    let phi = model_phi();
    println!("phi = {phi}");

    let (g, dv) = metric_from_phi(&phi).expect("definite 3-form");
    println!("induced metric deviates from identity by {:.2e}", g.deviation_from_identity());
    println!("induced volume  = {dv}");

    let structure = G2Structure::build(LieAlgebra::abelian(7), phi).expect("model structure");
    println!("*phi = {}", structure.star_phi());
    let class = structure.classify(1e-9);
    println!("class on the abelian algebra: {}", class.tag.as_str());

    // |i_X phi|^2 = 3 |X|^2 for any X
    let x = Vector::new(vec![0.5, -1.0, 2.0, 0.0, 1.5, -0.5, 1.0]).unwrap();
    let omega = structure.phi().interior(&x).unwrap();
    let lhs = norm2(&omega, structure.metric()).unwrap();
    let rhs = 3.0 * structure.metric().inner_vec(&x, &x);
    println!("|i_X phi|^2 = {lhs:.12}, 3|X|^2 = {rhs:.12}");

    // phi ^ i_X phi = 2 * (i_X phi)
    println!(
        "wedge/star identity residual: {:.2e}",
        structure.wedge_star_residual(&x)
    );
}
