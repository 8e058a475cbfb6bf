//! Hodge star operator, pinned by the convention `a ^ *b = <a, b>_g dV_g`.

use super::{form_inner, multi_indices, KForm, Metric, MultiIndex};
use crate::error::FormError;

/// Hodge star of `a` for the metric `g`. The n-form `orientation` selects
/// the orientation class only: the volume used on the right-hand side of
/// `a ^ *b = <a, b> dV` is `sign(orientation) sqrt(det g) e^{1..n}`, so the
/// star squares to `(-1)^{k(n-k)}` regardless of the orientation form's
/// magnitude.
pub fn hodge_star(a: &KForm, g: &Metric, orientation: &KForm) -> Result<KForm, FormError> {
    let n = g.dim();
    if a.dim() != n || orientation.dim() != n {
        return Err(FormError::DimensionMismatch(a.dim(), n));
    }
    if orientation.degree() != n {
        return Err(FormError::DegreeMismatch(orientation.degree(), n));
    }
    let top = orientation.coefficients()[0];
    if top == 0.0 {
        return Err(FormError::ZeroOrientation);
    }
    let k = a.degree();
    let vol = top.signum() * g.det().sqrt();
    let mut out = KForm::zero(n, n - k);
    // For each target J, the coefficient is vol * sign(Jc, J) * <e^{Jc}, a>,
    // where (Jc, J) is read as a permutation of (1..n).
    for target in multi_indices(n, n - k) {
        let complement = target.complement(n);
        let mut basis = KForm::zero(n, k);
        basis.set_coeff(&complement, 1.0);
        let pairing = form_inner(&basis, a, g)?;
        let sign = concat_sign(&complement, &target);
        out.set_coeff(&target, vol * sign * pairing);
    }
    Ok(out)
}

/// Sign of the permutation `(I, J)` of `(1..n)` for disjoint sorted I, J.
fn concat_sign(i: &MultiIndex, j: &MultiIndex) -> f64 {
    let mut inversions = 0usize;
    for &a in i.labels() {
        for &b in j.labels() {
            if a > b {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::norm2;

    fn euclid(n: usize) -> (Metric, KForm) {
        let g = Metric::identity(n);
        let mut orient = KForm::zero(n, n);
        orient.coefficients_mut()[0] = 1.0;
        (g, orient)
    }

    #[test]
    fn star_of_one_is_volume() {
        let (g, orient) = euclid(3);
        let one = KForm::one(3);
        let dv = hodge_star(&one, &g, &orient).unwrap();
        assert!((dv.component(&[1, 2, 3]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn star_in_dimension_three() {
        let (g, orient) = euclid(3);
        let e1 = KForm::from_terms(3, 1, &[(&[1], 1.0)]).unwrap();
        let star = hodge_star(&e1, &g, &orient).unwrap();
        let expected = KForm::from_terms(3, 2, &[(&[2, 3], 1.0)]).unwrap();
        assert!(star.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn star_respects_orientation_sign() {
        let (g, orient) = euclid(3);
        let rev = orient.scale(-2.5);
        let e1 = KForm::from_terms(3, 1, &[(&[1], 1.0)]).unwrap();
        let plus = hodge_star(&e1, &g, &orient).unwrap();
        let minus = hodge_star(&e1, &g, &rev).unwrap();
        assert!(minus.approx_eq(&plus.scale(-1.0), 1e-14));
    }

    #[test]
    fn zero_orientation_is_rejected() {
        let g = Metric::identity(3);
        let zero = KForm::zero(3, 3);
        let e1 = KForm::from_terms(3, 1, &[(&[1], 1.0)]).unwrap();
        assert!(matches!(
            hodge_star(&e1, &g, &zero),
            Err(FormError::ZeroOrientation)
        ));
    }

    #[test]
    fn double_star_sign_law_dims_six_and_seven() {
        for n in [6usize, 7] {
            let (g, orient) = euclid(n);
            for k in 0..=n {
                let mut a = KForm::zero(n, k);
                // an arbitrary but fixed form touching several monomials
                for (r, c) in a.coefficients_mut().iter_mut().enumerate() {
                    *c = ((r + 1) as f64 * 0.37).sin();
                }
                let ss = hodge_star(&hodge_star(&a, &g, &orient).unwrap(), &g, &orient).unwrap();
                let sign = if (k * (n - k)) % 2 == 0 { 1.0 } else { -1.0 };
                assert!(
                    ss.approx_eq(&a.scale(sign), 1e-12),
                    "double star failed for n={n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn wedge_against_star_recovers_inner_product() {
        // a ^ *b = <a, b> dV on a non-trivial metric
        let mat = vec![
            2.0, 0.3, 0.0, 0.1, //
            0.3, 1.5, 0.2, 0.0, //
            0.0, 0.2, 1.0, 0.4, //
            0.1, 0.0, 0.4, 3.0,
        ];
        let g = Metric::new(4, mat).unwrap();
        let mut orient = KForm::zero(4, 4);
        orient.coefficients_mut()[0] = 1.0;
        let a = KForm::from_terms(4, 2, &[(&[1, 2], 1.0), (&[3, 4], -2.0)]).unwrap();
        let b = KForm::from_terms(4, 2, &[(&[1, 3], 0.5), (&[2, 4], 1.5)]).unwrap();
        let star_b = hodge_star(&b, &g, &orient).unwrap();
        let lhs = a.wedge(&star_b).unwrap();
        let inner = form_inner(&a, &b, &g).unwrap();
        let dv = g.det().sqrt();
        assert!((lhs.component(&[1, 2, 3, 4]) - inner * dv).abs() < 1e-12);
    }

    #[test]
    fn star_is_an_isometry() {
        let mat = vec![
            1.3, 0.2, 0.0, //
            0.2, 2.0, -0.1, //
            0.0, -0.1, 0.8,
        ];
        let g = Metric::new(3, mat).unwrap();
        let mut orient = KForm::zero(3, 3);
        orient.coefficients_mut()[0] = 1.0;
        let a = KForm::from_terms(3, 1, &[(&[1], 1.0), (&[2], -0.5), (&[3], 2.0)]).unwrap();
        let star = hodge_star(&a, &g, &orient).unwrap();
        let na = norm2(&a, &g).unwrap();
        let ns = norm2(&star, &g).unwrap();
        assert!((na - ns).abs() < 1e-12);
    }

    #[test]
    fn model_three_form_star() {
        // the dimension-7 model 3-form against the identity metric
        let phi = KForm::from_terms(
            7,
            3,
            &[
                (&[1, 2, 7], 1.0),
                (&[3, 4, 7], 1.0),
                (&[5, 6, 7], 1.0),
                (&[1, 3, 5], 1.0),
                (&[1, 4, 6], -1.0),
                (&[2, 3, 6], -1.0),
                (&[2, 4, 5], -1.0),
            ],
        )
        .unwrap();
        let (g, orient) = euclid(7);
        let star = hodge_star(&phi, &g, &orient).unwrap();
        // monomial-wise: *(e^I) = sign(I, Ic) e^{Ic}
        let mut expected = KForm::zero(7, 4);
        for (mi, c) in phi.terms() {
            let comp = mi.complement(7);
            let sign = concat_sign(&mi, &comp);
            let prev = expected.coeff(&comp);
            expected.set_coeff(&comp, prev + sign * c);
        }
        assert!(star.approx_eq(&expected, 1e-13));
        // phi ^ *phi = |phi|^2 dV = 7 dV
        let top = phi.wedge(&star).unwrap();
        assert!((top.component(&[1, 2, 3, 4, 5, 6, 7]) - 7.0).abs() < 1e-12);
        // frozen expansion from the monomial-wise rule
        let frozen = KForm::from_terms(
            7,
            4,
            &[
                (&[3, 4, 5, 6], 1.0),
                (&[1, 2, 5, 6], 1.0),
                (&[1, 2, 3, 4], 1.0),
                (&[2, 4, 6, 7], -1.0),
                (&[2, 3, 5, 7], 1.0),
                (&[1, 4, 5, 7], 1.0),
                (&[1, 3, 6, 7], 1.0),
            ],
        )
        .unwrap();
        assert!(star.approx_eq(&frozen, 1e-13));
    }
}
