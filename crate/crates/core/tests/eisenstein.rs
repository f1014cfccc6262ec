use proptest::prelude::*;
use qzeta::arith::{rat, BigFloat, Rat};
use qzeta::eisenstein::{
    eisenstein_expansion, express_in_e4_e6, monomial_pairs, q_limit_relative_error, sigma, zetaq_even_in_basis, zetaq_expression_matches,
};
use qzeta::linform::zeta_q;

#[test]
fn weights_eight_to_fourteen() {
    for w in [8u32, 10, 12, 14] {
        let n_solve = monomial_pairs(w).len() - 1;
        let target = eisenstein_expansion(w / 2, n_solve + 40).unwrap();
        let e = express_in_e4_e6(w, &target, n_solve, n_solve + 40).unwrap();
        assert!(e.exact(), "weight {w}: {:?}", e.mismatches);
        let sum: Rat = e.basis.iter().map(|t| t.c.clone()).sum();
        assert_eq!(sum, Rat::from_integer(1.into()), "constant terms of weight {w}");
    }
}

#[test]
fn known_coefficients() {
    let e4 = eisenstein_expansion(2, 4).unwrap();
    let c: Vec<i64> = e4.coeffs.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
    assert_eq!(c, vec![1, 240, 2160, 6720, 17520]);
    let e6 = eisenstein_expansion(3, 2).unwrap();
    assert_eq!(e6.coeffs[1], rat(-504, 1));
    assert_eq!(sigma(3, 6).to_string(), "252");
}

#[test]
fn zeta_eight_and_twelve() {
    let z8 = zetaq_even_in_basis(8, 40).unwrap();
    assert!(z8.exact);
    assert_eq!(z8.basis.len(), 1);
    assert_eq!((z8.basis[0].a, z8.basis[0].b), (2, 0));
    let z12 = zetaq_even_in_basis(12, 40).unwrap();
    assert!(zetaq_expression_matches(&z12, 50).unwrap());
    assert_eq!(z12.constant, rat(-691, 65520));
}

#[test]
fn zeta_four_two_ways() {
    let q0 = rat(1, 3);
    let expr = zetaq_even_in_basis(4, 10).unwrap();
    let via_basis = expr.eval_truncated(&q0, 120, 256).unwrap();
    let direct = zeta_q(4, &q0, 256).unwrap();
    let tol = BigFloat::from_i64(10, 256).powi(-30);
    assert!(via_basis.sub(&direct).abs_lt(&tol));
}

#[test]
fn q_to_one_limit() {
    let errs: Vec<f64> = [rat(1, 2), rat(9, 10), rat(99, 100)].iter().map(|q| q_limit_relative_error(2, q, 128).unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(q_limit_relative_error(2, &rat(-1, 2), 128).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncations_are_consistent(s in 1u32..=7, n in 1usize..=20, extra in 1usize..=20) {
        let short = eisenstein_expansion(s, n).unwrap();
        let long = eisenstein_expansion(s, n + extra).unwrap();
        prop_assert_eq!(&long.truncate(n).coeffs, &short.coeffs);
        let sq_long = long.mul(&long).truncate(n);
        prop_assert_eq!(sq_long.coeffs, short.mul(&short).coeffs);
    }
}
