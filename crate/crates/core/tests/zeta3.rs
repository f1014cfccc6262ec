use qzeta::arith::{rat, BigFloat, Rat};
use qzeta::asymptotics::fit_limit;
use qzeta::zeta3::{
    bgn_derivative_at, bgn_sum, bgn_summand_at, classical_ball, dbar_probe, qball_numeric, qbgn_numeric, zeta3_form, zeta3_partial_fractions,
    zeta3_residual,
};

#[test]
fn partial_fractions_are_exact() {
    for n in 0..=12 {
        let k = zeta3_partial_fractions(n).unwrap();
        if n <= 8 {
            assert!(k.reconstruction_holds(), "n = {n}");
        }
        assert!(k.residue_sum().is_zero(), "n = {n}");
    }
}

#[test]
fn ball_equals_bgn() {
    for q0 in [rat(1, 3), rat(-1, 3), rat(2, 5)] {
        for n in [0, 2, 5] {
            let b = qball_numeric(n, &q0, 256).unwrap();
            let g = qbgn_numeric(n, &q0, 256).unwrap();
            assert!(b.sub(&g).abs().to_f64() <= 1e-40 * b.abs().to_f64().max(1.0), "n = {n}, q0 = {q0}");
        }
    }
}

#[test]
fn zeta3_decomposition() {
    let tol = BigFloat::from_i64(10, 256).powi(-40);
    for n in [0, 1, 4] {
        let form = zeta3_form(n).unwrap();
        let res = zeta3_residual(&form, &rat(1, 3), 256).unwrap();
        assert!(res.residual.abs_lt(&tol), "n = {n}");
    }
    let f0 = zeta3_form(0).unwrap();
    assert_eq!((f0.a.clone(), f0.b.clone()), (qzeta::arith::RatFunc::one(), qzeta::arith::RatFunc::zero()));
}

#[test]
fn dbar_uses_three_copies() {
    let rep = dbar_probe(&[0, 1, 2, 3, 4, 5], &rat(1, 2)).unwrap();
    assert_eq!(rep.rows[0].m, Some(0));
    for row in &rep.rows[1..] {
        assert_eq!(row.m, Some(3), "n = {}", row.n);
    }
}

#[test]
fn analytic_derivative_matches_finite_difference() {
    let (n, k, q0, prec) = (3u32, 6usize, rat(1, 2), 256);
    let exact = bgn_derivative_at(n, k, &q0, prec).unwrap();
    let h = BigFloat::from_i64(10, prec).powi(-25);
    let x = BigFloat::from_i64(k as i64, prec);
    let plus = bgn_summand_at(n, &x.add(&h), &q0).unwrap();
    let minus = bgn_summand_at(n, &x.sub(&h), &q0).unwrap();
    let fd = plus.sub(&minus).div(&h.mul(&BigFloat::from_i64(2, prec)));
    assert!(fd.sub(&exact).div(&exact).abs().to_f64() < 1e-20);
}

#[test]
fn classical_limit_improves() {
    let target = classical_ball(2, 100_000);
    let err = |q0: Rat| {
        let v = qball_numeric(2, &q0, 128).unwrap();
        let one_minus = BigFloat::from_rat(&(Rat::from_integer(1.into()) - &q0), 128);
        (v.mul(&one_minus.powi(3)).to_f64() - target).abs() / target
    };
    let (e9, e99) = (err(rat(9, 10)), err(rat(99, 100)));
    assert!(e99 < e9, "{e9} {e99}");
    assert!(e99 < 0.05);
}

/// The series A_n ζ_q(3) − B_n, without the prefactor q^(n(n+1)).
#[test]
fn bgn_slope_vanishes() {
    let q0 = rat(1, 2);
    let samples: Vec<(u32, f64)> = (5..=30u32)
        .map(|n| (n, bgn_sum(n, &q0, 256).unwrap().ln_abs_f64() / (n as f64).powi(2)))
        .collect();
    let fitted = fit_limit(&samples);
    assert!(fitted.abs() < 0.05, "fitted slope {fitted}");
}
