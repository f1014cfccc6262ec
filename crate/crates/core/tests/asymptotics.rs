use proptest::prelude::*;
use qzeta::arith::{rat, BigFloat};
use qzeta::asymptotics::slopes::{bound_p, target_d, target_dn, target_s};
use qzeta::asymptotics::{
    best_r, delta, delta_asymptotic_constant, delta_from_rates, nesterenko_bound, recombination_is_exact, slope_dn, slope_s,
};
use qzeta::linform::Eps;

fn valid_grid(max_a: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..=max_a).step_by(2).flat_map(|a| (1..=a / 2).map(move |r| (a, r)))
}

#[test]
fn delta_values() {
    assert!((delta(12, 2, 256).unwrap().to_f64() - 1.080_059).abs() < 1e-6);
    assert!(delta(12, 2, 256).unwrap().to_f64() > 1.0);
    assert_eq!(best_r(12, 256).unwrap().0, 2);
    let c = delta_asymptotic_constant(256);
    assert!((c.value.to_f64() - 0.335_892).abs() < 1e-6);
}

#[test]
fn rates_recombine_to_delta() {
    for (a, r) in valid_grid(20) {
        assert!(recombination_is_exact(a, r).unwrap(), "({a}, {r})");
        let d = delta(a, r, 256).unwrap();
        let f = delta_from_rates(a, r, 256).unwrap();
        assert!(d.sub(&f).abs().to_f64() < 1e-60, "({a}, {r})");
    }
}

#[test]
fn nesterenko_edge_cases() {
    let p = 128;
    let x = BigFloat::from_i64(3, p);
    assert!(nesterenko_bound(&x, &x).unwrap().is_zero());
    assert_eq!(nesterenko_bound(&BigFloat::zero(p), &x).unwrap().to_f64(), 1.0);
    assert!(nesterenko_bound(&x, &BigFloat::zero(p)).is_err());
    assert!(nesterenko_bound(&x, &BigFloat::from_i64(-1, p)).is_err());
}

#[test]
fn s_slope_converges() {
    let q0 = rat(1, 2);
    let ns: Vec<u32> = (4..=40).step_by(4).collect();
    let est = slope_s(4, 1, Eps::Odd, &q0, &ns, 256).unwrap();
    assert!(est.gap_fitted < 0.05, "{}", est.gap_fitted);
    let gaps: Vec<f64> = est.points.iter().map(|p| p.gap).collect();
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
}

#[test]
fn cyclotomic_denominator_slope() {
    let ns: Vec<u32> = (10..=60).step_by(5).collect();
    let est = slope_dn(&rat(1, 2), &ns).unwrap();
    assert!(est.gap_raw < 0.05, "{}", est.gap_raw);
}

proptest! {
    #[test]
    fn targets_scale_with_log_inverse_q((a, r) in (1u32..=10).prop_flat_map(|h| (Just(2 * h), 1..=h)), m in 2i64..=9) {
        let (q1, q2) = (rat(1, m), rat(1, m * m));
        for (x, y) in [
            (target_s(a, r, &q1).unwrap(), target_s(a, r, &q2).unwrap()),
            (bound_p(a, r, &q1).unwrap(), bound_p(a, r, &q2).unwrap()),
            (target_d(a, r, &q1).unwrap(), target_d(a, r, &q2).unwrap()),
            (target_dn(&q1).unwrap(), target_dn(&q2).unwrap()),
        ] {
            if x == 0.0 {
                prop_assert_eq!(y, 0.0);
            } else {
                prop_assert!((x / y - 0.5).abs() < 1e-15);
            }
        }
    }
}
