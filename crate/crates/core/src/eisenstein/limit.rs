//! The q → 1 limit (1 − q)^s ζ_q(s) → (s − 1)! ζ(s).

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{BigFloat, Rat};
use crate::error::{Error, Result};
use crate::linform::zeta_q;
use crate::qcomb::bernoulli;

/// ζ(s) for even s ≥ 2 from |B_s| (2π)^s / (2 s!).
pub fn zeta_even(s: u32, prec: usize) -> Result<BigFloat> {
    if s < 2 || !s.is_multiple_of(2) {
        return Err(Error::InvalidParams("s must be even and >= 2".into()));
    }
    let fact: BigInt = (1..=s).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let c = bernoulli(s as usize).abs() / Rat::from_integer(fact * 2);
    let two_pi = BigFloat::pi(prec).mul(&BigFloat::from_i64(2, prec));
    Ok(two_pi.powi(s as i64).mul_rat(&c))
}

/// |(1 − q0)^s ζ_q0(s)/(s − 1)! − ζ(s)| / ζ(s) for even s and 0 < q0 < 1.
pub fn q_limit_relative_error(s: u32, q0: &Rat, prec: usize) -> Result<f64> {
    if !q0.is_positive() {
        return Err(Error::InvalidParams("q0 must lie in (0, 1)".into()));
    }
    let exact = zeta_even(s, prec)?;
    let fact: BigInt = (1..s).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let one_minus = Rat::one() - q0;
    let approx = zeta_q(s, q0, prec)?.mul(&BigFloat::from_rat(&one_minus, prec).powi(s as i64)).div(&BigFloat::from_bigint(&fact, prec));
    Ok(approx.sub(&exact).div(&exact).abs().to_f64())
}
