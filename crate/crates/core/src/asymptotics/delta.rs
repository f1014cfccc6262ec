//! The dimension bound δ(A, r), its asymptotic constant, and the linear-independence criterion.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::rat::rat;
use crate::arith::{BigFloat, Rat};
use crate::error::{Error, Result};
use crate::linform::Params;

/// An exact number a + b/π² with rational a, b.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiLinear {
    #[serde(with = "crate::arith::rat::serde_rat")]
    pub a: Rat,
    #[serde(with = "crate::arith::rat::serde_rat")]
    pub b: Rat,
}

impl PiLinear {
    pub fn new(a: Rat, b: Rat) -> Self {
        PiLinear { a, b }
    }

    pub fn add(&self, o: &Self) -> Self {
        PiLinear::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        PiLinear::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PiLinear::new(&self.a * c, &self.b * c)
    }

    pub fn eval(&self, prec: usize) -> BigFloat {
        let pi2 = BigFloat::pi(prec).powi(2);
        BigFloat::from_rat(&self.a, prec).add(&BigFloat::from_rat(&self.b, prec).div(&pi2))
    }
}

/// x/y = u/v for linear forms in 1/π², checked as polynomial identity x·v = u·y.
pub fn ratio_equals(x: &PiLinear, y: &PiLinear, u: &PiLinear, v: &PiLinear) -> bool {
    let lhs = [&x.a * &v.a, &x.a * &v.b + &x.b * &v.a, &x.b * &v.b];
    let rhs = [&u.a * &y.a, &u.a * &y.b + &u.b * &y.a, &u.b * &y.b];
    lhs == rhs
}

/// Numerator 4rA + A − 4r² and denominator (24/π² + 2)A + 8r² of δ(A, r).
pub fn delta_parts(a: u32, r: u32) -> Result<(PiLinear, PiLinear)> {
    Params::check_ar(a, r)?;
    let (a, r) = (a as i64, r as i64);
    let num = PiLinear::new(rat(4 * r * a + a - 4 * r * r, 1), Rat::zero());
    let den = PiLinear::new(rat(2 * a + 8 * r * r, 1), rat(24 * a, 1));
    Ok((num, den))
}

/// δ(A, r) = (4rA + A − 4r²) / ((24/π² + 2)A + 8r²).
pub fn delta(a: u32, r: u32, prec: usize) -> Result<BigFloat> {
    let (num, den) = delta_parts(a, r)?;
    Ok(num.eval(prec + 16).div(&den.eval(prec + 16)).with_precision(prec))
}

/// The integer r ∈ [1, A/2] maximizing δ(A, r), with its value.
pub fn best_r(a: u32, prec: usize) -> Result<(u32, BigFloat)> {
    Params::check_ar(a, 1)?;
    let mut best: Option<(u32, BigFloat)> = None;
    for r in 1..=a / 2 {
        let d = delta(a, r, prec)?;
        if best.as_ref().is_none_or(|(_, b)| d.cmp_value(b).is_gt()) {
            best = Some((r, d));
        }
    }
    Ok(best.expect("A >= 2 gives at least one r"))
}

/// The constant max_{u>0} 4u / (24/π² + 2 + 8u²) = π / (2√(π² + 12)) and its maximizer √((24/π² + 2)/8).
#[derive(Clone, Debug)]
pub struct DeltaConstant {
    pub value: BigFloat,
    pub argmax: BigFloat,
}

pub fn delta_asymptotic_constant(prec: usize) -> DeltaConstant {
    let wp = prec + 16;
    let pi = BigFloat::pi(wp);
    let pi2 = pi.mul(&pi);
    let value = pi.div(&BigFloat::from_i64(2, wp).mul(&pi2.add(&BigFloat::from_i64(12, wp)).sqrt()));
    let c = BigFloat::from_i64(24, wp).div(&pi2).add(&BigFloat::from_i64(2, wp));
    let argmax = c.div(&BigFloat::from_i64(8, wp)).sqrt();
    DeltaConstant { value: value.with_precision(prec), argmax: argmax.with_precision(prec) }
}

/// The relaxed objective 4u / (24/π² + 2 + 8u²).
pub fn relaxed_delta(u: f64) -> f64 {
    let pi2 = std::f64::consts::PI.powi(2);
    4.0 * u / (24.0 / pi2 + 2.0 + 8.0 * u * u)
}

/// Maximum of [`relaxed_delta`] by a grid scan followed by golden-section refinement.
pub fn delta_constant_by_search() -> (f64, f64) {
    let mut best = (0.0, 0.0);
    for i in 1..=4000 {
        let u = i as f64 * 1e-3;
        let v = relaxed_delta(u);
        if v > best.1 {
            best = (u, v);
        }
    }
    let (mut lo, mut hi) = (best.0 - 1e-3, best.0 + 1e-3);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if relaxed_delta(m1) < relaxed_delta(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let u = 0.5 * (lo + hi);
    (u, relaxed_delta(u))
}

/// 1 − α/β.
pub fn nesterenko_bound(alpha: &BigFloat, beta: &BigFloat) -> Result<BigFloat> {
    if beta.is_zero() || beta.is_negative() {
        return Err(Error::InvalidParams("beta must be positive".into()));
    }
    let prec = alpha.precision().max(beta.precision());
    Ok(BigFloat::one(prec).sub(&alpha.div(beta)))
}

/// The three growth rates per unit log|1/q| as exact values a + b/π².
#[derive(Clone, Debug, Serialize)]
pub struct RateCoefficients {
    /// −r(A−2r)/2.
    pub series: PiLinear,
    /// (A + 4r²)/8.
    pub coefficients: PiLinear,
    /// 3A/π² + A/8 + r²/2.
    pub denominator: PiLinear,
}

pub fn rate_coefficients(a: u32, r: u32) -> Result<RateCoefficients> {
    Params::check_ar(a, r)?;
    let (a, r) = (a as i64, r as i64);
    Ok(RateCoefficients {
        series: PiLinear::new(rat(-r * (a - 2 * r), 2), Rat::zero()),
        coefficients: PiLinear::new(rat(a + 4 * r * r, 8), Rat::zero()),
        denominator: PiLinear::new(rat(a + 4 * r * r, 8), rat(3 * a, 1)),
    })
}

/// α = series + denominator and β = coefficients + denominator rates.
pub fn criterion_inputs(a: u32, r: u32) -> Result<(PiLinear, PiLinear)> {
    let c = rate_coefficients(a, r)?;
    Ok((c.series.add(&c.denominator), c.coefficients.add(&c.denominator)))
}

/// 1 − α/β recombined from the rates equals δ(A, r), exactly in ℚ + ℚ/π².
pub fn recombination_is_exact(a: u32, r: u32) -> Result<bool> {
    let (alpha, beta) = criterion_inputs(a, r)?;
    let (num, den) = delta_parts(a, r)?;
    // (β − α)/β = num/den.
    Ok(ratio_equals(&beta.sub(&alpha), &beta, &num, &den))
}

/// 1 − α/β evaluated numerically from the rates.
pub fn delta_from_rates(a: u32, r: u32, prec: usize) -> Result<BigFloat> {
    let (alpha, beta) = criterion_inputs(a, r)?;
    nesterenko_bound(&alpha.eval(prec), &beta.eval(prec))
}
