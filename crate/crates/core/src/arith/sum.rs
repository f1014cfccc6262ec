//! Summation of convergent series with a certified geometric tail bound.

use super::bigfloat::BigFloat;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TailConfig {
    /// Hard limit on the number of terms consumed.
    pub max_terms: usize,
    /// Past this index, a term that does not decrease in magnitude signals divergence.
    pub divergence_cutoff: usize,
}

impl Default for TailConfig {
    fn default() -> Self {
        TailConfig { max_terms: 1_000_000, divergence_cutoff: 100_000 }
    }
}

/// A partial sum whose distance to the full series is below `tail_bound`.
#[derive(Clone, Debug)]
pub struct TailSum {
    pub value: BigFloat,
    pub tail_bound: BigFloat,
    pub terms_used: usize,
}

/// Sums `terms` with one fixed ratio bound valid for the whole series.
pub fn sum_with_tail<I>(terms: I, ratio_bound: &BigFloat, tol: &BigFloat, cfg: &TailConfig) -> Result<TailSum>
where
    I: IntoIterator<Item = BigFloat>,
{
    let rho = ratio_bound.to_f64();
    sum_with_tail_by(terms, |_| Some(rho), tol, cfg)
}

/// Sums `terms` using index-dependent ratio bounds.
///
/// `ratio_from(k)` must return ρ with |t_(j+1)| ≤ ρ |t_j| for every j ≥ k, or
/// `None` while no such bound is known. Summation stops after term k once
/// |t_k| ρ / (1 − ρ) < tol.
pub fn sum_with_tail_by<I, F>(terms: I, mut ratio_from: F, tol: &BigFloat, cfg: &TailConfig) -> Result<TailSum>
where
    I: IntoIterator<Item = BigFloat>,
    F: FnMut(usize) -> Option<f64>,
{
    let prec = tol.precision();
    let mut value = BigFloat::zero(prec);
    let mut prev: Option<BigFloat> = None;
    let mut used = 0;
    for (k, t) in terms.into_iter().enumerate() {
        used = k + 1;
        if k >= cfg.max_terms {
            return Err(Error::Divergence);
        }
        if !t.is_finite() {
            return Err(Error::Divergence);
        }
        value = value.add(&t);
        if let Some(p) = &prev {
            if k > cfg.divergence_cutoff && !t.is_zero() && !t.abs_lt(p) {
                return Err(Error::Divergence);
            }
        }
        if !t.is_zero() {
            if let Some(rho) = ratio_from(k) {
                if rho < 1.0 {
                    let factor = BigFloat::from_f64(rho / (1.0 - rho), 64);
                    let bound = t.abs().mul(&factor);
                    if bound.abs_lt(tol) {
                        return Ok(TailSum { value, tail_bound: bound, terms_used: k + 1 });
                    }
                }
            }
        }
        prev = Some(t);
    }
    Ok(TailSum { value, tail_bound: BigFloat::zero(prec), terms_used: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn geometric_thirds() {
        let p = 256;
        let third = BigFloat::from_rat(&rat(1, 3), p);
        let terms = (1..).map(|k| third.powi(k));
        let tol = BigFloat::from_f64(1e-20, p);
        let s = sum_with_tail(terms, &third, &tol, &TailConfig::default()).unwrap();
        let err = s.value.sub(&BigFloat::from_rat(&rat(1, 2), p)).abs();
        assert!(err.abs_lt(&tol));
        assert!(s.tail_bound.abs_lt(&tol));
    }

    #[test]
    fn empty_series_is_zero() {
        let tol = BigFloat::from_f64(1e-20, 128);
        let s = sum_with_tail(std::iter::empty(), &BigFloat::from_f64(0.5, 64), &tol, &TailConfig::default()).unwrap();
        assert!(s.value.is_zero());
    }

    #[test]
    fn divergence_is_detected() {
        let tol = BigFloat::from_f64(1e-20, 128);
        let cfg = TailConfig { max_terms: 1000, divergence_cutoff: 10 };
        let terms = (1..).map(|k| BigFloat::from_i64(k, 128));
        let r = sum_with_tail_by(terms, |_| None, &tol, &cfg);
        assert_eq!(r.unwrap_err(), Error::Divergence);
    }
}
