//! Empirical growth rates of S_n^[ε], P_s^[ε], D_n and d_n.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::fit::{SlopeEstimate, SlopePoint};
use crate::arith::rat::{ln_abs, rat_pow};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linform::denom::ln_abs_d_n_denominator;
use crate::linform::numeric::s_eps_scaled;
use crate::linform::table::pole_table_at;
use crate::linform::{eps_forms, AtPoint, Eps, Params};
use crate::qcomb::d_n_at;

/// log|1/q0|.
pub fn log_inv_q(q0: &Rat) -> Result<f64> {
    let l = -ln_abs(q0);
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::InvalidParams("need 0 < |q0| < 1".into()));
    }
    Ok(l)
}

const HYPOTHESIS_NOTE: &str =
    "the growth hypothesis A >= r/2 is implied by the enforced condition 1 <= r <= A/2";

/// −(1/2)·r(A−2r)·log|1/q0|.
pub fn target_s(a: u32, r: u32, q0: &Rat) -> Result<f64> {
    Ok(-0.5 * (r * (a - 2 * r)) as f64 * log_inv_q(q0)?)
}

/// (1/8)(A + 4r²)·log|1/q0|.
pub fn bound_p(a: u32, r: u32, q0: &Rat) -> Result<f64> {
    Ok((a + 4 * r * r) as f64 / 8.0 * log_inv_q(q0)?)
}

/// (3A/π² + A/8 + r²/2)·log|1/q0|.
pub fn target_d(a: u32, r: u32, q0: &Rat) -> Result<f64> {
    let (a, r) = (a as f64, r as f64);
    Ok((3.0 * a / (PI * PI) + a / 8.0 + r * r / 2.0) * log_inv_q(q0)?)
}

/// (3/π²)·log|1/q0|.
pub fn target_dn(q0: &Rat) -> Result<f64> {
    Ok(3.0 / (PI * PI) * log_inv_q(q0)?)
}

fn positive_ns(ns: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = ns.iter().copied().filter(|&n| n > 0).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// (1/n²)·log|S_n^[ε](q0)| against −(1/2)r(A−2r)log|1/q0|.
pub fn slope_s(a: u32, r: u32, eps: Eps, q0: &Rat, ns: &[u32], prec: usize) -> Result<SlopeEstimate> {
    Params::check_ar(a, r)?;
    if a == 2 * r {
        return Err(Error::InvalidParams("A = 2r gives a zero limit, excluded".into()));
    }
    let target = target_s(a, r, q0)?;
    let lq = ln_abs(q0);
    let samples: Vec<(u32, f64)> = positive_ns(ns)
        .into_par_iter()
        .map(|n| -> Result<(u32, f64)> {
            let p = Params::new(a, r, n)?;
            let s = s_eps_scaled(&p, eps, q0, prec)?.value;
            if s.is_zero() {
                return Err(Error::PrecisionExhausted(format!("S_n vanished numerically at n = {n}")));
            }
            let ln = s.ln_abs_f64() - p.half_gap() as f64 / 2.0 * lq;
            Ok((n, ln / (n as f64 * n as f64)))
        })
        .collect::<Result<_>>()?;
    Ok(SlopeEstimate::new("S", samples, target).with_note(HYPOTHESIS_NOTE))
}

/// Per-n values of (1/n²)·log|P_s^[ε](q0)| for every s.
#[derive(Clone, Debug, Serialize)]
pub struct PSample {
    pub n: u32,
    pub per_s: Vec<(u32, f64)>,
}

/// Upper-bound check of (1/n²)·log|P_s^[ε](q0)| against (1/8)(A+4r²)log|1/q0|.
#[derive(Clone, Debug, Serialize)]
pub struct PSlopeReport {
    /// Slope sequence of max_s (1/n²)log|P_s^[ε]|.
    pub estimate: SlopeEstimate,
    pub samples: Vec<PSample>,
    pub margin: f64,
    pub all_within: bool,
}

/// Samples every P_s^[ε](q0) exactly via the point-specialized table.
pub fn slope_p(a: u32, r: u32, eps: Eps, q0: &Rat, ns: &[u32], margin: f64) -> Result<PSlopeReport> {
    Ok(slope_p_multi(a, r, &[eps], q0, ns, margin)?.remove(0))
}

/// [`slope_p`] for several ε sharing one table per n.
pub fn slope_p_multi(a: u32, r: u32, eps: &[Eps], q0: &Rat, ns: &[u32], margin: f64) -> Result<Vec<PSlopeReport>> {
    Params::check_ar(a, r)?;
    let bound = bound_p(a, r, q0)?;
    let ctx = AtPoint::new(q0.clone())?;
    let lq = ln_abs(q0);
    let per_n: Vec<Vec<PSample>> = positive_ns(ns)
        .into_par_iter()
        .map(|n| -> Result<Vec<PSample>> {
            let p = Params::new(a, r, n)?;
            let table = pole_table_at(&p, &ctx)?;
            let n2 = (n as f64).powi(2);
            eps.iter()
                .map(|&e| {
                    let forms = eps_forms(&ctx, &table, e)?;
                    let per_s = forms
                        .entries()
                        .into_iter()
                        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                        .map(|(s, v)| (s, (ln_abs(v) - p.half_gap() as f64 / 2.0 * lq) / n2))
                        .collect();
                    Ok(PSample { n, per_s })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok((0..eps.len())
        .map(|i| {
            let samples: Vec<PSample> = per_n.iter().map(|v| v[i].clone()).collect();
            let all_within = samples.iter().all(|s| s.per_s.iter().all(|(_, v)| *v <= bound + margin));
            let maxima: Vec<(u32, f64)> = samples
                .iter()
                .filter(|s| !s.per_s.is_empty())
                .map(|s| (s.n, s.per_s.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max)))
                .collect();
            let estimate = SlopeEstimate::new("P", maxima, bound).with_note(HYPOTHESIS_NOTE);
            PSlopeReport { estimate, samples, margin, all_within }
        })
        .collect())
}

/// (1/n²)·log|D_n(q0)| against (3A/π² + A/8 + r²/2)log|1/q0|.
pub fn slope_d(a: u32, r: u32, q0: &Rat, ns: &[u32]) -> Result<SlopeEstimate> {
    Params::check_ar(a, r)?;
    let target = target_d(a, r, q0)?;
    let samples: Vec<(u32, f64)> = positive_ns(ns)
        .into_par_iter()
        .map(|n| -> Result<(u32, f64)> {
            let p = Params::new(a, r, n)?;
            Ok((n, ln_abs_d_n_denominator(&p, q0) / (n as f64).powi(2)))
        })
        .collect::<Result<_>>()?;
    Ok(SlopeEstimate::new("D", samples, target))
}

/// (1/n²)·log|d_n(1/q0)| against (3/π²)log|1/q0|.
pub fn slope_dn(q0: &Rat, ns: &[u32]) -> Result<SlopeEstimate> {
    let target = target_dn(q0)?;
    let inv = rat_pow(q0, -1);
    let samples: Vec<(u32, f64)> = positive_ns(ns)
        .into_par_iter()
        .map(|n| (n, ln_abs(&d_n_at(n as usize, &inv)) / (n as f64).powi(2)))
        .collect();
    Ok(SlopeEstimate::new("d_n", samples, target))
}

/// CSV rows (n, value, target, gap).
pub fn to_csv_rows(points: &[SlopePoint]) -> Vec<[String; 4]> {
    points.iter().map(|p| [p.n.to_string(), format!("{:.12}", p.value), format!("{:.12}", p.target), format!("{:.6e}", p.gap)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn targets() {
        let q = rat(1, 2);
        assert!((target_s(4, 1, &q).unwrap() + 2f64.ln()).abs() < 1e-15);
        assert!((target_s(6, 2, &rat(1, 3)).unwrap() + 2.0 * 3f64.ln()).abs() < 1e-14);
        assert!((bound_p(4, 1, &q).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((target_d(4, 1, &q).unwrap() - 1.535_913).abs() < 1e-6);
        assert!((target_dn(&q).unwrap() - 0.21069).abs() < 1e-5);
    }

    #[test]
    fn d1_point_is_zero() {
        let e = slope_dn(&rat(1, 2), &[1]).unwrap();
        assert_eq!(e.points[0].value, 0.0);
    }

    #[test]
    fn excluded_cases() {
        assert!(slope_s(4, 2, Eps::Odd, &rat(1, 2), &[1, 2], 64).is_err());
        assert!(slope_s(4, 1, Eps::Odd, &rat(3, 2), &[1, 2], 64).is_err());
    }

    #[test]
    fn small_p_samples_decrease_toward_bound() {
        let reps = slope_p_multi(4, 1, &Eps::both(), &rat(1, 2), &[0, 2, 4, 6], 0.02).unwrap();
        for rep in reps {
            assert_eq!(rep.samples.first().map(|s| s.n), Some(2));
            let m: Vec<f64> = rep.estimate.points.iter().map(|p| p.value).collect();
            assert!(m.windows(2).all(|w| w[1] < w[0]));
            assert!(m[m.len() - 1] > rep.estimate.target);
        }
    }
}
