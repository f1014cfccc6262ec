//! The common denominator D̄_n = q^e d_n(1/q)^m of A_n and B_n.

use std::f64::consts::PI;

use serde::Serialize;

use super::form::{zeta3_form, Zeta3Form};
use crate::arith::rat::{ln_abs, rat_pow};
use crate::arith::ratfunc::in_z_inv_q;
use crate::arith::{Rat, RatFunc};
use crate::asymptotics::fit::fit_limit;
use crate::error::Result;
use crate::qcomb::{d_n, d_n_at};

/// Largest power of d_n(1/q) tried.
pub const MAX_POWER: u32 = 4;

/// The smallest m with a shift q^e clearing both forms, at one n.
#[derive(Clone, Debug, Serialize)]
pub struct DbarRow {
    pub n: u32,
    /// `None` when no m ≤ [`MAX_POWER`] works.
    pub m: Option<u32>,
    pub e: Option<i64>,
    /// (1/n²)·log|q0^e d_n(1/q0)^m|.
    pub slope: Option<f64>,
}

/// Exact search for D̄_n at one n.
pub fn dbar_for(form: &Zeta3Form, q0: &Rat) -> Result<DbarRow> {
    let n = form.n;
    let inv = d_n(n as usize).subs_inv();
    for m in 0..=MAX_POWER {
        let den = RatFunc::from_upoly(inv.pow(m));
        let pa = den.mul(&form.a);
        let pb = den.mul(&form.b);
        if let Some(e) = clearing_shift(&[&pa, &pb]) {
            let check = RatFunc::q_pow(e);
            debug_assert!(in_z_inv_q(&check.mul(&pa)) && in_z_inv_q(&check.mul(&pb)));
            let slope = (n > 0).then(|| {
                let dn = d_n_at(n as usize, &rat_pow(q0, -1));
                (e as f64 * ln_abs(q0) + m as f64 * ln_abs(&dn)) / (n as f64).powi(2)
            });
            return Ok(DbarRow { n, m: Some(m), e: Some(e), slope });
        }
    }
    Ok(DbarRow { n, m: None, e: None, slope: None })
}

/// The largest e with q^e·x ∈ ℤ[1/q] for every x, if one exists.
fn clearing_shift(xs: &[&RatFunc]) -> Option<i64> {
    let mut top = i64::MIN;
    for x in xs {
        if x.is_zero() {
            continue;
        }
        let p = x.num();
        if !x.is_laurent() || !p.is_even() || !p.has_integer_coeffs() {
            return None;
        }
        top = top.max(p.max_exp().unwrap_or(0) / 2);
    }
    Some(if top == i64::MIN { 0 } else { -top })
}

/// Probe over several n, with the slope compared against both normalizations of 9/π².
#[derive(Clone, Debug, Serialize)]
pub struct DbarReport {
    pub rows: Vec<DbarRow>,
    /// (9/π²)·log|1/q0|.
    pub target_scaled: f64,
    /// 9/π².
    pub target_plain: f64,
    pub fitted_slope: Option<f64>,
}

pub fn dbar_probe(ns: &[u32], q0: &Rat) -> Result<DbarReport> {
    let mut rows = Vec::new();
    for &n in ns {
        rows.push(dbar_for(&zeta3_form(n)?, q0)?);
    }
    let samples: Vec<(u32, f64)> = rows.iter().filter_map(|r| r.slope.map(|s| (r.n, s))).collect();
    let fitted_slope = (!samples.is_empty()).then(|| fit_limit(&samples));
    Ok(DbarReport { rows, target_scaled: 9.0 / (PI * PI) * -ln_abs(q0), target_plain: 9.0 / (PI * PI), fitted_slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn n_zero_needs_nothing() {
        let row = dbar_for(&zeta3_form(0).unwrap(), &rat(1, 2)).unwrap();
        assert_eq!(row.m, Some(0));
        assert_eq!(row.e, Some(0));
    }

    #[test]
    fn shift_clears_positive_powers() {
        let x = RatFunc::q_pow(3);
        assert_eq!(clearing_shift(&[&x]), Some(-3));
        assert_eq!(clearing_shift(&[&RatFunc::inv_one_minus_q_pow(1, 1)]), None);
    }
}
