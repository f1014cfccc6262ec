//! Numerical verification of S_n^[ε] = P_0^[ε] + Σ P_s^[ε] ζ_q(s) and the combined report.

use num_traits::Signed;
use serde::Serialize;

use super::denom::{check_forms, Defect, DenomVerdict};
use super::forms::EpsForms;
use super::numeric::{s_eps_scaled, zeta_q};
use super::params::{Eps, Params};
use super::table::{partial_fractions, PFTable};
use crate::arith::bigfloat::GUARD_BITS;
use crate::arith::rat::{format_rat, ln_abs};
use crate::arith::{BigFloat, Rat, RatFunc, UPoly};
use crate::error::Result;

/// Both sides of the linear-form identity at one point, scaled by q^((A−2r)n/4).
#[derive(Clone, Debug)]
pub struct Residual {
    /// Exact values of q^((A−2r)n/4)·P_s^[ε](q0), s = 0 first.
    pub scaled_forms: Vec<(u32, Rat)>,
    pub zeta: Vec<(u32, BigFloat)>,
    pub s_scaled: BigFloat,
    /// |S^[ε] − P_0^[ε] − Σ P_s^[ε] ζ_q(s)| at q0.
    pub residual: BigFloat,
    /// Working precision actually used.
    pub working_bits: usize,
}

/// Evaluates both sides of the identity; working precision grows with the size of the P_s values.
pub fn point_a_residual(p: &Params, forms: &EpsForms<RatFunc>, q0: &Rat, prec: usize) -> Result<Residual> {
    let m = p.half_gap();
    let mut scaled_forms = Vec::new();
    for (s, v) in forms.entries() {
        scaled_forms.push((s, v.mul_u_pow(m).eval_q(q0)?));
    }
    let max_ln = scaled_forms.iter().map(|(_, v)| ln_abs(v)).filter(|x| x.is_finite()).fold(0.0f64, f64::max);
    let headroom = (max_ln / std::f64::consts::LN_2).ceil().max(0.0) as usize;
    let wp = prec + GUARD_BITS + headroom;

    let s_scaled = s_eps_scaled(p, forms.eps, q0, wp)?.value;
    let mut rhs = BigFloat::zero(wp);
    let mut zeta = Vec::new();
    for (s, v) in &scaled_forms {
        let term = BigFloat::from_rat(v, wp);
        if *s == 0 {
            rhs = rhs.add(&term);
        } else {
            let z = zeta_q(*s, q0, wp)?;
            rhs = rhs.add(&term.mul(&z));
            zeta.push((*s, z.with_precision(prec)));
        }
    }
    let diff = s_scaled.sub(&rhs).abs();
    let unscale = BigFloat::from_rat(&q0.abs(), wp).sqrt().powi(-m);
    Ok(Residual {
        scaled_forms,
        zeta,
        s_scaled: s_scaled.with_precision(prec),
        residual: diff.mul(&unscale).with_precision(prec),
        working_bits: wp,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FormEntry {
    pub s: u32,
    pub num: UPoly,
    pub den: UPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaEntry {
    pub s: u32,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub s: u32,
    pub product: Option<UPoly>,
    pub defect: Option<Defect>,
}

/// Exact forms, numeric residual and denominator verdict for one (A, r, n, ε, q0).
#[derive(Clone, Debug, Serialize)]
pub struct LinearFormReport {
    pub params: Params,
    pub q: String,
    pub eps: Eps,
    pub prec: usize,
    #[serde(rename = "P")]
    pub p: Vec<FormEntry>,
    /// q^((A−2r)n/4)·S_n^[ε](q0).
    pub s_scaled: String,
    pub zeta: Vec<ZetaEntry>,
    pub residual: String,
    pub tolerance: String,
    pub residual_pass: bool,
    pub denom_pass: bool,
    pub witness: Vec<WitnessEntry>,
}

impl LinearFormReport {
    pub fn pass(&self) -> bool {
        self.residual_pass && self.denom_pass
    }

    /// Names of the failing components.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.residual_pass {
            out.push("residual");
        }
        if !self.denom_pass {
            out.push("denominator");
        }
        out
    }
}

const DIGITS: usize = 20;

/// Builds the report from forms and a denominator verdict computed beforehand.
pub fn report_from_forms(
    p: &Params,
    forms: &EpsForms<RatFunc>,
    verdict: &DenomVerdict,
    q0: &Rat,
    prec: usize,
    tol: &BigFloat,
) -> Result<LinearFormReport> {
    let res = point_a_residual(p, forms, q0, prec)?;
    let entries = forms
        .entries()
        .into_iter()
        .map(|(s, v)| FormEntry { s, num: v.num().clone(), den: v.den() })
        .collect();
    Ok(LinearFormReport {
        params: *p,
        q: format_rat(q0),
        eps: forms.eps,
        prec,
        p: entries,
        s_scaled: res.s_scaled.to_sci_string(DIGITS),
        zeta: res.zeta.iter().map(|(s, z)| ZetaEntry { s: *s, value: z.to_sci_string(DIGITS) }).collect(),
        residual: res.residual.to_sci_string(6),
        tolerance: tol.to_sci_string(3),
        residual_pass: res.residual.abs_lt(tol),
        denom_pass: verdict.pass,
        witness: verdict
            .witnesses
            .iter()
            .map(|w| WitnessEntry {
                s: w.s,
                product: w.defect.is_none().then(|| w.product.num().clone()),
                defect: w.defect.clone(),
            })
            .collect(),
    })
}

/// Builds the report from an existing table.
pub fn report_from_table(table: &PFTable, eps: Eps, q0: &Rat, prec: usize, tol: &BigFloat) -> Result<LinearFormReport> {
    let forms = table.p_eps(eps)?;
    let verdict = check_forms(&table.params, &forms);
    report_from_forms(&table.params, &forms, &verdict, q0, prec, tol)
}

/// Full pipeline for one parameter set.
pub fn linear_form_report(p: &Params, eps: Eps, q0: &Rat, prec: usize, tol: &BigFloat) -> Result<LinearFormReport> {
    let table = partial_fractions(p)?;
    report_from_table(&table, eps, q0, prec, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn small_identity_holds() {
        let tol = BigFloat::from_f64(1e-40, 256);
        for n in 0..=3 {
            for eps in Eps::both() {
                for q0 in [rat(1, 3), rat(-1, 2)] {
                    let r = linear_form_report(&Params::new(4, 1, n).unwrap(), eps, &q0, 256, &tol).unwrap();
                    assert!(r.pass(), "n={n} eps={eps:?} q0={q0}: residual {}", r.residual);
                }
            }
        }
    }

    #[test]
    fn odd_forms_have_only_odd_zeta() {
        let r = linear_form_report(&Params::new(6, 1, 2).unwrap(), Eps::Odd, &rat(1, 2), 128, &BigFloat::from_f64(1e-30, 128))
            .unwrap();
        let s: Vec<u32> = r.p.iter().map(|e| e.s).collect();
        assert_eq!(s, vec![0, 3, 5]);
    }
}
