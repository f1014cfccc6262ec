//! The denominators D_n(q) and exact membership checks in ℤ[1/q].

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::forms::EpsForms;
use super::params::{Eps, Params};
use super::table::PFTable;
use crate::arith::rat::{format_rat, ln_abs, rat_pow};
use crate::arith::ratfunc::in_z_inv_q;
use crate::arith::{Rat, RatFunc, UPoly};
use crate::error::Result;
use crate::qcomb::{cyclotomic, d_n, d_n_at};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// u-exponent of the monomial in D_n: 2·((A−2r)n/4 − ⌈A(n+1)²/8⌉ − r²n²/2 + rn/2 − (A−1)n).
pub fn monomial_u_exponent(p: &Params) -> i64 {
    let (a, r, n) = (p.a as i64, p.r as i64, p.n as i64);
    let ceil = (a * (n + 1) * (n + 1) + 7).div_euclid(8);
    p.half_gap() - 2 * ceil - r * r * n * n + r * n - 2 * (a - 1) * n
}

/// (A−1)!·q^(…)·d_n(1/q)^power; power = A gives D_n.
pub fn denominator_with_power(p: &Params, power: u32) -> UPoly {
    let scalar = Rat::from_integer(factorial(p.a - 1));
    d_n(p.n as usize).subs_inv().pow(power).scale_by(&scalar).mul_u_pow(monomial_u_exponent(p))
}

/// D_n(q).
pub fn d_n_denominator(p: &Params) -> UPoly {
    denominator_with_power(p, p.a)
}

/// log|D_n(q0)| for real q0 ∉ {0, ±1}.
pub fn ln_abs_d_n_denominator(p: &Params, q0: &Rat) -> f64 {
    let dn = d_n_at(p.n as usize, &rat_pow(q0, -1));
    ln_abs(&Rat::from_integer(factorial(p.a - 1)))
        + monomial_u_exponent(p) as f64 / 2.0 * ln_abs(q0)
        + p.a as f64 * ln_abs(&dn)
}

/// Why a product D·P_s fails to lie in ℤ[1/q].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Defect {
    NotLaurent,
    OddHalfPower,
    PositivePower { exponent: i64 },
    NonIntegral { u_exp: i64, coeff: String },
}

/// Membership defect of `r` in ℤ[1/q], or `None` if it belongs.
pub fn defect(r: &RatFunc) -> Option<Defect> {
    if in_z_inv_q(r) {
        return None;
    }
    if !r.is_laurent() {
        return Some(Defect::NotLaurent);
    }
    let p = r.num();
    if !p.is_even() {
        return Some(Defect::OddHalfPower);
    }
    if let Some((e, c)) = p.terms().find(|(_, c)| !c.is_integer()) {
        return Some(Defect::NonIntegral { u_exp: e, coeff: format_rat(&c) });
    }
    Some(Defect::PositivePower { exponent: p.max_exp().unwrap_or(0) / 2 })
}

/// One product D·P_s^[ε].
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub eps: Eps,
    pub s: u32,
    pub product: RatFunc,
    pub defect: Option<Defect>,
}

/// Verdict of the integrality check over the given forms.
#[derive(Clone, Debug, Serialize)]
pub struct DenomVerdict {
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

impl DenomVerdict {
    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.defect.is_some())
    }
}

/// Checks D·P_s^[ε] ∈ ℤ[1/q] for every coefficient of every supplied form.
pub fn check_with(den: &RatFunc, forms: &[EpsForms<RatFunc>]) -> DenomVerdict {
    let mut witnesses = Vec::new();
    for f in forms {
        for (s, v) in f.entries() {
            let product = den.mul(v);
            let defect = defect(&product);
            witnesses.push(Witness { eps: f.eps, s, product, defect });
        }
    }
    let pass = witnesses.iter().all(|w| w.defect.is_none());
    DenomVerdict { pass, witnesses }
}

/// D_n(q)·P_s^[ε](q) ∈ ℤ[1/q] for the given ε.
pub fn denominator_check(table: &PFTable, eps: Eps) -> Result<DenomVerdict> {
    Ok(check_forms(&table.params, &table.p_eps(eps)?))
}

/// D_n(q)·P_s^[ε](q) ∈ ℤ[1/q] for already computed forms.
pub fn check_forms(p: &Params, forms: &EpsForms<RatFunc>) -> DenomVerdict {
    check_with(&RatFunc::from_upoly(d_n_denominator(p)), std::slice::from_ref(forms))
}

/// Result of removing one factor Φ_n(1/q) from D_n.
#[derive(Clone, Debug, Serialize)]
pub struct SharpnessRow {
    pub n: u32,
    /// True when the reduced denominator still clears every form.
    pub reduced_passes: bool,
    pub failing: Vec<(Eps, u32)>,
}

/// For each n, whether D_n / Φ_n(1/q) still clears all P_s^[ε] (both ε).
pub fn sharpness_probe(p: &Params, n_values: &[u32]) -> Result<Vec<SharpnessRow>> {
    let mut rows = Vec::new();
    for &n in n_values {
        if n == 0 {
            continue;
        }
        let pn = p.with_n(n);
        let table = super::table::partial_fractions(&pn)?;
        let forms = [table.p_eps(Eps::Even)?, table.p_eps(Eps::Odd)?];
        let phi = RatFunc::from_upoly(cyclotomic(n).subs_inv());
        let reduced = RatFunc::from_upoly(d_n_denominator(&pn)).div(&phi)?;
        let v = check_with(&reduced, &forms);
        rows.push(SharpnessRow { n, reduced_passes: v.pass, failing: v.failures().map(|w| (w.eps, w.s)).collect() });
    }
    Ok(rows)
}

/// Outcome of the reduced-denominator probe at one n.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub params: Params,
    pub eps: Eps,
    pub pass: bool,
    pub failing_s: Vec<u32>,
}

/// Applies D̃_n (power A−1 of d_n(1/q)) to the P_s^[ε] forms of R_n.
///
/// The forms are those of S_n^[ε]; no separate kernel for 𝑆̃_n is built.
pub fn conjecture_probe(p: &Params, n_values: &[u32]) -> Result<Vec<ConjectureRow>> {
    let mut rows = Vec::new();
    for &n in n_values {
        let pn = p.with_n(n);
        let table = super::table::partial_fractions(&pn)?;
        let den = RatFunc::from_upoly(denominator_with_power(&pn, p.a - 1));
        for eps in Eps::both() {
            let v = check_with(&den, &[table.p_eps(eps)?]);
            rows.push(ConjectureRow {
                params: pn,
                eps,
                pass: v.pass,
                failing_s: v.failures().map(|w| w.s).collect(),
            });
        }
    }
    Ok(rows)
}
