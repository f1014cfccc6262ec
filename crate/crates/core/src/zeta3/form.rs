//! The decomposition (1/log q) Σ_k d/dk[q^k R_n(q^k)] = A_n ζ_q(3) − B_n.

use serde::Serialize;

use super::kernel::{zeta3_partial_fractions, Zeta3Kernel};
use super::series::bgn_sum;
use crate::arith::bigfloat::GUARD_BITS;
use crate::arith::rat::ln_abs;
use crate::arith::{BigFloat, Rat, RatFunc, UPoly};
use crate::error::Result;
use crate::linform::zeta_q;

/// Exact A_n(q), B_n(q).
#[derive(Clone, Debug, Serialize)]
pub struct Zeta3Form {
    pub n: u32,
    #[serde(rename = "A")]
    pub a: RatFunc,
    #[serde(rename = "B")]
    pub b: RatFunc,
}

/// A_n = Σ_j a[j] q^(−j) and B_n = Σ_{j=1}^n Σ_{k=1}^j (a[j] q^(k−j)(1+q^k)/(1−q^k)³ + b[j] q^(k−j)/(1−q^k)²).
pub fn zeta3_form_from(kernel: &Zeta3Kernel) -> Zeta3Form {
    let n = kernel.n as usize;
    let mut a_sum = RatFunc::zero();
    for (j, a) in kernel.a.iter().enumerate() {
        a_sum = a_sum.add(&a.mul(&RatFunc::q_pow(-(j as i64))));
    }
    let mut b_sum = RatFunc::zero();
    for k in 1..=n {
        let cube = RatFunc::from_upoly(UPoly::one().add(&UPoly::q_pow(k as i64))).div_one_minus_q_pow(k as u32, 3);
        let square = RatFunc::inv_one_minus_q_pow(k as u32, 2);
        let mut inner = RatFunc::zero();
        for j in k..=n {
            let shift = RatFunc::q_pow(k as i64 - j as i64);
            inner = inner.add(&kernel.a[j].mul(&shift).mul(&cube)).add(&kernel.b[j].mul(&shift).mul(&square));
        }
        b_sum = b_sum.add(&inner);
    }
    Zeta3Form { n: kernel.n, a: a_sum, b: b_sum }
}

pub fn zeta3_form(n: u32) -> Result<Zeta3Form> {
    Ok(zeta3_form_from(&zeta3_partial_fractions(n)?))
}

/// Both sides of the decomposition at one point.
#[derive(Clone, Debug)]
pub struct Zeta3Residual {
    pub a_value: Rat,
    pub b_value: Rat,
    pub lhs: BigFloat,
    pub rhs: BigFloat,
    pub residual: BigFloat,
}

/// |(1/log q) Σ_k d/dk[…] − (A_n ζ_q(3) − B_n)| at q0, with working precision raised by the size of A_n, B_n.
pub fn zeta3_residual(form: &Zeta3Form, q0: &Rat, prec: usize) -> Result<Zeta3Residual> {
    let a_value = form.a.eval_q(q0)?;
    let b_value = form.b.eval_q(q0)?;
    let big = [&a_value, &b_value].iter().map(|v| ln_abs(v)).filter(|x| x.is_finite()).fold(0.0f64, f64::max);
    let wp = prec + GUARD_BITS + (big / std::f64::consts::LN_2).ceil().max(0.0) as usize;
    let lhs = bgn_sum(form.n, q0, wp)?;
    let rhs = BigFloat::from_rat(&a_value, wp).mul(&zeta_q(3, q0, wp)?).sub(&BigFloat::from_rat(&b_value, wp));
    let residual = lhs.sub(&rhs).abs();
    Ok(Zeta3Residual {
        a_value,
        b_value,
        lhs: lhs.with_precision(prec),
        rhs: rhs.with_precision(prec),
        residual: residual.with_precision(prec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn n_zero() {
        let f = zeta3_form(0).unwrap();
        assert_eq!(f.a, RatFunc::one());
        assert!(f.b.is_zero());
        let r = zeta3_residual(&f, &rat(1, 3), 128).unwrap();
        assert!(r.residual.to_f64() < 1e-35);
    }

    #[test]
    fn small_residuals() {
        for n in 1..=4 {
            let f = zeta3_form(n).unwrap();
            for q0 in [rat(1, 3), rat(-1, 3)] {
                let r = zeta3_residual(&f, &q0, 192).unwrap();
                assert!(r.residual.to_f64() < 1e-45, "n={n} q0={q0}: {}", r.residual.to_f64());
            }
        }
    }
}
