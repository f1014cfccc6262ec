//! Numerical evaluation of ζ_q(s), S_n^[ε](q), 𝑆̃_n(q) and S_n(z; q) with certified tails.

use num_traits::{Signed, Zero};

use super::params::{Eps, Params};
use crate::arith::bigfloat::GUARD_BITS;
use crate::arith::rat::to_f64;
use crate::arith::upoly::rational_sqrt;
use crate::arith::{sum_with_tail_by, BigFloat, Rat, TailConfig, TailSum};
use crate::error::{Error, Result};

/// Slack applied to f64 ratio bounds.
pub(crate) const RATIO_SLACK: f64 = 1.0 + 1e-9;

pub(crate) fn check_q(q0: &Rat) -> Result<f64> {
    let a = to_f64(&q0.abs());
    if q0.abs() >= Rat::from_integer(1.into()) {
        return Err(Error::InvalidParams("|q0| must be < 1".into()));
    }
    Ok(a)
}

pub(crate) fn relative_tol(first: &BigFloat, bits: usize) -> BigFloat {
    first.abs().mul(&BigFloat::from_i64(2, bits).powi(-(bits as i64)))
}

pub(crate) fn sum_relative<F>(first_term: &BigFloat, terms: impl Iterator<Item = BigFloat>, ratio: F, wp: usize) -> Result<TailSum>
where
    F: FnMut(usize) -> Option<f64>,
{
    let tol = relative_tol(first_term, wp);
    if tol.is_zero() {
        return Ok(TailSum { value: BigFloat::zero(wp), tail_bound: BigFloat::zero(wp), terms_used: 0 });
    }
    sum_with_tail_by(terms, ratio, &tol, &TailConfig::default())
}

/// ζ_q(s) = Σ_{m≥1} m^(s−1) q^m / (1 − q^m) at q = q0.
pub fn zeta_q(s: u32, q0: &Rat, prec: usize) -> Result<BigFloat> {
    if s < 1 {
        return Err(Error::InvalidParams("zeta_q needs s >= 1".into()));
    }
    let a = check_q(q0)?;
    if q0.is_zero() {
        return Ok(BigFloat::zero(prec));
    }
    let wp = prec + GUARD_BITS;
    let q = BigFloat::from_rat(q0, wp);
    let one = BigFloat::one(wp);
    let term = |m: usize| {
        let qm = q.powi(m as i64);
        BigFloat::from_i64(m as i64, wp).powi(s as i64 - 1).mul(&qm).div(&one.sub(&qm))
    };
    let ratio = |idx: usize| {
        let m = (idx + 1) as f64;
        let poly = ((m + 1.0) / m).powi(s as i32 - 1);
        Some(poly * a * (1.0 + a.powf(m)) / (1.0 - a.powf(m + 1.0)) * RATIO_SLACK)
    };
    let first = term(1);
    let sum = sum_relative(&first, (1..).map(term), ratio, wp)?;
    Ok(sum.value.with_precision(prec))
}

/// Evaluator for R̂_n(q^k) = u^(half_gap)·R_n(q^k; q) at a fixed q0 with |q0| < 1.
#[derive(Clone)]
struct RHat {
    p: Params,
    wp: usize,
    a: f64,
    q: BigFloat,
    scalar: BigFloat,
    one_minus: Vec<BigFloat>,
}

impl RHat {
    fn new(p: &Params, q0: &Rat, wp: usize) -> Result<Self> {
        let a = check_q(q0)?;
        if q0.is_zero() {
            return Err(Error::InvalidParams("q0 must be nonzero".into()));
        }
        let q = BigFloat::from_rat(q0, wp);
        let mut me = RHat { p: *p, wp, a, q, scalar: BigFloat::one(wp), one_minus: Vec::new() };
        let mut sc = BigFloat::one(wp);
        for i in 1..=p.n as usize {
            sc = sc.mul(&me.om(i));
        }
        me.scalar = sc.powi((p.a - 2 * p.r) as i64);
        Ok(me)
    }

    /// 1 − q^l.
    fn om(&mut self, l: usize) -> BigFloat {
        while self.one_minus.len() <= l {
            let e = self.one_minus.len() as i64;
            let v = BigFloat::one(self.wp).sub(&self.q.powi(e));
            self.one_minus.push(v);
        }
        self.one_minus[l].clone()
    }

    /// R̂_n(q^k).
    fn at_qk(&mut self, k: usize) -> BigFloat {
        let n = self.p.n as usize;
        let rn = self.p.rn() as usize;
        let mut num = self.scalar.mul(&self.q.powi((k as i64) * self.p.half_gap()));
        if k <= rn {
            // (q^(k−rn); q)_rn contains 1 − q^0.
            return BigFloat::zero(self.wp);
        }
        for l in k - rn..k {
            num = num.mul(&self.om(l));
        }
        for l in k + n + 1..=k + n + rn {
            num = num.mul(&self.om(l));
        }
        let mut den = BigFloat::one(self.wp);
        for l in k..=k + n {
            den = den.mul(&self.om(l));
        }
        num.div(&den.powi(self.p.a as i64))
    }

    /// Bound on |R̂(q^(j+1)) / R̂(q^j)| valid for all j ≥ k > rn.
    fn ratio_bound(&self, k: usize) -> f64 {
        let a = self.a;
        let (n, rn) = (self.p.n as f64, self.p.rn() as f64);
        let k = k as f64;
        let lead = a.powf(self.p.half_gap() as f64);
        let body = ((1.0 + a.powf(k)) / (1.0 - a.powf(k + n + 1.0))).powi(self.p.a as i32 + 1);
        let edge = (1.0 + a.powf(k + n + rn + 1.0)) / (1.0 - a.powf(k - rn));
        lead * body * edge
    }
}

/// Terms of u^(half_gap)·S_n^[ε] for k = 1, 2, …
fn s_eps_term(rh: &mut RHat, eps: Eps, k: usize) -> BigFloat {
    let p = rh.p;
    let r = rh.at_qk(k);
    if r.is_zero() {
        return r;
    }
    let e = ((p.a / 2 - 1) as i64) * (p.n as i64 + 2 * k as i64);
    let tw = rh.q.powi(e);
    let factor = match eps {
        Eps::Even => BigFloat::one(rh.wp).add(&tw),
        Eps::Odd => BigFloat::one(rh.wp).sub(&tw),
    };
    rh.q.powi(k as i64).mul(&r).mul(&factor)
}

/// The first `count` terms (k = 1..=count) of u^(half_gap)·S_n^[ε](q0).
pub fn s_eps_terms(p: &Params, eps: Eps, q0: &Rat, prec: usize, count: usize) -> Result<Vec<BigFloat>> {
    let mut rh = RHat::new(p, q0, prec + GUARD_BITS)?;
    Ok((1..=count).map(|k| s_eps_term(&mut rh, eps, k)).collect())
}

/// u^(half_gap)·S_n^[ε](q0), i.e. the series with the monomial q^(−(A−2r)n/4) removed.
pub fn s_eps_scaled(p: &Params, eps: Eps, q0: &Rat, prec: usize) -> Result<TailSum> {
    let wp = prec + GUARD_BITS;
    let mut rh = RHat::new(p, q0, wp)?;
    if p.a == 2 && eps == Eps::Odd {
        return Ok(TailSum { value: BigFloat::zero(wp), tail_bound: BigFloat::zero(wp), terms_used: 0 });
    }
    let k0 = p.rn() as usize + 1;
    let a = rh.a;
    let first = s_eps_term(&mut rh, eps, k0);
    let (half, n) = ((p.a / 2 - 1) as f64, p.n as f64);
    let bounds = rh.clone();
    let ratio = move |idx: usize| {
        let k = k0 + idx;
        let e = half * (n + 2.0 * k as f64);
        let twist = (1.0 + a.powf(e + 2.0 * half)) / (1.0 - a.powf(e));
        Some(bounds.ratio_bound(k) * a * twist * RATIO_SLACK)
    };
    let terms = (k0..).map(move |k| s_eps_term(&mut rh, eps, k));
    sum_relative(&first, terms, ratio, wp)
}

/// u^m at q0 as a real number; odd m needs q0 > 0.
pub fn u_power(m: i64, q0: &Rat, prec: usize) -> Result<BigFloat> {
    if m % 2 == 0 {
        return Ok(BigFloat::from_rat(q0, prec).powi(m / 2));
    }
    if !q0.is_positive() {
        return Err(Error::OddHalfPower);
    }
    let root = match rational_sqrt(q0) {
        Some(r) => BigFloat::from_rat(&r, prec),
        None => BigFloat::from_rat(q0, prec).sqrt(),
    };
    Ok(root.powi(m))
}

/// S_n^[ε](q0) = S_n(q0) + (−1)^ε q0^(−n) S_n(1/q0).
pub fn s_eps_numeric(p: &Params, eps: Eps, q0: &Rat, prec: usize) -> Result<BigFloat> {
    let wp = prec + GUARD_BITS;
    let scaled = s_eps_scaled(p, eps, q0, wp)?;
    Ok(scaled.value.mul(&u_power(-p.half_gap(), q0, wp)?).with_precision(prec))
}

/// 𝑆̃_n(q0) = (q;q)_n^(A−2r) Σ_k (1 − q^(2k+n)) (q^(k−rn);q)_rn (q^(k+n+1);q)_rn / (q^k;q)_(n+1)^A · q^(k((A−2r)n/2 + A/2 − 1)).
pub fn s_tilde_numeric(p: &Params, q0: &Rat, prec: usize) -> Result<BigFloat> {
    let wp = prec + GUARD_BITS;
    let mut rh = RHat::new(p, q0, wp)?;
    let bounds = rh.clone();
    let k0 = p.rn() as usize + 1;
    let a = rh.a;
    let (half, n) = ((p.a / 2 - 1) as i64, p.n as usize);
    let term = move |rh: &mut RHat, k: usize| {
        let r = rh.at_qk(k);
        let tw = rh.om(2 * k + n);
        rh.q.powi(half * k as i64).mul(&r).mul(&tw)
    };
    let first = term(&mut rh, k0);
    let ratio = move |idx: usize| {
        let k = (k0 + idx) as f64;
        let twist = (1.0 + a.powf(2.0 * k + 2.0 + n as f64)) / (1.0 - a.powf(2.0 * k + n as f64));
        Some(bounds.ratio_bound(k0 + idx) * a.powi(half as i32) * twist * RATIO_SLACK)
    };
    let terms = (k0..).map(move |k| term(&mut rh, k));
    Ok(sum_relative(&first, terms, ratio, wp)?.value.with_precision(prec))
}

/// u^(half_gap)·S_n(z; q0) with S_n(z; q) = Σ_{k≥1} q^k R_n(q^k; q) z^(−k), for |q0| < 1 and |q0/z| < 1.
pub fn s_z_scaled(p: &Params, z: &Rat, q0: &Rat, prec: usize) -> Result<BigFloat> {
    if z.is_zero() {
        return Err(Error::InvalidParams("z must be nonzero".into()));
    }
    let wp = prec + GUARD_BITS;
    let mut rh = RHat::new(p, q0, wp)?;
    let bounds = rh.clone();
    let zinv = BigFloat::from_rat(&z.recip(), wp);
    let zf = to_f64(&z.recip().abs());
    let k0 = p.rn() as usize + 1;
    let a = rh.a;
    let term = move |rh: &mut RHat, k: usize| rh.at_qk(k).mul(&rh.q.powi(k as i64)).mul(&zinv.powi(k as i64));
    let first = term(&mut rh, k0);
    let ratio = move |idx: usize| Some(bounds.ratio_bound(k0 + idx) * a * zf * RATIO_SLACK);
    let terms = (k0..).map(move |k| term(&mut rh, k));
    Ok(sum_relative(&first, terms, ratio, wp)?.value.with_precision(prec))
}
