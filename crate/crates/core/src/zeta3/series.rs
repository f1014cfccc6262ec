//! The q-Ball and q-BGN series and their classical q → 1 limits.

use num_traits::Signed;

use crate::arith::bigfloat::GUARD_BITS;
use crate::arith::{sum_with_tail_by, BigFloat, Rat, TailConfig};
use crate::error::{Error, Result};
use crate::linform::numeric::{check_q, relative_tol, sum_relative, RATIO_SLACK};

/// Cached values 1 − q^l at a fixed q0.
struct OneMinus {
    q: BigFloat,
    wp: usize,
    cache: Vec<BigFloat>,
}

impl OneMinus {
    fn new(q0: &Rat, wp: usize) -> Result<Self> {
        if num_traits::Zero::is_zero(q0) {
            return Err(Error::InvalidParams("q0 must be nonzero".into()));
        }
        Ok(OneMinus { q: BigFloat::from_rat(q0, wp), wp, cache: Vec::new() })
    }

    fn at(&mut self, l: usize) -> BigFloat {
        while self.cache.len() <= l {
            let e = self.cache.len() as i64;
            self.cache.push(BigFloat::one(self.wp).sub(&self.q.powi(e)));
        }
        self.cache[l].clone()
    }

    fn prod(&mut self, lo: usize, hi: usize) -> BigFloat {
        (lo..=hi).fold(BigFloat::one(self.wp), |acc, l| acc.mul(&self.at(l)))
    }
}

/// Upper bound of |1 − q^(l+1)| / |1 − q^l| for all l ≥ lmin.
fn up(a: f64, lmin: usize) -> f64 {
    (1.0 + a.powi(lmin as i32 + 1)) / (1.0 - a.powi(lmin as i32))
}

/// Upper bound of |1 − q^l| / |1 − q^(l+1)| for all l ≥ lmin.
fn down(a: f64, lmin: usize) -> f64 {
    (1.0 + a.powi(lmin as i32)) / (1.0 - a.powi(lmin as i32 + 1))
}

/// (q;q)_n² Σ_{k≥n+1} (1 − q^(2k+n)) (q^(k−n);q)_n (q^(k+n+1);q)_n / (q^k;q)_(n+1)⁴ · q^(k(n+1)).
pub fn qball_numeric(n: u32, q0: &Rat, prec: usize) -> Result<BigFloat> {
    let a = check_q(q0)?;
    let wp = prec + GUARD_BITS;
    let mut om = OneMinus::new(q0, wp)?;
    let n = n as usize;
    let pref = om.prod(1, n).powi(2);
    let q = om.q.clone();
    let mut term = move |k: usize| {
        let num = om.at(2 * k + n).mul(&om.prod(k - n, k - 1)).mul(&om.prod(k + n + 1, k + 2 * n));
        let den = om.prod(k, k + n).powi(4);
        pref.mul(&num).mul(&q.powi((k * (n + 1)) as i64)).div(&den)
    };
    let k0 = n + 1;
    let first = term(k0);
    let ratio = move |idx: usize| {
        let k = k0 + idx;
        let twist = (1.0 + a.powi((2 * k + n + 2) as i32)) / (1.0 - a.powi((2 * k + n) as i32));
        let body = up(a, k - n).powi(n as i32) * up(a, k + n + 1).powi(n as i32) * down(a, k).powi(4 * (n as i32 + 1));
        Some(a.powi(n as i32 + 1) * twist * body * RATIO_SLACK)
    };
    let terms = (k0..).map(term);
    Ok(sum_relative(&first, terms, ratio, wp)?.value.with_precision(prec))
}

/// Σ_{k≥n+1} q^k (R_n + T R_n')(T = q^k), which is (1/log q) Σ_k d/dk[q^k R_n(q^k; q)].
pub fn bgn_sum(n: u32, q0: &Rat, prec: usize) -> Result<BigFloat> {
    let a = check_q(q0)?;
    let wp = prec + GUARD_BITS;
    let mut om = OneMinus::new(q0, wp)?;
    let n = n as usize;
    let q = om.q.clone();
    let two = BigFloat::from_i64(2, wp);
    let mut parts = move |k: usize| {
        let r = om.prod(k - n, k - 1).div(&om.prod(k, k + n)).powi(2);
        let qk = q.powi(k as i64);
        let mut w = BigFloat::one(wp);
        for l in k - n..k {
            w = w.sub(&two.mul(&q.powi(l as i64)).div(&om.at(l)));
        }
        for l in k..=k + n {
            w = w.add(&two.mul(&q.powi(l as i64)).div(&om.at(l)));
        }
        let base = qk.mul(&r);
        (base.mul(&w), base)
    };
    let k0 = n + 1;
    let (_, base0) = parts(k0);
    let tol = relative_tol(&base0, wp);
    if tol.is_zero() {
        return Ok(BigFloat::zero(prec));
    }
    let err = |k: usize| {
        let x = a.powi((k - n) as i32);
        2.0 * (2 * n + 1) as f64 * x / (1.0 - x)
    };
    let ratio = move |idx: usize| {
        let k = k0 + idx;
        let e = err(k);
        if e >= 1.0 {
            return None;
        }
        let body = up(a, k - n).powi(2 * n as i32) * down(a, k).powi(2 * (n as i32 + 1));
        Some(a * body * (1.0 + err(k + 1)) / (1.0 - e) * RATIO_SLACK)
    };
    let terms = (k0..).map(move |k| parts(k).0);
    Ok(sum_with_tail_by(terms, ratio, &tol, &TailConfig::default())?.value.with_precision(prec))
}

/// q^(n(n+1))/log q · Σ_{k≥n+1} d/dk[q^k (q^(k−n);q)_n² / (q^k;q)_(n+1)²], with the k-derivative taken analytically.
pub fn qbgn_numeric(n: u32, q0: &Rat, prec: usize) -> Result<BigFloat> {
    let wp = prec + GUARD_BITS;
    let e = (n as i64) * (n as i64 + 1);
    Ok(bgn_sum(n, q0, wp)?.mul(&BigFloat::from_rat(q0, wp).powi(e)).with_precision(prec))
}

/// q^x R_n(q^x; q) for real x, for finite-difference checks; needs 0 < q0 < 1.
pub fn bgn_summand_at(n: u32, x: &BigFloat, q0: &Rat) -> Result<BigFloat> {
    if !q0.is_positive() {
        return Err(Error::InvalidParams("real exponents need q0 > 0".into()));
    }
    check_q(q0)?;
    let wp = x.precision();
    let lq = BigFloat::from_rat(q0, wp).ln();
    let qx = x.mul(&lq).exp();
    let one = BigFloat::one(wp);
    let qp = |i: i64| BigFloat::from_rat(q0, wp).powi(i);
    let mut num = one.clone();
    for i in 0..n as i64 {
        num = num.mul(&one.sub(&qx.mul(&qp(i - n as i64))));
    }
    let mut den = one.clone();
    for i in 0..=n as i64 {
        den = den.mul(&one.sub(&qx.mul(&qp(i))));
    }
    Ok(qx.mul(&num.div(&den).powi(2)))
}

/// d/dk[q^k R_n(q^k)] = log q · q^k (R_n + T R_n')(q^k) at integer k ≥ n + 1, for q0 > 0.
pub fn bgn_derivative_at(n: u32, k: usize, q0: &Rat, prec: usize) -> Result<BigFloat> {
    if !q0.is_positive() || k <= n as usize {
        return Err(Error::InvalidParams("need q0 > 0 and k > n".into()));
    }
    let wp = prec + GUARD_BITS;
    let mut om = OneMinus::new(q0, wp)?;
    let n = n as usize;
    let q = om.q.clone();
    let r = om.prod(k - n, k - 1).div(&om.prod(k, k + n)).powi(2);
    let two = BigFloat::from_i64(2, wp);
    let mut w = BigFloat::one(wp);
    for l in k - n..k {
        w = w.sub(&two.mul(&q.powi(l as i64)).div(&om.at(l)));
    }
    for l in k..=k + n {
        w = w.add(&two.mul(&q.powi(l as i64)).div(&om.at(l)));
    }
    Ok(q.ln().mul(&q.powi(k as i64)).mul(&r).mul(&w).with_precision(prec))
}

/// n!² Σ_{k≥1} (2k + n) (k−n)_n (k+n+1)_n / (k)_(n+1)⁴, summed over k ≤ `terms` with an integral tail estimate.
pub fn classical_ball(n: u32, terms: usize) -> f64 {
    let n = n as usize;
    let poch = |x: f64, m: usize| (0..m).fold(1.0, |acc, i| acc * (x + i as f64));
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    let t = |k: usize| {
        let k = k as f64;
        (2.0 * k + n as f64) * poch(k - n as f64, n) * poch(k + n as f64 + 1.0, n) / poch(k, n + 1).powi(4)
    };
    let head: f64 = (1..=terms).rev().map(t).sum();
    let p = 2 * n + 3;
    let tail = t(terms) * terms as f64 / (p as f64 - 1.0);
    fact * fact * (head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn n_zero_ball_direct() {
        let q0 = rat(1, 3);
        let v = qball_numeric(0, &q0, 128).unwrap().to_f64();
        let direct: f64 = (1..200)
            .map(|k| {
                let x = (1.0f64 / 3.0).powi(k);
                (1.0 - x * x) * x / (1.0 - x).powi(4)
            })
            .sum();
        assert!((v - direct).abs() < 1e-14);
    }

    #[test]
    fn ball_equals_bgn_small() {
        for n in 0..=3 {
            for q0 in [rat(1, 3), rat(-1, 3)] {
                let b = qball_numeric(n, &q0, 192).unwrap();
                let g = qbgn_numeric(n, &q0, 192).unwrap();
                assert!(b.sub(&g).abs().to_f64() < 1e-45, "n={n} q0={q0}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (n, k, q0) = (2u32, 4usize, rat(1, 2));
        let exact = bgn_derivative_at(n, k, &q0, 256).unwrap();
        let h = BigFloat::from_f64(2f64.powi(-40), 320);
        let x = BigFloat::from_i64(k as i64, 320);
        let fwd = bgn_summand_at(n, &x.add(&h), &q0).unwrap();
        let bwd = bgn_summand_at(n, &x.sub(&h), &q0).unwrap();
        let fd = fwd.sub(&bwd).div(&h.mul(&BigFloat::from_i64(2, 320)));
        let rel = fd.sub(&exact).div(&exact).abs().to_f64();
        assert!(rel < 1e-20, "relative gap {rel}");
    }

    #[test]
    fn classical_ball_n_zero() {
        // Σ 2k/k⁴ = 2ζ(3).
        assert!((classical_ball(0, 20000) - 2.0 * 1.202_056_903_159_594).abs() < 1e-9);
    }
}
