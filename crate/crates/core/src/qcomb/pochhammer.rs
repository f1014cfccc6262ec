//! q-Pochhammer symbols and q-binomial coefficients.

use num_traits::{Signed, Zero};

use crate::arith::{RatFunc, TPoly, UPoly};
use crate::error::{Error, Result};

/// Step direction of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBase {
    /// (a; q)_n = (1 − a)(1 − aq)···(1 − aq^(n−1)).
    Q,
    /// (a; 1/q)_n = (1 − a)(1 − a/q)···(1 − a q^(−(n−1))).
    InvQ,
}

/// (a; q)_n or (a; 1/q)_n for a monomial `a` in u.
pub fn qpoch(a: &UPoly, n: usize, base: QBase) -> UPoly {
    assert!(a.is_monomial() || a.is_zero(), "qpoch expects a monomial base");
    let step = match base {
        QBase::Q => 2,
        QBase::InvQ => -2,
    };
    let mut out = UPoly::one();
    for i in 0..n as i64 {
        out = out.mul(&UPoly::one().sub(&a.mul_u_pow(step * i)));
    }
    out
}

/// (c·T; q)_n as a polynomial in T with coefficients in u, `c` a monomial.
pub fn qpoch_t(c: &UPoly, n: usize) -> TPoly<UPoly> {
    let mut out = TPoly::<UPoly>::one();
    for i in 0..n as i64 {
        out = out.mul_one_minus(&c.mul_u_pow(2 * i));
    }
    out
}

/// (q; q)_n.
pub fn qfactorial(n: usize) -> UPoly {
    qpoch(&UPoly::q_pow(1), n, QBase::Q)
}

/// Gaussian binomial [n choose k]_q, checked to be a polynomial with nonnegative integer coefficients.
pub fn qbinomial(n: usize, k: usize) -> Result<UPoly> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("q-binomial with k = {k} > n = {n}")));
    }
    let mut f = RatFunc::from_upoly(UPoly::one());
    for i in 0..k as u32 {
        f = f.mul_upoly(&UPoly::one_minus_q_pow((n as u32 - i) as i64)).div_one_minus_q_pow(i + 1, 1);
    }
    assert!(f.is_laurent(), "q-binomial must be a polynomial");
    let p = f.num().clone();
    assert!(
        p.has_integer_coeffs() && p.is_even() && p.min_exp().unwrap_or(0) >= 0,
        "q-binomial must have integer coefficients in nonnegative powers of q"
    );
    assert!(p.terms().all(|(_, c)| !c.is_negative() && !c.is_zero()), "q-binomial coefficients are positive");
    Ok(p)
}
