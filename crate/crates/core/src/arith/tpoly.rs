//! Polynomials and rational functions in an auxiliary variable T (or z)
//! over an exact coefficient ring, with exact shifted Taylor expansion.

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Dense polynomial `Σ c_i T^i` with a nonzero leading coefficient (or empty for 0).
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> TPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·T^k`.
    pub fn monomial(k: usize, c: C) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The linear factor `1 − a·T`.
    pub fn one_minus(a: C) -> Self {
        Self::new(vec![C::one(), a.neg()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `1 − a·T`.
    pub fn mul_one_minus(&self, a: &C) -> Self {
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut c = self.coeff(i);
            if i > 0 {
                c = c.sub(&a.mul(&self.coeffs[i - 1]));
            }
            out.push(c);
        }
        Self::new(out)
    }

    /// Exact quotient by `1 − a·T`, or `None` if it does not divide.
    pub fn div_one_minus(&self, a: &C) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        if n == 1 {
            return None;
        }
        let mut q = Vec::with_capacity(n - 1);
        let mut prev = C::zero();
        for i in 0..n - 1 {
            let c = self.coeffs[i].add(&a.mul(&prev));
            q.push(c.clone());
            prev = c;
        }
        let rem = self.coeffs[n - 1].add(&a.mul(&prev));
        rem.is_zero().then(|| Self::new(q))
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&C::from_int(i as i64)))
                .collect(),
        )
    }

    /// First `order + 1` Taylor coefficients of `self(center + X)`.
    pub fn shift_coeffs(&self, center: &C, order: usize) -> Vec<C> {
        // Repeated synthetic division by (T − center).
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            if work.is_empty() {
                out.push(C::zero());
                continue;
            }
            let mut acc = C::zero();
            let mut quotient = vec![C::zero(); work.len().saturating_sub(1)];
            for i in (0..work.len()).rev() {
                acc = acc.mul(center).add(&work[i]);
                if i > 0 {
                    quotient[i - 1] = acc.clone();
                }
            }
            out.push(acc);
            work = quotient;
        }
        out
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> TPoly<D> {
        TPoly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Quotient of two T-polynomials (not reduced; the denominator is nonzero).
#[derive(Clone, Debug, PartialEq)]
pub struct TRatFunc<C> {
    pub num: TPoly<C>,
    pub den: TPoly<C>,
}

impl<C: Field> TRatFunc<C> {
    pub fn new(num: TPoly<C>, den: TPoly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        TRatFunc { num, den }
    }

    pub fn from_poly(p: TPoly<C>) -> Self {
        Self::new(p, TPoly::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&Self::new(o.num.neg(), o.den.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Exact equality as rational functions (cross multiplication).
    pub fn equals(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn eval(&self, x: &C) -> Result<C> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// Degree of the numerator minus degree of the denominator.
    pub fn degree_gap(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }
}

/// Power-series quotient `a / b` to `order + 1` terms; `b` must have an invertible constant term.
pub fn series_div<C: Field>(a: &[C], b: &[C], order: usize) -> Result<Vec<C>> {
    let b0 = b.first().cloned().unwrap_or_else(C::zero);
    if b0.is_zero() {
        return Err(Error::PoleOrderMismatch);
    }
    let inv_b0 = b0.inv()?;
    let mut t: Vec<C> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = a.get(k).cloned().unwrap_or_else(C::zero);
        for i in 1..=k.min(b.len().saturating_sub(1)) {
            if !b[i].is_zero() && !t[k - i].is_zero() {
                acc = acc.sub(&b[i].mul(&t[k - i]));
            }
        }
        t.push(acc.mul(&inv_b0));
    }
    Ok(t)
}

/// Taylor coefficients `t_0..t_order` of `f(center + X)`.
pub fn tpoly_series_shift<C: Field>(f: &TRatFunc<C>, center: &C, order: usize) -> Result<Vec<C>> {
    let a = f.num.shift_coeffs(center, order);
    let b = f.den.shift_coeffs(center, order);
    series_div(&a, &b, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, rat_int, Rat};

    fn p(c: &[i64]) -> TPoly<Rat> {
        TPoly::new(c.iter().map(|x| rat_int(*x)).collect())
    }

    #[test]
    fn geometric_series() {
        let f = TRatFunc::new(p(&[1]), p(&[1, -1]));
        let t = tpoly_series_shift(&f, &rat_int(0), 2).unwrap();
        assert_eq!(t, vec![rat_int(1); 3]);
    }

    #[test]
    fn inverse_square() {
        let f = TRatFunc::new(p(&[1]), p(&[-2, 1]).pow(2));
        let t = tpoly_series_shift(&f, &rat_int(0), 1).unwrap();
        assert_eq!(t, vec![rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn identity_shift() {
        let f = TRatFunc::from_poly(p(&[0, 1]));
        let c = rat(3, 7);
        assert_eq!(tpoly_series_shift(&f, &c, 1).unwrap(), vec![c.clone(), rat_int(1)]);
    }

    #[test]
    fn pole_is_reported() {
        let f = TRatFunc::new(p(&[1]), p(&[1, -1]));
        assert_eq!(tpoly_series_shift(&f, &rat_int(1), 1), Err(Error::PoleOrderMismatch));
    }

    #[test]
    fn linear_factor_division() {
        let a = rat(2, 3);
        let base = p(&[4, 0, -1, 5]);
        let prod = base.mul_one_minus(&a);
        assert_eq!(prod, base.mul(&TPoly::one_minus(a.clone())));
        assert_eq!(prod.div_one_minus(&a), Some(base.clone()));
        assert_eq!(base.div_one_minus(&a), None);
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.derivative(), p(&[2, 6]));
        assert_eq!(f.eval(&rat_int(2)), rat_int(17));
    }
}
