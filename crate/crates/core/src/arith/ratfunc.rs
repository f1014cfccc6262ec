//! Rational functions of u whose denominators are products of cyclotomic factors.
//!
//! Every denominator arising from q-Pochhammer symbols factors into
//! ψ_k(u) (Φ_k normalized to constant term 1). Keeping the denominator as a
//! factor multiset makes gcd reduction an exact trial division by each
//! ψ_k, and the reduced form is canonical: the numerator is divisible by
//! none of the listed factors, and the expanded denominator has constant
//! term 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::bigfloat::BigFloat;
use super::cyclo::{cyclotomic, divisors, psi, totient};
use super::rat::{rat_pow, Rat};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Multiset of normalized cyclotomic factors ψ_k(u) with multiplicities.
pub type CycloDen = BTreeMap<u32, u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UPoly,
    den: CycloDen,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: UPoly::zero(), den: CycloDen::new() }
    }

    pub fn one() -> Self {
        Self::from_upoly(UPoly::one())
    }

    pub fn from_upoly(num: UPoly) -> Self {
        RatFunc { num, den: CycloDen::new() }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_upoly(UPoly::constant(r))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_upoly(UPoly::q_pow(e))
    }

    /// `num / Π ψ_k^(e_k)`, reduced.
    pub fn from_parts(num: UPoly, den: CycloDen) -> Self {
        RatFunc { num, den }.reduced()
    }

    /// 1 / (1 − q^m)^s.
    pub fn inv_one_minus_q_pow(m: u32, s: u32) -> Self {
        Self::one().div_one_minus_q_pow(m, s)
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &CycloDen {
        &self.den
    }

    pub fn den(&self) -> UPoly {
        expand_den(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (k, e) in self.den.iter_mut() {
            let p = psi(*k);
            while *e > 0 {
                if !may_vanish_at_root_of_unity(&self.num, *k) {
                    break;
                }
                match self.num.div_exact_small(&p) {
                    Some(qt) => {
                        self.num = qt;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
        self
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc { num: self.num.add(&o.num), den: self.den.clone() }.reduced();
        }
        let mut lcm = self.den.clone();
        for (k, e) in &o.den {
            let slot = lcm.entry(*k).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |f: &RatFunc| {
            let mut extra = CycloDen::new();
            for (k, e) in &lcm {
                let have = f.den.get(k).copied().unwrap_or(0);
                if *e > have {
                    extra.insert(*k, e - have);
                }
            }
            mul_den(&f.num, &extra)
        };
        let num = lift(self).add(&lift(o));
        RatFunc { num, den: lcm }.reduced()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (k, e) in &o.den {
            *den.entry(*k).or_insert(0) += e;
        }
        RatFunc { num: self.num.mul(&o.num), den }.reduced()
    }

    pub fn mul_upoly(&self, p: &UPoly) -> Self {
        RatFunc { num: self.num.mul(p), den: self.den.clone() }.reduced()
    }

    pub fn scale_by(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale_by(r), den: self.den.clone() }
    }

    pub fn mul_u_pow(&self, k: i64) -> Self {
        RatFunc { num: self.num.mul_u_pow(k), den: self.den.clone() }
    }

    /// Division by (1 − q^m)^s, using 1 − u^(2m) = Π_{k | 2m} ψ_k(u).
    pub fn div_one_minus_q_pow(&self, m: u32, s: u32) -> Self {
        assert!(m >= 1, "1 - q^0 vanishes");
        if self.is_zero() || s == 0 {
            return self.clone();
        }
        let mut den = self.den.clone();
        for k in divisors(2 * m) {
            *den.entry(k).or_insert(0) += s;
        }
        RatFunc { num: self.num.clone(), den }.reduced()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (content, shift, factors) = factor_cyclotomic(&o.num)?;
        let num = mul_den(&self.num, &o.den).mul_u_pow(-shift).scale_by(&content.recip());
        let mut den = self.den.clone();
        for (k, e) in factors {
            *den.entry(k).or_insert(0) += e;
        }
        Ok(RatFunc { num, den }.reduced())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let den = self.den.iter().map(|(k, m)| (*k, m * e)).collect();
        RatFunc { num: self.num.pow(e), den }
    }

    /// Substitution u → 1/u, i.e. q → 1/q.
    pub fn subs_inv(&self) -> Self {
        // ψ_k(1/u) = u^(-φ(k)) ψ_k(u) for k ≥ 2 and ψ_1(1/u) = −u^(-1) ψ_1(u).
        let mut shift = 0i64;
        let mut sign = 1i64;
        for (k, e) in &self.den {
            shift += (totient(*k) * e) as i64;
            if *k == 1 && e % 2 == 1 {
                sign = -sign;
            }
        }
        let num = self.num.subs_inv().mul_u_pow(shift).scale_by(&Rat::from_integer(sign.into()));
        RatFunc { num, den: self.den.clone() }.reduced()
    }

    /// Substitution u → −u.
    pub fn subs_neg_u(&self) -> Self {
        // ψ_k(−u) = ψ_2k(u) for odd k, ψ_k(−u) = ψ_{k/2}(u) for k ≡ 2 (mod 4).
        let mut den = CycloDen::new();
        for (k, e) in &self.den {
            let k2 = match k % 4 {
                0 => *k,
                2 => k / 2,
                _ => 2 * k,
            };
            *den.entry(k2).or_insert(0) += e;
        }
        RatFunc { num: self.num.subs_neg_u(), den }.reduced()
    }

    /// Multiplies numerator and denominator so that every odd-k factor is paired with ψ_2k.
    fn balanced(&self) -> (UPoly, CycloDen) {
        let mut den = self.den.clone();
        let mut extra = CycloDen::new();
        let odd: std::collections::BTreeSet<u32> =
            self.den.keys().map(|k| if k % 4 == 2 { k / 2 } else { *k }).filter(|k| k % 2 == 1).collect();
        for k in odd {
            let a = den.get(&k).copied().unwrap_or(0);
            let b = den.get(&(2 * k)).copied().unwrap_or(0);
            let m = a.max(b);
            if a < m {
                extra.insert(k, m - a);
                den.insert(k, m);
            }
            if b < m {
                extra.insert(2 * k, m - b);
                den.insert(2 * k, m);
            }
        }
        (mul_den(&self.num, &extra), den)
    }

    /// Exact value of a balanced denominator at q0.
    fn den_value(den: &CycloDen, q0: &Rat) -> Rat {
        let mut v = Rat::one();
        for (k, e) in den {
            let f = if k % 4 == 0 {
                eval_small(&cyclotomic(k / 2), q0)
            } else if k % 2 == 1 {
                if *k == 1 {
                    Rat::one() - q0
                } else {
                    eval_small(&cyclotomic(*k), q0)
                }
            } else {
                continue;
            };
            v *= rat_pow(&f, *e as i64);
        }
        v
    }

    /// Exact value at q = q0.
    pub fn eval_q(&self, q0: &Rat) -> Result<Rat> {
        let (num, den) = self.balanced();
        let d = Self::den_value(&den, q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(num.eval_q(q0)? / d)
    }

    /// Numeric value at q = q0 (odd half-powers need q0 > 0).
    pub fn eval_float(&self, q0: &Rat, prec: usize) -> Result<BigFloat> {
        let (num, den) = self.balanced();
        let d = Self::den_value(&den, q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = num.eval_float(q0, prec + 32)?;
        Ok(n.div(&BigFloat::from_rat(&d, prec + 32)).with_precision(prec))
    }
}

/// `p · Π ψ_k^(e_k)`.
fn mul_den(p: &UPoly, den: &CycloDen) -> UPoly {
    let mut out = p.clone();
    for (k, e) in den {
        let f = psi(*k);
        for _ in 0..*e {
            out = out.mul_small(&f);
        }
    }
    out
}

pub fn expand_den(den: &CycloDen) -> UPoly {
    mul_den(&UPoly::one(), den)
}

fn eval_small(c: &[i64], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for ci in c.iter().rev() {
        acc = acc * x + Rat::from_integer(BigInt::from(*ci));
    }
    acc
}

/// Floating prefilter: false only when `p` certainly does not vanish at e^(2πi/k).
fn may_vanish_at_root_of_unity(p: &UPoly, k: u32) -> bool {
    if k <= 2 {
        return true;
    }
    let c = p.int_coeffs();
    let maxbits = c.iter().map(|x| x.bits()).max().unwrap_or(0);
    let shift = maxbits.saturating_sub(60);
    let (mut re, mut im, mut total) = (0.0f64, 0.0f64, 0.0f64);
    let kk = k as u64;
    for (i, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let v = if shift > 0 { (x >> shift).to_f64().unwrap_or(0.0) } else { x.to_f64().unwrap_or(0.0) };
        let ang = std::f64::consts::TAU * ((i as u64 % kk) as f64) / k as f64;
        re += v * ang.cos();
        im += v * ang.sin();
        total += v.abs() + 1.0;
    }
    (re * re + im * im).sqrt() <= 1e-6 * total
}

/// Writes a nonzero `p` as `content · u^shift · Π ψ_k^(e_k)`.
pub fn factor_cyclotomic(p: &UPoly) -> Result<(Rat, i64, CycloDen)> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let shift = p.min_exp().expect("nonzero");
    let mut rest = p.mul_u_pow(-shift);
    let mut factors = CycloDen::new();
    let mut k = 1u32;
    loop {
        let deg = rest.max_exp().expect("nonzero") as u32;
        if deg == 0 {
            break;
        }
        if k > 6 * deg + 6 {
            return Err(Error::NonCyclotomicDivisor);
        }
        if totient(k) <= deg && may_vanish_at_root_of_unity(&rest, k) {
            let f = psi(k);
            if let Some(qt) = rest.div_exact_small(&f) {
                rest = qt;
                *factors.entry(k).or_insert(0) += 1;
                continue;
            }
        }
        k += 1;
    }
    Ok((rest.coeff(0), shift, factors))
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (k, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            let base = if *k == 1 { "(1 - u)".to_string() } else { format!("Phi_{k}(u)") };
            if *e == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den())?;
        st.end()
    }
}

impl super::ring::Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc::from_rat(r.clone())
    }
    fn pow(&self, e: u32) -> Self {
        RatFunc::pow(self, e)
    }
}

impl super::ring::Field for RatFunc {
    fn div(&self, o: &Self) -> Result<Self> {
        RatFunc::div(self, o)
    }
}

/// True when `r` is a Laurent polynomial in q with integer coefficients and no positive powers.
pub fn in_z_inv_q(r: &RatFunc) -> bool {
    r.is_laurent()
        && r.num().is_even()
        && r.num().has_integer_coeffs()
        && r.num().max_exp().is_none_or(|e| e <= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, rat_int};

    fn qp(e: i64) -> UPoly {
        UPoly::q_pow(e)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (1 - q^2) / (1 - q) = 1 + q
        let f = RatFunc::from_upoly(UPoly::one_minus_q_pow(2)).div_one_minus_q_pow(1, 1);
        assert!(f.is_laurent());
        assert_eq!(f.num(), &UPoly::one().add(&qp(1)));
    }

    #[test]
    fn general_division_and_inverse() {
        let a = RatFunc::from_upoly(UPoly::one_minus_q_pow(3).mul(&qp(-2)).scale_by(&rat(3, 7)));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), RatFunc::one());
        let b = RatFunc::from_upoly(UPoly::one().add(&qp(1)).add(&UPoly::u_pow(1).scale_by(&rat_int(3))));
        assert_eq!(b.inv(), Err(Error::NonCyclotomicDivisor));
    }

    #[test]
    fn evaluation_matches_definition() {
        let f = RatFunc::from_upoly(qp(2).add(&UPoly::from_int(3))).div_one_minus_q_pow(2, 2);
        let q0 = rat(1, 3);
        let expect = (rat(1, 9) + rat_int(3)) / ((rat_int(1) - rat(1, 9)) * (rat_int(1) - rat(1, 9)));
        assert_eq!(f.eval_q(&q0).unwrap(), expect);
        assert_eq!(f.eval_q(&rat_int(1)), Err(Error::PoleAtPoint));
    }

    #[test]
    fn odd_factor_denominator_evaluates_with_sqrt() {
        // 1 / (1 - u) at q = 1/4 is 1 / (1 - 1/2) = 2.
        let f = RatFunc::from_parts(UPoly::one(), [(1u32, 1u32)].into_iter().collect());
        assert_eq!(f.eval_q(&rat(1, 4)).unwrap(), rat_int(2));
        let v = f.eval_float(&rat(1, 2), 128).unwrap().to_f64();
        assert!((v - 1.0 / (1.0 - 0.5f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn inverse_substitution() {
        // f(q) = q / (1 - q)^2 ; f(1/q) = q / (1 - q)^2 as well.
        let f = RatFunc::from_upoly(qp(1)).div_one_minus_q_pow(1, 2);
        assert_eq!(f.subs_inv(), f);
        let g = RatFunc::from_upoly(UPoly::one()).div_one_minus_q_pow(3, 1);
        let q0 = rat(2, 5);
        assert_eq!(g.subs_inv().eval_q(&q0).unwrap(), g.eval_q(&q0.recip()).unwrap());
    }

    #[test]
    fn factorization_recovers_pochhammer() {
        let mut p = UPoly::from_int(-5).mul(&UPoly::u_pow(3));
        for m in [1i64, 2, 2, 6] {
            p = p.mul(&UPoly::one_minus_q_pow(m));
        }
        let (c, shift, f) = factor_cyclotomic(&p).unwrap();
        assert_eq!(shift, 3);
        let rebuilt = expand_den(&f).mul_u_pow(shift).scale_by(&c);
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn integrality_predicate() {
        assert!(in_z_inv_q(&RatFunc::from_upoly(qp(-3).scale_by(&rat_int(-4)))));
        assert!(!in_z_inv_q(&RatFunc::from_upoly(qp(1))));
        assert!(!in_z_inv_q(&RatFunc::from_upoly(UPoly::u_pow(-1))));
        assert!(!in_z_inv_q(&RatFunc::from_upoly(qp(-1).scale_by(&rat(1, 2)))));
    }
}
