//! Arbitrary-precision binary floating point with an explicit working precision.
//!
//! Every value carries the precision (in bits) it was produced at; binary
//! operations round to nearest-even at the larger of the two operand
//! precisions.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat as Af, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};

use super::rat::Rat;

const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest admissible working precision in bits.
pub const MIN_PRECISION: usize = 64;
/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 256;
/// Guard bits reserved when a residual is reported.
pub const GUARD_BITS: usize = 32;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct BigFloat {
    v: Af,
    prec: usize,
}

impl BigFloat {
    fn wrap(v: Af, prec: usize) -> Self {
        BigFloat { v, prec }
    }

    fn clamp_prec(prec: usize) -> usize {
        prec.max(MIN_PRECISION)
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        let p = Self::clamp_prec(prec);
        Self::wrap(Af::from_i64(x, p), p)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        let p = Self::clamp_prec(prec);
        Self::wrap(Af::from_f64(x, p), p)
    }

    /// Exact conversion of an integer, rounded to `prec` bits.
    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        let p = Self::clamp_prec(prec);
        let (sign, words) = x.to_u64_digits();
        if words.is_empty() {
            return Self::zero(p);
        }
        let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let e = (64 * words.len()) as i32;
        let mut v = Af::from_words(&words, s, e);
        v.set_precision(p, RM).expect("precision");
        Self::wrap(v, p)
    }

    pub fn from_rat(x: &Rat, prec: usize) -> Self {
        let p = Self::clamp_prec(prec);
        let n = Self::from_bigint(x.numer(), p + 64);
        let d = Self::from_bigint(x.denom(), p + 64);
        Self::wrap(n.v.div(&d.v, p, RM), p)
    }

    pub fn pi(prec: usize) -> Self {
        let p = Self::clamp_prec(prec);
        Self::wrap(with_consts(|cc| cc.pi(p, RM)), p)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Rounds (or widens) to a new working precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        let p = Self::clamp_prec(prec);
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("precision");
        Self::wrap(v, p)
    }

    fn p2(&self, o: &Self) -> usize {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p2(o);
        Self::wrap(self.v.add(&o.v, p, RM), p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p2(o);
        Self::wrap(self.v.sub(&o.v, p, RM), p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p2(o);
        Self::wrap(self.v.mul(&o.v, p, RM), p)
    }

    /// Division; the quotient by zero is an infinity, checked by callers.
    pub fn div(&self, o: &Self) -> Self {
        let p = self.p2(o);
        Self::wrap(self.v.div(&o.v, p, RM), p)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.v.neg(), self.prec)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.v.ln(p, RM, cc)), p)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.v.exp(p, RM, cc)), p)
    }

    /// Integer power by repeated squaring; negative exponents take the reciprocal.
    pub fn powi(&self, e: i64) -> Self {
        let p = self.prec;
        let mag = self.v.powi(e.unsigned_abs() as usize, p + 32, RM);
        let v = if e < 0 {
            Af::from_i64(1, p).div(&mag, p, RM)
        } else {
            let mut m = mag;
            m.set_precision(p, RM).expect("precision");
            m
        };
        Self::wrap(v, p)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r, self.prec))
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.v.is_zero() || !self.is_finite() {
            None
        } else {
            self.v.exponent().map(|e| e as i64)
        }
    }

    /// Closest `f64`, saturating to 0 or infinity outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_inf_neg() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let words = self.v.mantissa_digits().expect("finite value");
        let top = *words.last().expect("nonempty mantissa");
        let e = self.v.exponent().expect("finite value");
        let mag = (top as f64) * 2f64.powi(e - 64);
        if self.v.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// `log2 |x|` as an `f64`, valid far outside the `f64` exponent range.
    pub fn log2_abs(&self) -> f64 {
        match self.exponent() {
            None => f64::NEG_INFINITY,
            Some(e) => {
                let words = self.v.mantissa_digits().expect("finite value");
                let top = *words.last().expect("nonempty mantissa") as f64 / 2f64.powi(64);
                e as f64 + top.log2()
            }
        }
    }

    pub fn ln_abs_f64(&self) -> f64 {
        self.log2_abs() * std::f64::consts::LN_2
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        match self.v.cmp(&o.v) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            Some(_) => Ordering::Greater,
            None => Ordering::Equal,
        }
    }

    pub fn abs_lt(&self, o: &Self) -> bool {
        matches!(self.v.abs_cmp(&o.v), Some(c) if c < 0)
    }

    /// Decimal rendering in scientific notation with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".into();
        }
        if !self.is_finite() {
            return if self.v.is_nan() { "NaN".into() } else if self.v.is_inf_neg() { "-inf".into() } else { "inf".into() };
        }
        let raw = with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).expect("formatting");
        normalize_sci(&raw, digits.max(1))
    }
}

/// Rewrites astro-float's decimal output as `d.ddd…e±x` with `digits` digits, truncated.
fn normalize_sci(raw: &str, digits: usize) -> String {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let all: String = int_part.chars().chain(frac_part.chars()).collect();
    let lead = all.chars().take_while(|c| *c == '0').count();
    if lead == all.len() {
        return "0".into();
    }
    let sig = &all[lead..];
    let exp10 = exp + int_part.len() as i64 - 1 - lead as i64;
    let mut d: String = sig.chars().take(digits).collect();
    while d.len() < digits {
        d.push('0');
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&d[..1]);
    if d.len() > 1 {
        out.push('.');
        out.push_str(&d[1..]);
    }
    out.push_str(&format!("e{exp10}"));
    out
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(30))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(30))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn integer_conversion_round_trips() {
        for v in [1i64, 5, -7, 1 << 40, 123_456_789_012_345] {
            let b = BigFloat::from_bigint(&BigInt::from(v), 128);
            assert_eq!(b.to_f64(), v as f64);
        }
        let big = BigInt::from(3).pow(200);
        let b = BigFloat::from_bigint(&big, 512);
        let back = BigFloat::from_i64(3, 512).powi(200);
        assert!(b.sub(&back).is_zero());
    }

    #[test]
    fn rational_and_sqrt() {
        let r = Rat::new(BigInt::from(1), BigInt::from(3));
        let x = BigFloat::from_rat(&r, 256);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        let two = BigFloat::from_i64(2, 256);
        let s = two.sqrt();
        assert!(s.mul(&s).sub(&two).abs().log2_abs() < -250.0);
    }

    #[test]
    fn pi_and_logs() {
        let pi = BigFloat::pi(200);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let l = BigFloat::from_i64(8, 200).ln();
        assert!((l.to_f64() - 8f64.ln()).abs() < 1e-15);
        let tiny = BigFloat::from_i64(2, 128).powi(-5000);
        assert!((tiny.log2_abs() + 5000.0).abs() < 1e-9);
    }

    #[test]
    fn scientific_rendering() {
        let x = BigFloat::from_rat(&Rat::new(BigInt::from(-1), BigInt::from(8)), 128);
        assert_eq!(x.to_sci_string(3), "-1.25e-1");
        assert_eq!(BigFloat::from_i64(1500, 128).to_sci_string(2), "1.5e3");
        assert_eq!(BigFloat::zero(64).to_sci_string(5), "0");
    }
}
