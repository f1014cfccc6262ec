//! Exact rationals: parsing, rendering and a few numeric helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`; decimal notation is rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected an exact rational \"p/q\", got {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let ok = |t: &str, signed: bool| {
        let t = if signed { t.strip_prefix(['-', '+']).unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(n, true) || !ok(d, false) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Renders as `"p/q"` (always with an explicit denominator).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `r^e` for any integer exponent; `r` must be nonzero when `e < 0`.
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    let base = if e < 0 { r.recip() } else { r.clone() };
    num_traits::pow::pow(base, e.unsigned_abs() as usize)
}

/// `log|n|` for a nonzero integer of any size.
pub fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 60;
    let top = (n.abs() >> shift).to_f64().expect("60-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log|r|` for a nonzero rational of any size.
pub fn ln_abs(r: &Rat) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

pub fn to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let l = ln_abs(r);
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    if l.abs() < 600.0 {
        r.to_f64().unwrap_or(sign * l.exp())
    } else {
        sign * l.exp()
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}
