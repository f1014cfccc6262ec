//! Laurent polynomials in u = q^(1/2) with rational coefficients.
//!
//! Storage is `scale · Σ c_i u^(low+i)` where the integer vector `c` is
//! primitive, has nonzero end coefficients and a positive leading entry.
//! This makes the representation canonical and lets products run on plain
//! integer convolutions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigfloat::BigFloat;
use super::rat::{format_rat, parse_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    scale: Rat,
    low: i64,
    coeffs: Vec<BigInt>,
}

/// Exponent parity of a Laurent polynomial in u.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Zero,
    Even,
    Odd,
    Mixed,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { scale: Rat::zero(), low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::u_pow(0)
    }

    pub fn constant(r: Rat) -> Self {
        Self::monomial(0, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rat::from_integer(n.into()))
    }

    pub fn monomial(e: i64, r: Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        UPoly { scale: r, low: e, coeffs: vec![BigInt::one()] }
    }

    /// u^e.
    pub fn u_pow(e: i64) -> Self {
        Self::monomial(e, Rat::one())
    }

    /// q^e = u^(2e).
    pub fn q_pow(e: i64) -> Self {
        Self::u_pow(2 * e)
    }

    /// 1 − c·q^e.
    pub fn one_minus_q_pow(e: i64) -> Self {
        Self::from_terms([(0, Rat::one()), (2 * e, -Rat::one())])
    }

    /// Sum of `(u-exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
            return Self::zero();
        };
        let l = map.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &map {
            v[(e - lo) as usize] = c.numer() * (&l / c.denom());
        }
        Self::normalize(Rat::new(BigInt::one(), l), lo, v)
    }

    /// Polynomial with integer coefficients `c[i]` at u-exponent `low + i`.
    pub fn from_int_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        Self::normalize(Rat::one(), low, coeffs)
    }

    /// Integer polynomial in q with small coefficients, `c[i]` at q^(low + i).
    pub fn from_q_coeffs_i64(low: i64, c: &[i64]) -> Self {
        let mut v = vec![BigInt::zero(); 2 * c.len().max(1) - 1];
        for (i, x) in c.iter().enumerate() {
            v[2 * i] = BigInt::from(*x);
        }
        Self::normalize(Rat::one(), 2 * low, v)
    }

    fn normalize(scale: Rat, mut low: i64, mut c: Vec<BigInt>) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let Some(first) = c.iter().position(|x| !x.is_zero()) else {
            return Self::zero();
        };
        if first > 0 {
            c.drain(..first);
            low += first as i64;
        }
        let mut g = BigInt::zero();
        for x in &c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        let neg = c.last().expect("nonempty").is_negative();
        let mut scale = scale;
        if !g.is_one() {
            for x in c.iter_mut() {
                *x /= &g;
            }
            scale *= Rat::from_integer(g);
        }
        if neg {
            for x in c.iter_mut() {
                *x = -&*x;
            }
            scale = -scale;
        }
        UPoly { scale, low, coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.scale.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.coeffs.len() == 1 && self.low == 0)
    }

    /// Rational content: `self = content · primitive part`.
    pub fn content(&self) -> &Rat {
        &self.scale
    }

    /// Primitive integer coefficient vector, starting at `min_exp`.
    pub fn int_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Nonzero terms `(u-exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Rat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, &self.scale * Rat::from_integer(c.clone())))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        let i = e - self.low;
        if self.is_zero() || i < 0 || i >= self.coeffs.len() as i64 {
            return Rat::zero();
        }
        &self.scale * Rat::from_integer(self.coeffs[i as usize].clone())
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if (self.low + i as i64).rem_euclid(2) == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (false, false) => Parity::Zero,
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self.parity(), Parity::Zero | Parity::Even)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.scale.denom().is_one()
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        UPoly { scale: -&self.scale, low: self.low, coeffs: self.coeffs.clone() }
    }

    pub fn scale_by(&self, r: &Rat) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        UPoly { scale: &self.scale * r, low: self.low, coeffs: self.coeffs.clone() }
    }

    /// Multiplication by u^k.
    pub fn mul_u_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        UPoly { scale: self.scale.clone(), low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (an, ad) = (self.scale.numer(), self.scale.denom());
        let (bn, bd) = (o.scale.numer(), o.scale.denom());
        let l = ad.lcm(bd);
        let mut fa = an * (&l / ad);
        let mut fb = bn * (&l / bd);
        let g = fa.gcd(&fb);
        fa /= &g;
        fb /= &g;
        let low = self.low.min(o.low);
        let high = self.max_exp().unwrap().max(o.max_exp().unwrap());
        let mut c = vec![BigInt::zero(); (high - low + 1) as usize];
        for (src, f) in [(self, &fa), (o, &fb)] {
            let off = (src.low - low) as usize;
            let unit = f.is_one();
            for (i, x) in src.coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if unit {
                    c[off + i] += x;
                } else {
                    c[off + i] += x * f;
                }
            }
        }
        Self::normalize(Rat::new(g, l), low, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let coeffs = convolve(&self.coeffs, &o.coeffs);
        // Gauss: primitive times primitive is primitive, leading entries stay positive.
        UPoly { scale: &self.scale * &o.scale, low: self.low + o.low, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplication by an integer polynomial `Σ p_i u^i` with small coefficients.
    pub fn mul_small(&self, p: &[i64]) -> Self {
        if self.is_zero() || p.iter().all(|x| *x == 0) {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + p.len() - 1];
        for (j, pj) in p.iter().enumerate() {
            if *pj == 0 {
                continue;
            }
            for (i, x) in self.coeffs.iter().enumerate() {
                if !x.is_zero() {
                    c[i + j] += x * *pj;
                }
            }
        }
        Self::normalize(self.scale.clone(), self.low, c)
    }

    /// Exact quotient by an integer polynomial with constant term 1, if it divides.
    pub fn div_exact_small(&self, p: &[i64]) -> Option<Self> {
        debug_assert_eq!(p[0], 1);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dp = p.len() - 1;
        let n = self.coeffs.len();
        if dp == 0 {
            return Some(self.clone());
        }
        if n <= dp {
            return None;
        }
        let m = n - dp;
        let mut q: Vec<BigInt> = Vec::with_capacity(m);
        for i in 0..m {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=dp.min(i) {
                if p[j] != 0 && !q[i - j].is_zero() {
                    acc -= &q[i - j] * p[j];
                }
            }
            q.push(acc);
        }
        for i in m..n {
            let mut acc = self.coeffs[i].clone();
            for j in (i + 1 - m)..=dp.min(i) {
                if p[j] != 0 && !q[i - j].is_zero() {
                    acc -= &q[i - j] * p[j];
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
        let mut scale = self.scale.clone();
        if q.last().expect("nonempty").sign() == Sign::Minus {
            for x in q.iter_mut() {
                *x = -&*x;
            }
            scale = -scale;
        }
        Some(UPoly { scale, low: self.low, coeffs: q })
    }

    /// Substitution u → −u.
    pub fn subs_neg_u(&self) -> Self {
        let c: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| if (self.low + i as i64).rem_euclid(2) == 1 { -x } else { x.clone() })
            .collect();
        Self::normalize(self.scale.clone(), self.low, c)
    }

    /// Substitution u → 1/u (that is, q → 1/q).
    pub fn subs_inv(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        let low = -self.max_exp().unwrap();
        Self::normalize(self.scale.clone(), low, c)
    }

    /// Exact value at a rational u0.
    pub fn eval_u(&self, u0: &Rat) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        if u0.is_zero() {
            if self.low < 0 {
                return Err(Error::PoleAtZero);
            }
            return Ok(self.coeff(0));
        }
        let v = horner(self.coeffs.iter().collect::<Vec<_>>().as_slice(), u0);
        Ok(&self.scale * v * super::rat::rat_pow(u0, self.low))
    }

    /// Exact value at q = q0; odd u-exponents require q0 to be a rational square.
    pub fn eval_q(&self, q0: &Rat) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        if q0.is_zero() {
            if self.low < 0 {
                return Err(Error::PoleAtZero);
            }
            return Ok(self.coeff(0));
        }
        if !self.is_even() {
            return match rational_sqrt(q0) {
                Some(u0) => self.eval_u(&u0),
                None => Err(Error::OddHalfPower),
            };
        }
        let start = self.low.rem_euclid(2) as usize;
        let even: Vec<&BigInt> = self.coeffs.iter().skip(start).step_by(2).collect();
        let qlow = (self.low + start as i64) / 2;
        let v = horner(&even, q0);
        Ok(&self.scale * v * super::rat::rat_pow(q0, qlow))
    }

    /// Numeric value at q = q0 with u = √q0 when odd exponents occur (q0 > 0 only).
    pub fn eval_float(&self, q0: &Rat, prec: usize) -> Result<BigFloat> {
        if self.is_even() || q0.is_zero() || rational_sqrt(q0).is_some() {
            return Ok(BigFloat::from_rat(&self.eval_q(q0)?, prec));
        }
        if q0.is_negative() {
            return Err(Error::OddHalfPower);
        }
        let wp = prec + 64;
        let u = BigFloat::from_rat(q0, wp).sqrt();
        let mut acc = BigFloat::zero(wp);
        for x in self.coeffs.iter().rev() {
            acc = acc.mul(&u).add(&BigFloat::from_bigint(x, wp));
        }
        let v = acc.mul(&u.powi(self.low)).mul_rat(&self.scale);
        Ok(v.with_precision(prec))
    }
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    let bnz: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(j, y) in &bnz {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Σ c_i x^i` for rational x, evaluated over a common denominator.
fn horner(c: &[&BigInt], x: &Rat) -> Rat {
    if c.is_empty() {
        return Rat::zero();
    }
    let (a, b) = (x.numer(), x.denom());
    let d = c.len() - 1;
    let mut n = c[d].clone();
    let mut bp = BigInt::one();
    for i in (0..d).rev() {
        bp *= b;
        n *= a;
        if !c[i].is_zero() {
            n += c[i] * &bp;
        }
    }
    Rat::new(n, bp)
}

/// Exact square root of a nonnegative rational square, if any.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

impl Default for UPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let cs = if a.denom().is_one() { a.numer().to_string() } else { format!("({a})") };
            match (e, a.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (_, true) => write!(f, "u^{e}")?,
                _ => write!(f, "{cs}*u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    u_exp: i64,
    coeff: String,
}

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let recs: Vec<TermRecord> =
            self.terms().map(|(e, c)| TermRecord { u_exp: e, coeff: format_rat(&c) }).collect();
        recs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        let mut terms = Vec::with_capacity(recs.len());
        for r in recs {
            terms.push((r.u_exp, parse_rat(&r.coeff).map_err(serde::de::Error::custom)?));
        }
        Ok(UPoly::from_terms(terms))
    }
}

impl super::ring::Ring for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        UPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
    fn from_rat(r: &Rat) -> Self {
        UPoly::constant(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, rat_int};

    fn q(e: i64) -> UPoly {
        UPoly::q_pow(e)
    }

    #[test]
    fn difference_of_squares() {
        let a = q(1).sub(&UPoly::one());
        let b = q(1).add(&UPoly::one());
        assert_eq!(a.mul(&b), q(2).sub(&UPoly::one()));
    }

    #[test]
    fn u_squared_is_q() {
        assert_eq!(UPoly::u_pow(1).mul(&UPoly::u_pow(1)), q(1));
    }

    #[test]
    fn evaluation() {
        assert_eq!(q(3).eval_q(&rat(1, 2)).unwrap(), rat(1, 8));
        let p = UPoly::from_terms([(-2, rat(3, 2)), (4, rat_int(-1))]);
        assert_eq!(p.eval_q(&rat(1, 2)).unwrap(), rat(3, 1) - rat(1, 4));
        assert_eq!(UPoly::u_pow(-2).eval_q(&Rat::zero()), Err(Error::PoleAtZero));
        assert_eq!(UPoly::u_pow(1).eval_q(&rat(-1, 2)), Err(Error::OddHalfPower));
        assert_eq!(UPoly::u_pow(3).eval_q(&rat(1, 4)).unwrap(), rat(1, 8));
        let f = UPoly::u_pow(1).eval_float(&rat(1, 2), 128).unwrap();
        assert!((f.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = UPoly::from_terms([(0, rat(2, 3)), (2, rat(-4, 3))]);
        let b = UPoly::from_terms([(2, rat(-4, 3)), (0, rat(1, 3)), (0, rat(1, 3))]);
        assert_eq!(a, b);
        assert_eq!(a.content(), &rat(-2, 3));
        let z = a.sub(&b);
        assert!(z.is_zero());
        assert_eq!(z, UPoly::zero());
    }

    #[test]
    fn exact_division_by_cyclotomic_factor() {
        let one_minus_u = [1i64, -1];
        let p = UPoly::one_minus_q_pow(3); // 1 - u^6
        let quo = p.div_exact_small(&one_minus_u).unwrap();
        assert_eq!(quo.mul_small(&one_minus_u), p);
        assert!(UPoly::from_terms([(0, rat_int(1)), (1, rat_int(2))]).div_exact_small(&one_minus_u).is_none());
    }

    #[test]
    fn substitutions() {
        let p = UPoly::from_terms([(-1, rat_int(2)), (3, rat(1, 5))]);
        assert_eq!(p.subs_inv().subs_inv(), p);
        assert_eq!(p.subs_inv(), UPoly::from_terms([(1, rat_int(2)), (-3, rat(1, 5))]));
        assert_eq!(p.subs_neg_u(), p.neg());
    }

    #[test]
    fn json_round_trip() {
        let p = UPoly::from_terms([(-3, rat(-7, 2)), (2, rat_int(5))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"u_exp":-3,"coeff":"-7/2"},{"u_exp":2,"coeff":"5/1"}]"#);
        let back: UPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
