//! Truncated q-expansions and the Eisenstein series E_2s.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::arith::{BigFloat, Rat};
use crate::error::{Error, Result};
use crate::qcomb::bernoulli;

/// c_0 + c_1 q + … + c_N q^N with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QExpansion {
    pub weight: u32,
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<Rat>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(crate::arith::format_rat))
}

impl QExpansion {
    pub fn new(weight: u32, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "an expansion keeps at least c_0");
        QExpansion { weight, coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![Rat::zero(); order + 1];
        c[0] = Rat::one();
        QExpansion::new(0, c)
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated expansion");
        QExpansion::new(self.weight, self.coeffs[..=order].to_vec())
    }

    fn check_order(&self, o: &Self) {
        assert_eq!(self.order(), o.order(), "expansions truncated at different orders");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_order(o);
        QExpansion::new(self.weight, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_order(o);
        QExpansion::new(self.weight, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QExpansion::new(self.weight, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product truncated at the common order; weights add.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_order(o);
        let n = self.order();
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QExpansion::new(self.weight + o.weight, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(QExpansion::one(self.order()), |acc, _| acc.mul(self))
    }

    /// The truncated polynomial evaluated at q0.
    pub fn eval_truncated(&self, q0: &Rat, prec: usize) -> BigFloat {
        let q = BigFloat::from_rat(q0, prec);
        self.coeffs.iter().rev().fold(BigFloat::zero(prec), |acc, c| acc.mul(&q).add(&BigFloat::from_rat(c, prec)))
    }
}

/// σ_k(m) = Σ_{d | m} d^k.
pub fn sigma(k: u32, m: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            acc += BigInt::from(d).pow(k);
            let e = m / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// E_2s(q) = 1 − (4s/B_2s) Σ_{k≥1} σ_(2s−1)(k) q^k, truncated at q^N.
pub fn eisenstein_expansion(s: u32, order: usize) -> Result<QExpansion> {
    if s < 1 || order < 1 {
        return Err(Error::InvalidParams("need s >= 1 and N >= 1".into()));
    }
    let factor = -Rat::from_integer(BigInt::from(4 * s)) / bernoulli(2 * s as usize);
    let mut c = Vec::with_capacity(order + 1);
    c.push(Rat::one());
    for k in 1..=order as u64 {
        c.push(&factor * Rat::from_integer(sigma(2 * s - 1, k)));
    }
    Ok(QExpansion::new(2 * s, c))
}
