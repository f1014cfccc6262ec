use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters (A, r, n) of the rational function R_n(T; q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "A")]
    pub a: u32,
    pub r: u32,
    pub n: u32,
}

impl Params {
    /// Validates A even, A ≥ 2 and 1 ≤ r ≤ A/2.
    pub fn new(a: u32, r: u32, n: u32) -> Result<Self> {
        Self::check_ar(a, r)?;
        Ok(Params { a, r, n })
    }

    pub fn check_ar(a: u32, r: u32) -> Result<()> {
        if a < 2 || !a.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("A must be even and at least 2 (got A = {a})")));
        }
        if r < 1 || 2 * r > a {
            return Err(Error::InvalidParams(format!("r must satisfy 1 <= r <= A/2 (got A = {a}, r = {r})")));
        }
        Ok(())
    }

    pub fn with_n(&self, n: u32) -> Self {
        Params { n, ..*self }
    }

    /// (A − 2r)n/2: the power of T in the numerator, also the u-exponent of q^((A−2r)n/4).
    pub fn half_gap(&self) -> i64 {
        ((self.a - 2 * self.r) * self.n / 2) as i64
    }

    pub fn rn(&self) -> i64 {
        (self.r * self.n) as i64
    }
}

/// Parity selector ε ∈ {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Eps {
    Even,
    Odd,
}

impl Eps {
    pub fn value(self) -> u32 {
        match self {
            Eps::Even => 0,
            Eps::Odd => 1,
        }
    }

    /// (−1)^ε.
    pub fn sign(self) -> i64 {
        match self {
            Eps::Even => 1,
            Eps::Odd => -1,
        }
    }

    pub fn both() -> [Eps; 2] {
        [Eps::Even, Eps::Odd]
    }
}

impl TryFrom<u8> for Eps {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Eps::Even),
            1 => Ok(Eps::Odd),
            _ => Err(Error::InvalidParams(format!("eps must be 0 or 1 (got {v})"))),
        }
    }
}

impl From<Eps> for u8 {
    fn from(e: Eps) -> u8 {
        e.value() as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Params::new(4, 1, 3).is_ok());
        assert!(Params::new(4, 2, 3).is_ok());
        assert!(Params::new(3, 1, 0).is_err());
        assert!(Params::new(4, 3, 0).is_err());
        assert!(Params::new(4, 0, 0).is_err());
        assert!(Params::new(0, 0, 0).is_err());
        assert!(Eps::try_from(2).is_err());
    }

    #[test]
    fn derived_quantities() {
        let p = Params::new(4, 1, 3).unwrap();
        assert_eq!(p.half_gap(), 3);
        assert_eq!(p.rn(), 3);
    }
}
