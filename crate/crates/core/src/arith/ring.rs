//! Minimal algebraic interfaces shared by the exact coefficient types.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(n.into()))
    }

    fn pow(&self, e: u32) -> Self {
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
}

/// A ring in which division by nonzero elements is (at least partially) available.
pub trait Field: Ring {
    fn div(&self, o: &Self) -> Result<Self>;

    fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Field for Rat {
    fn div(&self, o: &Self) -> Result<Self> {
        if Zero::is_zero(o) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / o)
        }
    }
}
