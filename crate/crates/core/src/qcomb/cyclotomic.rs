//! Cyclotomic polynomials in q and the products d_n(q) = Φ_1(q)···Φ_n(q).

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::cyclo;
use crate::arith::{Rat, UPoly};

/// Φ_ℓ(q) as a polynomial in q (even u-exponents).
pub fn cyclotomic(l: u32) -> UPoly {
    UPoly::from_q_coeffs_i64(0, &cyclo::cyclotomic(l))
}

/// Memoized running products d_0 = 1, d_n = d_(n−1)·Φ_n.
pub struct CycloCache {
    d: RwLock<Vec<UPoly>>,
}

impl CycloCache {
    pub fn global() -> &'static CycloCache {
        static C: OnceLock<CycloCache> = OnceLock::new();
        C.get_or_init(|| CycloCache { d: RwLock::new(vec![UPoly::one()]) })
    }

    /// Ensures d_0..d_n are cached.
    pub fn warm(&self, n: usize) {
        if self.d.read().expect("cache lock").len() > n {
            return;
        }
        let mut d = self.d.write().expect("cache lock");
        while d.len() <= n {
            let l = d.len() as u32;
            let next = d.last().expect("d_0").mul(&cyclotomic(l));
            d.push(next);
        }
    }

    pub fn d_n(&self, n: usize) -> UPoly {
        self.warm(n);
        self.d.read().expect("cache lock")[n].clone()
    }
}

/// d_n(q).
pub fn d_n(n: usize) -> UPoly {
    CycloCache::global().d_n(n)
}

/// d_n(x) evaluated exactly at a rational point.
pub fn d_n_at(n: usize, x: &Rat) -> Rat {
    let mut acc = Rat::one();
    for l in 1..=n as u32 {
        let c = cyclo::cyclotomic(l);
        let mut v = Rat::from_integer(BigInt::from(0));
        for ci in c.iter().rev() {
            v = v * x + Rat::from_integer(BigInt::from(*ci));
        }
        acc *= v;
    }
    acc
}
