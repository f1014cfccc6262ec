//! Integer cyclotomic polynomials, memoized.
//!
//! `cyclotomic(k)` is the usual monic Φ_k(x). `psi(k)` is the same polynomial
//! normalized to constant term 1, which only changes Φ_1 into 1 − x. These
//! normalized factors are the building blocks of canonical denominators.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

type Cache = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn totient(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= m as u64 {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Exact division of `num` by a monic integer polynomial (ascending coefficients).
fn div_monic(num: &[BigInt], den: &[i64]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                if *dj != 0 {
                    rem[i + j] -= &c * dj;
                }
            }
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quo
}

/// Monic Φ_k(x), coefficients ascending.
pub fn cyclotomic(k: u32) -> Arc<Vec<i64>> {
    assert!(k >= 1, "cyclotomic index must be positive");
    if let Some(c) = cache().read().expect("cache lock").get(&k) {
        return c.clone();
    }
    let mut poly = vec![BigInt::zero(); k as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[k as usize] = BigInt::from(1);
    for d in divisors(k) {
        if d < k {
            poly = div_monic(&poly, &cyclotomic(d));
        }
    }
    let coeffs: Vec<i64> = poly
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
        .collect();
    let arc = Arc::new(coeffs);
    cache().write().expect("cache lock").insert(k, arc.clone());
    arc
}

/// Φ_k normalized to constant term 1.
pub fn psi(k: u32) -> Arc<Vec<i64>> {
    if k == 1 {
        static ONE_MINUS_X: OnceLock<Arc<Vec<i64>>> = OnceLock::new();
        return ONE_MINUS_X.get_or_init(|| Arc::new(vec![1, -1])).clone();
    }
    cyclotomic(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*psi(1), vec![1, -1]);
    }

    #[test]
    fn degree_is_totient() {
        for k in 1..=120 {
            assert_eq!(cyclotomic(k).len() as u32 - 1, totient(k), "k={k}");
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        assert!(cyclotomic(105).contains(&-2));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
