//! Unsigned Stirling numbers of the first kind, the α coefficients built
//! from them, and Bernoulli numbers.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// Rows c(N, ·) for N = 0..=N_max, with c(0, 0) = 1.
pub struct StirlingTable {
    rows: RwLock<Vec<Vec<BigInt>>>,
}

impl StirlingTable {
    pub fn global() -> &'static StirlingTable {
        static T: OnceLock<StirlingTable> = OnceLock::new();
        T.get_or_init(|| StirlingTable { rows: RwLock::new(vec![vec![BigInt::one()]]) })
    }

    pub fn warm(&self, n_max: usize) {
        if self.rows.read().expect("table lock").len() > n_max {
            return;
        }
        let mut rows = self.rows.write().expect("table lock");
        while rows.len() <= n_max {
            let n = rows.len() - 1;
            let prev = rows.last().expect("row 0");
            let mut next = vec![BigInt::zero(); n + 2];
            for j in 1..=n + 1 {
                let left = prev.get(j - 1).cloned().unwrap_or_default();
                let here = prev.get(j).cloned().unwrap_or_default();
                next[j] = left + here * BigInt::from(n);
            }
            rows.push(next);
        }
    }

    pub fn get(&self, n: usize, j: usize) -> BigInt {
        self.warm(n);
        self.rows.read().expect("table lock")[n].get(j).cloned().unwrap_or_default()
    }
}

/// c(N, j): coefficient of ℓ^j in ℓ(ℓ+1)···(ℓ+N−1), for 1 ≤ j ≤ N.
pub fn stirling_first(n: usize, j: usize) -> Result<BigInt> {
    if j < 1 || j > n {
        return Err(Error::IndexOutOfRange(format!("c({n}, {j}) needs 1 <= j <= N")));
    }
    Ok(StirlingTable::global().get(n, j))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// α_{s,j} = 2 c(s−1, j−1) / (s−1)! for s ≥ 2 and 2 ≤ j ≤ s.
pub fn alpha(s: usize, j: usize) -> Result<Rat> {
    if s < 2 || j < 2 || j > s {
        return Err(Error::IndexOutOfRange(format!("alpha({s}, {j}) needs 2 <= j <= s")));
    }
    let c = stirling_first(s - 1, j - 1)?;
    Ok(Rat::new(BigInt::from(2) * c, factorial(s - 1)))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli number B_m with B_1 = −1/2, from Σ_{k=0}^{m} C(m+1, k) B_k = 0.
pub fn bernoulli(m: usize) -> Rat {
    static B: OnceLock<RwLock<Vec<Rat>>> = OnceLock::new();
    let cache = B.get_or_init(|| RwLock::new(vec![Rat::one()]));
    if let Some(b) = cache.read().expect("table lock").get(m) {
        return b.clone();
    }
    let mut b = cache.write().expect("table lock");
    while b.len() <= m {
        let n = b.len();
        let mut acc = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rat::from_integer(binomial(n + 1, k)) * bk;
        }
        b.push(-acc / Rat::from_integer(BigInt::from(n + 1)));
    }
    b[m].clone()
}
