//! The polynomials P_s(z; q), P_0(z; q) and the combined forms P_s^[ε](q).

use std::collections::BTreeMap;

use super::kernel::{PoleExpansion, QField, Symbolic};
use super::params::Eps;
use super::table::PFTable;
use crate::arith::{Field, RatFunc, Ring, TPoly};
use crate::error::Result;
use crate::qcomb::alpha;

/// P_s(1; q) = Σ_j d_{s,j} q^(−j).
pub fn p_at_one<Q: QField>(ctx: &Q, pe: &PoleExpansion<Q::F>, s: usize) -> Q::F {
    (0..=pe.n).fold(Q::F::zero(), |acc, j| acc.add(&pe.d[s][j].mul(&ctx.q_pow(-(j as i64)))))
}

/// ∂P_1/∂z at z = 1, i.e. Σ_j j d_{1,j} q^(−j).
pub fn dp1_at_one<Q: QField>(ctx: &Q, pe: &PoleExpansion<Q::F>) -> Q::F {
    (1..=pe.n).fold(Q::F::zero(), |acc, j| {
        acc.add(&pe.d[1][j].mul(&ctx.q_pow(-(j as i64))).mul(&Q::F::from_int(j as i64)))
    })
}

/// P_0(1; q) = −Σ_s Σ_{k=1}^{n} Σ_{j=k}^{n} d_{s,j} q^(k−j) / (1 − q^k)^s.
pub fn p0_at_one<Q: QField>(ctx: &Q, pe: &PoleExpansion<Q::F>) -> Result<Q::F> {
    let mut acc = Q::F::zero();
    for s in 1..=pe.mult {
        for k in 1..=pe.n {
            let inner = (k..=pe.n)
                .fold(Q::F::zero(), |a, j| a.add(&pe.d[s][j].mul(&ctx.q_pow(k as i64 - j as i64))));
            if !inner.is_zero() {
                acc = acc.sub(&ctx.div_one_minus_q_pow(&inner, k as u32, s as u32)?);
            }
        }
    }
    Ok(acc)
}

/// q^(−n) P_0(1; 1/q) = −Σ_s Σ_{k=1}^{n} Σ_{j=0}^{n−k} c_{s,j} q^((j+k)(s−1)) / (1 − q^k)^s.
pub fn p0_reflected<Q: QField>(ctx: &Q, pe: &PoleExpansion<Q::F>) -> Result<Q::F> {
    let mut acc = Q::F::zero();
    for s in 1..=pe.mult {
        for k in 1..=pe.n {
            let inner = (0..=pe.n - k).fold(Q::F::zero(), |a, j| {
                a.add(&pe.c[s][j].mul(&ctx.q_pow(((j + k) * (s - 1)) as i64)))
            });
            if !inner.is_zero() {
                acc = acc.sub(&ctx.div_one_minus_q_pow(&inner, k as u32, s as u32)?);
            }
        }
    }
    Ok(acc)
}

/// Indices s with s ≡ ε (mod 2) and 2 ≤ s ≤ A.
pub fn eps_indices(a: u32, eps: Eps) -> Vec<u32> {
    (2..=a).filter(|s| s % 2 == eps.value()).collect()
}

/// The coefficients of S^[ε] = P_0^[ε] + Σ_s P_s^[ε] ζ_q(s).
#[derive(Clone, Debug, PartialEq)]
pub struct EpsForms<F> {
    pub eps: Eps,
    pub p0: F,
    /// Keyed by s ∈ [`eps_indices`].
    pub ps: BTreeMap<u32, F>,
}

impl<F: Field> EpsForms<F> {
    /// All coefficients, s = 0 first.
    pub fn entries(&self) -> Vec<(u32, &F)> {
        std::iter::once((0, &self.p0)).chain(self.ps.iter().map(|(s, v)| (*s, v))).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> EpsForms<G> {
        EpsForms { eps: self.eps, p0: f(&self.p0), ps: self.ps.iter().map(|(s, v)| (*s, f(v))).collect() }
    }
}

/// P_0^[ε] and P_s^[ε] from a pole table.
pub fn eps_forms<Q: QField>(ctx: &Q, pe: &PoleExpansion<Q::F>, eps: Eps) -> Result<EpsForms<Q::F>> {
    let a = pe.mult as u32;
    let at_one: Vec<Q::F> = (0..=pe.mult).map(|s| if s == 0 { Q::F::zero() } else { p_at_one(ctx, pe, s) }).collect();
    let mut ps = BTreeMap::new();
    for s in eps_indices(a, eps) {
        let mut v = Q::F::zero();
        for k in s..=a {
            v = v.add(&Q::F::from_rat(&alpha(k as usize, s as usize)?).mul(&at_one[k as usize]));
        }
        ps.insert(s, v);
    }
    let base = p0_at_one(ctx, pe)?;
    let refl = p0_reflected(ctx, pe)?;
    let dp1 = dp1_at_one(ctx, pe);
    let p0 = match eps {
        Eps::Odd => base.sub(&refl).sub(&dp1),
        Eps::Even => base.add(&refl).add(&dp1),
    };
    Ok(EpsForms { eps, p0, ps })
}

impl PFTable {
    /// P_s(z; q) = Σ_j d_{s,j} q^(−j) z^j.
    pub fn p_z(&self, s: usize) -> TPoly<RatFunc> {
        TPoly::new((0..=self.params.n as usize).map(|j| self.d[s][j].mul_u_pow(-2 * j as i64)).collect())
    }

    /// P_0(z; q) = −Σ_s Σ_{j=1}^{n} Σ_{k=1}^{j} d_{s,j} q^(k−j) z^(j−k) / (1 − q^k)^s.
    pub fn p0_z(&self) -> TPoly<RatFunc> {
        let n = self.params.n as usize;
        let mut coeffs = vec![RatFunc::zero(); n];
        for s in 1..=self.params.a as usize {
            for j in 1..=n {
                for k in 1..=j {
                    let t = self.d[s][j].mul_u_pow(2 * (k as i64 - j as i64)).div_one_minus_q_pow(k as u32, s as u32);
                    coeffs[j - k] = coeffs[j - k].sub(&t);
                }
            }
        }
        TPoly::new(coeffs)
    }

    /// z^n q^(−n) P_s(1/z; 1/q) = P_s(z; q).
    pub fn reciprocity_holds(&self, s: usize) -> bool {
        let n = self.params.n as usize;
        let p = self.p_z(s);
        (0..=n).all(|j| p.coeff(j).subs_inv().mul_u_pow(-2 * n as i64) == p.coeff(n - j))
    }

    /// P_s^[ε] exactly.
    pub fn p_eps(&self, eps: Eps) -> Result<EpsForms<RatFunc>> {
        eps_forms(&Symbolic, &self.expansion(), eps)
    }

    pub fn p_one_at_one(&self) -> RatFunc {
        p_at_one(&Symbolic, &self.expansion(), 1)
    }
}
