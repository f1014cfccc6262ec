//! R_n(T; q) = (q^(−n)T; q)_n² / (T; q)_(n+1)² and its partial fractions.

use serde::Serialize;

use crate::arith::{RatFunc, TRatFunc, UPoly};
use crate::error::Result;
use crate::linform::{pole_expansion, PoleKernel, Symbolic};
use crate::qcomb::qpoch_t;

/// The pole kernel of R_n: numerator factors 1 − q^i T for i = −n..−1, each twice.
pub fn kernel(n: u32) -> PoleKernel {
    let n = n as i64;
    let linear = (-n..0).chain(-n..0).collect();
    PoleKernel { scalar: Vec::new(), linear, t_power: 0, n: n as usize, mult: 2 }
}

/// R_n(T; q) built from q-Pochhammer symbols in T.
pub fn build_r(n: u32) -> TRatFunc<RatFunc> {
    let n = n as usize;
    let lift = |p: crate::arith::TPoly<UPoly>| p.map(|c| RatFunc::from_upoly(c.clone()));
    let num = lift(qpoch_t(&UPoly::q_pow(-(n as i64)), n));
    let den = lift(qpoch_t(&UPoly::one(), n + 1));
    TRatFunc::new(num.mul(&num), den.mul(&den))
}

/// R_n(T; q) = Σ_j a[j]/(1 − q^j T)² + b[j]/(1 − q^j T).
#[derive(Clone, Debug, Serialize)]
pub struct Zeta3Kernel {
    pub n: u32,
    pub a: Vec<RatFunc>,
    pub b: Vec<RatFunc>,
}

/// Exact a[j], b[j] by order-2 expansion at each pole T = q^(−j).
pub fn zeta3_partial_fractions(n: u32) -> Result<Zeta3Kernel> {
    let mut pe = pole_expansion(&Symbolic, &kernel(n))?;
    let a = std::mem::take(&mut pe.d[2]);
    let b = std::mem::take(&mut pe.d[1]);
    Ok(Zeta3Kernel { n, a, b })
}

impl Zeta3Kernel {
    /// Σ_j a[j]/(1 − q^j T)² + b[j]/(1 − q^j T) as a T-rational function.
    pub fn reconstruct(&self) -> TRatFunc<RatFunc> {
        let n = self.n as usize;
        let mut d = vec![vec![RatFunc::zero(); n + 1]; 3];
        d[1] = self.b.clone();
        d[2] = self.a.clone();
        let pe = crate::linform::PoleExpansion { n, mult: 2, c: d.clone(), d };
        pe.reconstruct(&Symbolic, &kernel(self.n))
    }

    pub fn reconstruction_holds(&self) -> bool {
        self.reconstruct().equals(&build_r(self.n))
    }

    /// Σ_j b[j] q^(−j), minus the residue of R_n at infinity.
    pub fn residue_sum(&self) -> RatFunc {
        self.b.iter().enumerate().fold(RatFunc::zero(), |acc, (j, b)| acc.add(&b.mul(&RatFunc::q_pow(-(j as i64)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_zero() {
        let k = zeta3_partial_fractions(0).unwrap();
        assert_eq!(k.a, vec![RatFunc::one()]);
        assert!(k.b[0].is_zero());
    }

    #[test]
    fn kernel_matches_pochhammer_form() {
        for n in 0..=4 {
            assert!(kernel(n).to_tratfunc(&Symbolic).equals(&build_r(n)), "n={n}");
        }
    }

    #[test]
    fn small_identities() {
        for n in 0..=5 {
            let k = zeta3_partial_fractions(n).unwrap();
            assert!(k.reconstruction_holds(), "n={n}");
            assert!(k.residue_sum().is_zero(), "n={n}");
        }
    }
}
