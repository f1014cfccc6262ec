//! R_n(T; q) and its exact partial-fraction table.

use serde::Serialize;

use super::kernel::{pole_expansion, AtPoint, PoleExpansion, PoleKernel, Symbolic};
use super::params::Params;
use crate::arith::{Rat, RatFunc, TPoly, TRatFunc};
use crate::error::Result;

/// R_n without the monomial q^(−(A−2r)n/4), which is u^(−half_gap).
pub fn kernel(p: &Params) -> PoleKernel {
    let n = p.n as i64;
    let rn = p.rn();
    let scalar = (0..p.a - 2 * p.r).flat_map(|_| 1..=n).collect();
    let linear = (-rn..0).chain(n + 1..=n + rn).collect();
    PoleKernel { scalar, linear, t_power: p.half_gap() as usize, n: p.n as usize, mult: p.a as usize }
}

/// R_n(T; q) exactly, with coefficients in ℚ(u).
pub fn build_r(p: &Params) -> TRatFunc<RatFunc> {
    let k = kernel(p);
    let r = k.to_tratfunc(&Symbolic);
    assert_eq!(r.degree_gap(), Some(-(p.a as i64) - p.half_gap()), "degree gap of R_n");
    let shift = -p.half_gap();
    TRatFunc::new(r.num.map(|c| c.mul_u_pow(shift)), r.den)
}

/// Partial fractions of R_n at q = q0, without the factor u^(−half_gap).
pub fn pole_table_at(p: &Params, ctx: &AtPoint) -> Result<PoleExpansion<Rat>> {
    pole_expansion(ctx, &kernel(p))
}

/// The exact table {d_{s,j}} and {c_{s,j}} of R_n.
#[derive(Clone, Debug, Serialize)]
pub struct PFTable {
    pub params: Params,
    /// `c[s][j]`, row s = 0 unused.
    pub c: Vec<Vec<RatFunc>>,
    /// `d[s][j] = (−1)^s q^(js) c[s][j]`.
    pub d: Vec<Vec<RatFunc>>,
}

/// Exact partial fractions of R_n(T; q).
pub fn partial_fractions(p: &Params) -> Result<PFTable> {
    let pe = pole_expansion(&Symbolic, &kernel(p))?;
    let shift = -p.half_gap();
    let pe = pe.map(|x| x.mul_u_pow(shift));
    Ok(PFTable { params: *p, c: pe.c, d: pe.d })
}

impl PFTable {
    pub fn expansion(&self) -> PoleExpansion<RatFunc> {
        PoleExpansion { n: self.params.n as usize, mult: self.params.a as usize, c: self.c.clone(), d: self.d.clone() }
    }

    pub fn d(&self, s: usize, j: usize) -> &RatFunc {
        &self.d[s][j]
    }

    pub fn c(&self, s: usize, j: usize) -> &RatFunc {
        &self.c[s][j]
    }

    /// Σ_{s,j} d[s][j]/(1 − q^j T)^s as a T-rational function.
    pub fn reconstruct(&self) -> TRatFunc<RatFunc> {
        self.expansion().reconstruct(&Symbolic, &kernel(&self.params))
    }

    /// The reconstruction identity against [`build_r`].
    pub fn reconstruction_holds(&self) -> bool {
        self.reconstruct().equals(&build_r(&self.params))
    }

    /// d[s][n−j](q) = d[s][j](1/q) for all s, j.
    pub fn symmetry_holds(&self) -> bool {
        let n = self.params.n as usize;
        (1..=self.params.a as usize).all(|s| (0..=n).all(|j| self.d[s][n - j] == self.d[s][j].subs_inv()))
    }
}

/// R_n(q^n T; 1/q) = R_n(T; q).
pub fn r_symmetry_holds(p: &Params) -> bool {
    let r = build_r(p);
    let n = p.n as i64;
    let tr = |poly: &TPoly<RatFunc>| {
        TPoly::new(
            poly.coeffs().iter().enumerate().map(|(i, c)| c.subs_inv().mul_u_pow(2 * n * i as i64)).collect(),
        )
    };
    TRatFunc::new(tr(&r.num), tr(&r.den)).equals(&r)
}
