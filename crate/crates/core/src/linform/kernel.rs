//! Partial fractions of kernels whose poles sit at T = q^(−j), computed over
//! any exact field that contains q: ℚ(q) itself or ℚ after substituting q = q0.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::rat::rat_pow;
use crate::arith::{series_div, Field, Rat, RatFunc, Ring, TPoly, TRatFunc};
use crate::error::{Error, Result};

/// Exact scalars containing q, with the operations the pole engine needs.
pub trait QField: Sync {
    type F: Field;

    /// q^e.
    fn q_pow(&self, e: i64) -> Self::F;

    /// x / (1 − q^m)^s for m ≥ 1.
    fn div_one_minus_q_pow(&self, x: &Self::F, m: u32, s: u32) -> Result<Self::F>;
}

/// ℚ(q) with elements stored as [`RatFunc`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl QField for Symbolic {
    type F = RatFunc;

    fn q_pow(&self, e: i64) -> RatFunc {
        RatFunc::q_pow(e)
    }

    fn div_one_minus_q_pow(&self, x: &RatFunc, m: u32, s: u32) -> Result<RatFunc> {
        Ok(x.div_one_minus_q_pow(m, s))
    }
}

/// ℚ with q specialized to a rational q0 ∉ {0, 1, −1}.
#[derive(Clone, Debug)]
pub struct AtPoint {
    q0: Rat,
}

impl AtPoint {
    pub fn new(q0: Rat) -> Result<Self> {
        if Zero::is_zero(&q0) || One::is_one(&num_traits::Signed::abs(&q0)) {
            return Err(Error::InvalidParams("q0 must avoid 0 and ±1".into()));
        }
        Ok(AtPoint { q0 })
    }

    pub fn q0(&self) -> &Rat {
        &self.q0
    }
}

impl QField for AtPoint {
    type F = Rat;

    fn q_pow(&self, e: i64) -> Rat {
        rat_pow(&self.q0, e)
    }

    fn div_one_minus_q_pow(&self, x: &Rat, m: u32, s: u32) -> Result<Rat> {
        let f = <Rat as One>::one() - rat_pow(&self.q0, m as i64);
        Ok(x / rat_pow(&f, s as i64))
    }
}

/// The rational function
///
/// K(T) = Π_{i ∈ scalar}(1 − q^i) · T^t · Π_{i ∈ linear}(1 − q^i T) / Π_{j=0}^{n}(1 − q^j T)^mult.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleKernel {
    pub scalar: Vec<i64>,
    pub linear: Vec<i64>,
    pub t_power: usize,
    pub n: usize,
    pub mult: usize,
}

impl PoleKernel {
    /// Degree in T of the numerator minus that of the denominator.
    pub fn degree_gap(&self) -> i64 {
        (self.linear.len() + self.t_power) as i64 - ((self.n + 1) * self.mult) as i64
    }

    pub fn scalar_value<Q: QField>(&self, ctx: &Q) -> Q::F {
        self.scalar.iter().fold(Q::F::one(), |acc, &i| acc.mul(&Q::F::one().sub(&ctx.q_pow(i))))
    }

    /// T^t · Π(1 − q^i T), without the scalar prefactor.
    pub fn t_numerator<Q: QField>(&self, ctx: &Q) -> TPoly<Q::F> {
        let mut p = TPoly::monomial(self.t_power, Q::F::one());
        for &i in &self.linear {
            p = p.mul_one_minus(&ctx.q_pow(i));
        }
        p
    }

    pub fn denominator<Q: QField>(&self, ctx: &Q) -> TPoly<Q::F> {
        let mut p = TPoly::one();
        for j in 0..=self.n as i64 {
            let a = ctx.q_pow(j);
            for _ in 0..self.mult {
                p = p.mul_one_minus(&a);
            }
        }
        p
    }

    pub fn to_tratfunc<Q: QField>(&self, ctx: &Q) -> TRatFunc<Q::F> {
        let num = self.t_numerator(ctx).scale(&self.scalar_value(ctx));
        TRatFunc::new(num, self.denominator(ctx))
    }
}

/// Pole coefficients indexed `[s][j]` with 1 ≤ s ≤ mult, 0 ≤ j ≤ n (row 0 is zero).
///
/// `c[s][j]` is the coefficient of (T − q^(−j))^(−s) and `d[s][j] = (−1)^s q^(js) c[s][j]`
/// the coefficient of (1 − q^j T)^(−s).
#[derive(Clone, Debug, PartialEq)]
pub struct PoleExpansion<F> {
    pub n: usize,
    pub mult: usize,
    pub c: Vec<Vec<F>>,
    pub d: Vec<Vec<F>>,
}

impl<F: Field> PoleExpansion<F> {
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Sync) -> PoleExpansion<G>
    where
        F: Sync,
    {
        let conv = |rows: &Vec<Vec<F>>| rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        PoleExpansion { n: self.n, mult: self.mult, c: conv(&self.c), d: conv(&self.d) }
    }

    /// Σ_{s,j} d[s][j] / (1 − q^j T)^s over the common denominator of `kernel`.
    pub fn reconstruct<Q: QField<F = F>>(&self, ctx: &Q, kernel: &PoleKernel) -> TRatFunc<F> {
        let full = kernel.denominator(ctx);
        let mut num = TPoly::zero();
        for j in 0..=self.n {
            let a = ctx.q_pow(j as i64);
            let mut rest = full.clone();
            for _ in 0..self.mult {
                rest = rest.div_one_minus(&a).expect("pole factor divides the denominator");
            }
            // rest·(1 − aT)^(mult − s) for s = mult down to 1.
            let mut term = rest;
            for s in (1..=self.mult).rev() {
                num = num.add(&term.scale(&self.d[s][j]));
                term = term.mul_one_minus(&a);
            }
        }
        TRatFunc::new(num, full)
    }
}

/// Exact partial fractions of `kernel` by shifted Taylor expansion at every pole.
pub fn pole_expansion<Q: QField>(ctx: &Q, kernel: &PoleKernel) -> Result<PoleExpansion<Q::F>> {
    assert!(kernel.degree_gap() < 0, "kernel must be a proper rational function in T");
    let mult = kernel.mult;
    let order = mult - 1;
    let num = kernel.t_numerator(ctx);
    let full = kernel.denominator(ctx);
    let scalar = kernel.scalar_value(ctx);
    let sign = if mult.is_multiple_of(2) { Q::F::one() } else { Q::F::one().neg() };

    let columns: Vec<Vec<Q::F>> = (0..=kernel.n)
        .into_par_iter()
        .map(|j| -> Result<Vec<Q::F>> {
            let a = ctx.q_pow(j as i64);
            let center = ctx.q_pow(-(j as i64));
            let mut rest = full.clone();
            for _ in 0..mult {
                rest = rest.div_one_minus(&a).ok_or(Error::PoleOrderMismatch)?;
            }
            let top = num.shift_coeffs(&center, order);
            let bottom = rest.shift_coeffs(&center, order);
            let t = series_div(&top, &bottom, order)?;
            // (1 − q^j T)^mult = (−q^j)^mult (T − q^(−j))^mult.
            let factor = scalar.mul(&sign).mul(&ctx.q_pow(-((j * mult) as i64)));
            Ok((0..=mult).map(|s| if s == 0 { Q::F::zero() } else { t[mult - s].mul(&factor) }).collect())
        })
        .collect::<Result<_>>()?;

    let mut c = vec![vec![Q::F::zero(); kernel.n + 1]; mult + 1];
    let mut d = c.clone();
    for (j, col) in columns.into_iter().enumerate() {
        for (s, v) in col.into_iter().enumerate().skip(1) {
            let mut w = v.mul(&ctx.q_pow((j * s) as i64));
            if s % 2 == 1 {
                w = w.neg();
            }
            d[s][j] = w;
            c[s][j] = v;
        }
    }
    Ok(PoleExpansion { n: kernel.n, mult, c, d })
}
