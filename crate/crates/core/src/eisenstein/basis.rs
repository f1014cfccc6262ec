//! Exact expression of a weight-w expansion in the monomials E_4^a E_6^b, 4a + 6b = w.

use num_traits::{One, Zero};
use serde::Serialize;

use super::expansion::{eisenstein_expansion, QExpansion};
use crate::arith::{BigFloat, Rat};
use crate::error::{Error, Result};
use crate::qcomb::bernoulli;

/// The pairs (a, b) with 4a + 6b = w, ordered by increasing b.
pub fn monomial_pairs(weight: u32) -> Vec<(u32, u32)> {
    (0..=weight / 6).filter(|b| (weight - 6 * b).is_multiple_of(4)).map(|b| ((weight - 6 * b) / 4, b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisTerm {
    pub a: u32,
    pub b: u32,
    #[serde(with = "crate::arith::rat::serde_rat")]
    pub c: Rat,
}

/// Σ c_(a,b) E_4^a E_6^b, solved on coefficients 0..=N_solve and checked up to `verified_to`.
#[derive(Clone, Debug, Serialize)]
pub struct BasisExpression {
    pub weight: u32,
    pub basis: Vec<BasisTerm>,
    pub solved_on: usize,
    pub verified_to: usize,
    /// Indices k ≤ `verified_to` where the expression and the target differ.
    pub mismatches: Vec<usize>,
}

impl BasisExpression {
    pub fn exact(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// The expression as a truncated expansion.
    pub fn expansion(&self, order: usize) -> Result<QExpansion> {
        let e4 = eisenstein_expansion(2, order)?;
        let e6 = eisenstein_expansion(3, order)?;
        let mut acc = QExpansion::new(self.weight, vec![Rat::zero(); order + 1]);
        for t in &self.basis {
            acc = acc.add(&e4.pow(t.a).mul(&e6.pow(t.b)).scale(&t.c));
        }
        Ok(acc)
    }
}

/// Solves Σ c_(a,b) E_4^a E_6^b = target on coefficients 0..=n_solve, then compares up to n_verify.
///
/// The smallest admissible n_solve is the number of monomials minus one (a square system).
pub fn express_in_e4_e6(weight: u32, target: &QExpansion, n_solve: usize, n_verify: usize) -> Result<BasisExpression> {
    if weight < 4 || !weight.is_multiple_of(2) {
        return Err(Error::InvalidParams("weight must be even and >= 4".into()));
    }
    let pairs = monomial_pairs(weight);
    if pairs.is_empty() {
        return Err(Error::InvalidParams(format!("no monomial E_4^a E_6^b of weight {weight}")));
    }
    if n_solve + 1 < pairs.len() || n_verify <= n_solve {
        return Err(Error::InvalidParams("need N_verify > N_solve and N_solve + 1 >= number of monomials".into()));
    }
    if target.order() < n_verify {
        return Err(Error::InvalidParams("target expansion shorter than N_verify".into()));
    }
    let e4 = eisenstein_expansion(2, n_verify)?;
    let e6 = eisenstein_expansion(3, n_verify)?;
    let cols: Vec<QExpansion> = pairs.iter().map(|&(a, b)| e4.pow(a).mul(&e6.pow(b))).collect();
    let rows: Vec<Vec<Rat>> = (0..=n_solve)
        .map(|k| cols.iter().map(|c| c.coeffs[k].clone()).chain(std::iter::once(target.coeffs[k].clone())).collect())
        .collect();
    let sol = solve_exact(rows, pairs.len())?;
    let mismatches = (0..=n_verify)
        .filter(|&k| {
            let v: Rat = cols.iter().zip(&sol).map(|(c, x)| &c.coeffs[k] * x).sum();
            v != target.coeffs[k]
        })
        .collect();
    Ok(BasisExpression {
        weight,
        basis: pairs.iter().zip(sol).map(|(&(a, b), c)| BasisTerm { a, b, c }).collect(),
        solved_on: n_solve,
        verified_to: n_verify,
        mismatches,
    })
}

/// Gauss–Jordan elimination on an augmented system with `vars` unknowns; demands full column rank and consistency.
fn solve_exact(mut m: Vec<Vec<Rat>>, vars: usize) -> Result<Vec<Rat>> {
    let mut row = 0;
    for col in 0..vars {
        let piv = (row..m.len()).find(|&r| !m[r][col].is_zero()).ok_or_else(|| {
            Error::InconsistentSystem(format!("monomial {col} is not determined by the solved coefficients"))
        })?;
        m.swap(row, piv);
        let p = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= &p;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        row += 1;
    }
    if m[row..].iter().any(|r| !r[vars].is_zero()) {
        return Err(Error::InconsistentSystem("target is not in the span of the monomials".into()));
    }
    Ok((0..vars).map(|i| m[i][vars].clone()).collect())
}

/// ζ_q(w) = B_w/(2w) − (B_w/(2w)) Σ c_(a,b) E_4^a E_6^b.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaQExpression {
    pub weight: u32,
    #[serde(with = "crate::arith::rat::serde_rat")]
    pub constant: Rat,
    pub basis: Vec<BasisTerm>,
    pub verified_to: usize,
    pub exact: bool,
}

impl ZetaQExpression {
    /// Value at q0 with E_4, E_6 replaced by their expansions truncated at `order`.
    pub fn eval_truncated(&self, q0: &Rat, order: usize, prec: usize) -> Result<BigFloat> {
        let e4 = eisenstein_expansion(2, order)?.eval_truncated(q0, prec);
        let e6 = eisenstein_expansion(3, order)?.eval_truncated(q0, prec);
        let mut acc = BigFloat::from_rat(&self.constant, prec);
        for t in &self.basis {
            let m = e4.powi(t.a as i64).mul(&e6.powi(t.b as i64));
            acc = acc.add(&m.mul_rat(&t.c));
        }
        Ok(acc)
    }
}

/// ζ_q(w) for even w ≥ 4 in the E_4/E_6 monomial basis, verified on `extra` coefficients past the solved ones.
pub fn zetaq_even_in_basis(w: u32, extra: usize) -> Result<ZetaQExpression> {
    if w < 4 || !w.is_multiple_of(2) {
        return Err(Error::InvalidParams("w must be even and >= 4".into()));
    }
    let n_solve = monomial_pairs(w).len().saturating_sub(1);
    let n_verify = n_solve + extra.max(1);
    let target = eisenstein_expansion(w / 2, n_verify)?;
    let expr = express_in_e4_e6(w, &target, n_solve, n_verify)?;
    let k = bernoulli(w as usize) / Rat::from_integer((2 * w).into());
    Ok(ZetaQExpression {
        weight: w,
        constant: k.clone(),
        basis: expr.basis.iter().map(|t| BasisTerm { a: t.a, b: t.b, c: -(&k * &t.c) }).collect(),
        verified_to: expr.verified_to,
        exact: expr.exact(),
    })
}

/// Checks the reconstruction Σ c E_4^a E_6^b = 1 − (2w/B_w) ζ_q(w) coefficientwise up to `order`.
pub fn zetaq_expression_matches(expr: &ZetaQExpression, order: usize) -> Result<bool> {
    let e4 = eisenstein_expansion(2, order)?;
    let e6 = eisenstein_expansion(3, order)?;
    let mut acc = QExpansion::one(order).scale(&expr.constant);
    for t in &expr.basis {
        acc = acc.add(&e4.pow(t.a).mul(&e6.pow(t.b)).scale(&t.c));
    }
    let target = eisenstein_expansion(expr.weight / 2, order)?;
    let k = bernoulli(expr.weight as usize) / Rat::from_integer((2 * expr.weight).into());
    let zeta = target.sub(&QExpansion::one(order)).scale(&(-k));
    Ok(acc.coeffs == zeta.coeffs && <Rat as One>::is_one(&target.coeffs[0]))
}
