//! Exact rational, Laurent-polynomial and rational-function arithmetic in
//! u = q^(1/2), polynomials in an auxiliary variable, and high-precision
//! floating point with certified series summation.

pub mod bigfloat;
pub mod cyclo;
pub mod rat;
pub mod ratfunc;
pub mod ring;
pub mod sum;
pub mod tpoly;
pub mod upoly;

pub use bigfloat::BigFloat;
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
pub use ratfunc::RatFunc;
pub use ring::{Field, Ring};
pub use sum::{sum_with_tail, sum_with_tail_by, TailConfig, TailSum};
pub use tpoly::{series_div, tpoly_series_shift, TPoly, TRatFunc};
pub use upoly::UPoly;
