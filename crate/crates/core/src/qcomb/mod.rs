//! q-Pochhammer symbols, q-binomials, cyclotomic polynomials and d_n(q),
//! Stirling numbers of the first kind, the α coefficients and Bernoulli
//! numbers. Tables are memoized and grow on demand.

pub mod cyclotomic;
pub mod pochhammer;
pub mod tables;

pub use cyclotomic::{cyclotomic, d_n, d_n_at, CycloCache};
pub use pochhammer::{qbinomial, qfactorial, qpoch, qpoch_t, QBase};
pub use tables::{alpha, bernoulli, stirling_first, StirlingTable};
