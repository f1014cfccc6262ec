//! Exact and high-precision construction of q-analogue linear forms in the
//! values ζ_q(s), with the identities they satisfy checked both symbolically
//! and numerically.

pub mod arith;
pub mod asymptotics;
pub mod eisenstein;
pub mod error;
pub mod linform;
pub mod qcomb;
pub mod zeta3;

pub use error::{Error, Result};
