//! The q-Ball and q-BGN series, their decomposition in 1 and ζ_q(3), and the denominator probe.

pub mod dbar;
pub mod form;
pub mod kernel;
pub mod series;

pub use dbar::{dbar_for, dbar_probe, DbarReport, DbarRow};
pub use form::{zeta3_form, zeta3_form_from, zeta3_residual, Zeta3Form, Zeta3Residual};
pub use kernel::{zeta3_partial_fractions, Zeta3Kernel};
pub use series::{bgn_derivative_at, bgn_sum, bgn_summand_at, classical_ball, qball_numeric, qbgn_numeric};
