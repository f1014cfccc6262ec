//! Linear forms in 1 and ζ_q(s): the kernel R_n(T; q), its partial fractions,
//! the coefficient forms P_s^[ε], numerical series and the denominators D_n.

pub mod denom;
pub mod forms;
pub mod kernel;
pub mod numeric;
pub mod params;
pub mod report;
pub mod table;

pub use denom::{check_forms, conjecture_probe, d_n_denominator, denominator_check, sharpness_probe, DenomVerdict};
pub use forms::{eps_forms, eps_indices, EpsForms};
pub use kernel::{pole_expansion, AtPoint, PoleExpansion, PoleKernel, QField, Symbolic};
pub use numeric::{s_eps_numeric, s_eps_scaled, s_tilde_numeric, s_z_scaled, u_power, zeta_q};
pub use params::{Eps, Params};
pub use report::{linear_form_report, report_from_forms, point_a_residual, LinearFormReport};
pub use table::{build_r, partial_fractions, PFTable};
