//! Growth rates of the linear forms and the resulting dimension bound.

pub mod delta;
pub mod fit;
pub mod slopes;

pub use delta::{
    best_r, delta, delta_asymptotic_constant, delta_from_rates, nesterenko_bound, rate_coefficients,
    recombination_is_exact, DeltaConstant, PiLinear,
};
pub use fit::{fit_limit, relative_gap, SlopeEstimate, SlopePoint};
pub use slopes::{slope_d, slope_dn, slope_p, slope_p_multi, slope_s, PSample, PSlopeReport};
