//! Eisenstein series, the E_4/E_6 monomial basis, and ζ_q at even arguments.

pub mod basis;
pub mod expansion;
pub mod limit;

pub use basis::{
    express_in_e4_e6, monomial_pairs, zetaq_even_in_basis, zetaq_expression_matches, BasisExpression, BasisTerm,
    ZetaQExpression,
};
pub use expansion::{eisenstein_expansion, sigma, QExpansion};
pub use limit::{q_limit_relative_error, zeta_even};
