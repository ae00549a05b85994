//! Drinfeld modules over `F_q[θ]`, their exponential and logarithm, and the `t`-frame.

mod frame;
mod module;
mod series;
#[cfg(test)]
mod tests;

pub use frame::{
    anderson_exp_check, phi_e_inverse, phi_e_matrix, phi_e_matrix_rational, r_matrices, script_e0, AndersonReport,
    SigmaPoly, SIGMA_DEGREE_CAP,
};
pub use module::{apply_skew, phi_of, DrinfeldModule, SkewPoly};
pub use series::{exp_coeffs, log_coeffs, radius_estimate, FqLinearSeries, RadiusEstimate};
