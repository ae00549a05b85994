//! The coefficients `B_n(t)` of the deformation series `𝓛_E(ξ; t) = sum B_n(t) ξ^{q^n}`.

mod partitions;
mod series;

pub use partitions::{count_compositions, enumerate_p_r_n, ShadowedPartition};
pub use series::{
    b_at_theta, b_series_direct, b_series_recursive, default_order, deformation_series, deformation_series_matrix,
    frobenius_inverse_phi_j, r_matrix, specialize_log,
};
