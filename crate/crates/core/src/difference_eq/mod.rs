//! The operators `℘: Z ↦ Z - Z^{(1)}` and `℘_r`, their inversion by Artin–Schreier
//! solves, and the Carlitz trivialization `Ω`.

mod newton;
mod omega;
mod solve;
mod wp;
#[cfg(test)]
mod tests;

pub use newton::{newton_polygon, Edge, NewtonPolygonData};
pub use omega::{omega_series, psi_rank1, validate_psi};
pub use solve::{solve_artin_schreier, solve_artin_schreier_traced, AsSolution, AsStep, BranchPolicy, StepKind};
pub use wp::{l0_series, wp, wp_inverse, wp_r};
