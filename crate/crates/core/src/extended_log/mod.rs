//! Analytic continuation of Drinfeld logarithms to the whole field, modulo periods.

pub mod driver;
pub mod ext;
pub mod lattice;
pub mod verify;

#[cfg(test)]
mod tests;

pub use driver::{run_in_tower, TowerLog};
pub use ext::{carlitz_kinfty_branch, exp_from_lattice_product, ext_le, ext_log, CosetValue, KInftyBranch, LogContext};
pub use lattice::{lattice_membership, period_lattice_from_psi, LatticeBasis, Membership, MembershipRecord};
pub use verify::{verify_functional_equation, verify_inside_radius, verify_inverse_of_exp, PsiSource, Setup, VerifyReport};
