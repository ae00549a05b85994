//! Finite fields `F_q ⊂ F_{q^s}`, polynomials over `F_q`, and residue Artin–Schreier solving.

pub mod artin_schreier;
pub mod expr;
pub mod field;
pub mod poly;

pub use artin_schreier::{residue_artin_schreier, residue_artin_schreier_all};
pub use expr::parse_theta_rational;
pub use field::{FieldConfig, FiniteField, Fq};
pub use poly::{CoeffPoly, ThetaRational, Var};
