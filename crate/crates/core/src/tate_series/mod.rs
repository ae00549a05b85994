//! Truncated elements and matrices of the Tate algebras `T` and `T_θ`.

pub mod elem;
pub mod mat;
pub mod rational;

pub use elem::{Disc, GaussNorm, TateElem, TateRecord, DEFAULT_TDEG};
pub use mat::{invert_w, TateMat};
pub use rational::{RatMat, RationalTate};

/// A row vector of Tate elements.
pub type TateVec = Vec<TateElem>;
