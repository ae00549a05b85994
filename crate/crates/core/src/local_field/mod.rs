//! Truncated Laurent series over `F_{q^s}` approximating `C_∞`, with precision tracking.

pub mod elem;
pub mod field;
pub mod tower;

pub use elem::{WElem, WElemRecord};
pub use field::{WorkingField, DEFAULT_CAP};
