pub mod base_arith;
pub mod cli;
pub mod deformation;
pub mod difference_eq;
pub mod drinfeld_core;
pub mod error;
pub mod extended_log;
pub mod local_field;
pub mod tate_series;

pub use error::{Error, Result};
