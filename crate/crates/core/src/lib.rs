//! Exact and numerical tools for the Painleve equations: parameter
//! classification, Backlund transformations and adaptive integration.

pub mod backlund;
pub mod classify;
pub mod diffpoly;
pub mod equations;
pub mod manifest;
pub mod error;
pub mod numeric;
pub mod parse;
pub mod scalars;
pub mod sweep;

pub use error::{Error, Result};
