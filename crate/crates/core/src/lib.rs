//! Quasi-twisted codes over finite fields: spectral structure and
//! minimum-distance bounds.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod exponents;
pub mod galois;
pub mod linalg;
pub mod polyring;
pub mod qtstruct;

pub use error::{Error, Result};
