//! Exact arithmetic for generic affine Hecke algebras of based root data.

pub mod coeffs;
pub mod error;
pub mod gln;
pub mod hecke;
pub mod modules;
pub mod rootdata;
pub mod suites;

pub use error::{Error, Result};
