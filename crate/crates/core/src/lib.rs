//! Covariant free open bosonic string: exact Fock and Virasoro algebra, DDF
//! operators, no-ghost scans, and compactly supported test functions with a
//! numerical locality check for the second-quantized field.

pub mod cli;
pub mod ddf;
pub mod error;
pub mod fiber;
pub mod field;
pub mod fock;
pub mod linalg;
pub mod poly;
pub mod profile;
pub mod rational;
pub mod scalar;
pub mod spectrum;
pub mod testfn;

pub use error::{Error, Result};
pub use rational::Rational;
