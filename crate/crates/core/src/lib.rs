//! Relative homological algebra over Z/m.

pub mod error;
pub mod brute;
pub mod classes;
pub mod cli;
pub mod complexes;
pub mod constructors;
pub mod corpus;
pub mod ext;
pub mod verifier;
pub mod zm;

pub use error::{Error, Result};
