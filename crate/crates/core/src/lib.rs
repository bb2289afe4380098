pub mod cli;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod maps;
pub mod scalars;
pub mod verifier;

pub use error::{Error, Result};
