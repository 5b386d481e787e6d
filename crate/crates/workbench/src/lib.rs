//! Generators, experiment harness and report types around the `localdom`
//! algorithms.

pub mod error;
pub mod experiment;
pub mod generators;
pub mod report;
pub mod sets;

pub use error::{Error, Result};
