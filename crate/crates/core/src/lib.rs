//! Constant-round LOCAL-model approximation of minimum dominating set.
//!
//! The crate provides the graph substrate, a deterministic LOCAL executor,
//! exact domination oracles, a planarity test, the 5-round planar
//! nomination algorithm and the error-tolerant generic composition built on
//! top of any uniform sub-algorithm.

pub mod domination;
pub mod error;
pub mod generic;
pub mod graph;
pub mod planar;
pub mod planarity;
pub mod runtime;

pub use error::{Error, Result};
pub use graph::{BallView, Graph, Vertex, VertexSet};
