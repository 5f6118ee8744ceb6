//! Exact-arithmetic machinery for the metric s-t path TSP.
//!
//! Everything numeric is an arbitrary-precision rational: LP values, edge
//! costs, sampling probabilities, certificate ledgers. There is no floating
//! point anywhere on the certification path, so every claimed inequality is
//! a binary pass/fail.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! instance --(lp)--> relaxation optimum x*
//!          --(decomp)--> convex combination of spanning trees
//!          --(narrow)--> narrow-cut chain + fractional T-join certificates
//!          --(christofides)--> Hamiltonian s-t paths with cost guarantees
//!          --(transform)--> partition-LP bridges, splitting, integral oracles
//!          --(corpus)--> built-in instances and the full verification suite
//! ```
//!
//! See the `examples/` directory for one runnable walkthrough per capability.

pub mod christofides;
pub mod corpus;
pub mod decomp;
pub mod instance;
pub mod lp;
pub mod narrow;
pub mod rational;
pub mod transform;

mod linalg;

pub use instance::{Cut, EdgeVector, Instance, Partition};
pub use rational::{rat, Rational};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not connected")]
    NotConnected,

    #[error("{0}")]
    InvalidInput(String),

    #[error("instance too large for L.P.4 enumeration; use equivalence route")]
    Lp4TooLarge,

    #[error("spanning tree enumeration limit exceeded: matrix-tree count is {count}")]
    TreeLimit { count: String },

    #[error("vector violates {constraint}")]
    OutsidePolytope { constraint: String },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
