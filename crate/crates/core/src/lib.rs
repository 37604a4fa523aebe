//! Exact densities of blow-up constructions, metaheuristic search over graph
//! and Cayley-graph spaces, and exact verification of flag-algebra
//! certificates and related combinatorial bounds.

pub mod error;
pub mod flags;
pub mod ap;
pub mod blowup;
pub mod graphs;
pub mod rational;
pub mod region;
pub mod search;
pub mod stability;
pub mod xorprod;

pub use error::{Error, Result};
pub use graphs::Graph;
pub use rational::Rational;
