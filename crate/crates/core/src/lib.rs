//! Subspace-invariant bounded-depth Boolean formulas over F2: exact
//! synthesis of invariant parity formulas, size lower-bound certificates
//! with an independent verifier, and brute-force ground truth at desk
//! scale.

pub mod acceptance;
pub mod bounds;
pub mod error;
pub mod f2;
pub mod formula;
pub mod graph;
mod numeric;
pub mod oracle;
mod parallel;
pub mod synthesis;

pub use error::{Error, Result};
