//! Exact knot invariants and certificates for positive knots.

pub mod certify;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod polyalg;
pub mod seifert;

pub use error::{KnotError, Result};
