//! Semantics and equivalence checking for weighted answer set programs.

pub mod aspgen;
pub mod classical;
pub mod cli;
pub mod delta;
pub mod equiv;
pub mod error;
pub mod formula;
pub mod gen;
pub mod ht;
pub mod lpmln;

pub use error::{Error, Result};
