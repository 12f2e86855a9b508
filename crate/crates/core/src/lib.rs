//! Exact computations in matrix groups over `F_q[t]` and `F_q[t, t^-1]`:
//! automorphisms, amalgam normal forms and twisted-conjugacy certificates.

pub mod amalgam;
pub mod automorphism;
pub mod error;
pub mod gl2;
pub mod matrix;
pub mod parse;
pub mod random;
pub mod ring;
pub mod twisted;
pub mod wire;

pub use error::{Error, Result};
