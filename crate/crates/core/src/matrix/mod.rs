//! Matrices over the coefficient rings and the named elements used in the
//! separation arguments.

mod commutator;
mod mat;
mod witness;

pub use commutator::{elem_as_commutator, elem_as_commutator_sl2, CommutatorWord};
pub use mat::Mat;
pub use witness::{trace_power, witness_x};
