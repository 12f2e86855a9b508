//! Coefficient rings: `F_q`, `F_q[t]`, `F_q[t, t^-1]` and their automorphisms.

pub mod aut;
pub mod elem;
pub mod field;
pub mod invariant;

pub use aut::RingAut;
pub use elem::{Flavor, RingElem};
pub use field::{FieldSpec, FqElem};
pub use invariant::{eval_in_s, s_expansion, special_s};
