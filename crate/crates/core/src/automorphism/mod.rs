//! Standard automorphisms of `GL_n(R)` and `SL_n(R)`.

mod std_aut;

pub use std_aut::{homothety_injective, transversal_enumerate, Group, StdAut, UnitCharacter};
