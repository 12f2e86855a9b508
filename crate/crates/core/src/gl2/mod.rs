//! Automorphisms of `GL_2(F_q[t, t^-1])`: generator words, types, the group
//! `Γ` and realized automorphisms.

mod gens;
mod realized;
mod types;

pub use gens::{generator_decompose, GeneratorWord, Token};
pub use realized::{
    aut_order, build_realized_aut, decomposition_independent, fixed_subgroup_check, realized_family, Check, FixReport, OrderReport,
    RealizedAut,
};
pub use types::{
    compose_types, delta_t, g0_elements, g0_generators, gamma_elements, gamma_group_build, type_of, AutType, GammaElem, GammaTable, Phi0,
};
