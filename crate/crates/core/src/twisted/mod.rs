//! Twisted conjugacy: the action `g.x = g x φ(g^-1)`, orbit-product
//! invariants, separation certificates and bounded orbit search.

mod bfs;
mod certificate;
mod det;
mod map;

pub use bfs::{bounded_orbit_bfs, default_generators, OrbitBall};
pub use certificate::{certify_h0, certify_separation, example_map, CaseTag, H0Params, TraceCertificate, Verdict};
pub use det::{det_subgroup_member, torsion_part, DetSubgroup};
pub use map::{orbit_invariant, orbit_product, twist_act, GroupMap};
