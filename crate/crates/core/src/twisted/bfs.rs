use std::collections::BTreeMap;

use rayon::prelude::*;

use super::map::GroupMap;
use crate::automorphism::Group;
use crate::error::Result;
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, RingElem};

/// A finite piece of a twisted conjugacy class, keyed by canonical bytes.
#[derive(Clone, Debug, Default)]
pub struct OrbitBall {
    members: BTreeMap<Vec<u8>, Mat>,
}

impl OrbitBall {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.members.contains_key(&m.key_bytes())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Mat> {
        self.members.values()
    }

    /// Number of shared members.
    pub fn intersection_size(&self, other: &OrbitBall) -> usize {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.members.keys().filter(|k| big.members.contains_key(*k)).count()
    }
}

/// Every `w.x` for words `w` of length `<= radius` in the generators and
/// their inverses.
pub fn bounded_orbit_bfs(phi: &GroupMap, x: &Mat, generators: &[Mat], radius: usize) -> Result<OrbitBall> {
    // Each letter g acts as y ↦ g y φ(g^-1).
    let mut letters = Vec::with_capacity(2 * generators.len());
    for g in generators {
        let gi = g.inverse()?;
        letters.push((g.clone(), phi.apply(&gi)?));
        letters.push((gi, phi.apply(g)?));
    }
    let mut ball = OrbitBall::default();
    ball.members.insert(x.key_bytes(), x.clone());
    let mut frontier = vec![x.clone()];
    for _ in 0..radius {
        let found: Vec<Mat> = frontier
            .par_iter()
            .flat_map_iter(|y| letters.iter().map(move |(g, pg)| &(g * y) * pg))
            .collect();
        let mut next = Vec::new();
        for m in found {
            let k = m.key_bytes();
            if !ball.members.contains_key(&k) {
                ball.members.insert(k, m.clone());
                next.push(m);
            }
        }
        frontier = next;
    }
    Ok(ball)
}

/// `GL_n(F_q)` generators together with `e12(t)` and, over the Laurent
/// ring, `δ(t, 1, ...)` (or `δ(t, t^-1, 1, ...)` for `SL`).
pub fn default_generators(field: &FieldSpec, flavor: Flavor, n: usize, group: Group) -> Vec<Mat> {
    let one = RingElem::one(field, flavor);
    let w = RingElem::constant(&field.generator(), flavor);
    let t = RingElem::t(field, flavor);
    let mut out = Vec::new();
    for i in 1..n {
        out.push(Mat::elementary(i, i + 1, &one, n).unwrap());
        out.push(Mat::elementary(i + 1, i, &one, n).unwrap());
    }
    if field.e() > 1 {
        out.push(Mat::elementary(1, 2, &w, n).unwrap());
    }
    let diag = |a: &RingElem, b: &RingElem| {
        let mut d = vec![one.clone(); n];
        d[0] = a.clone();
        d[1] = b.clone();
        Mat::diagonal(&d).unwrap()
    };
    if field.q() > 2 {
        match group {
            Group::GL => out.push(diag(&w, &one)),
            Group::SL => out.push(diag(&w, &w.inverse().unwrap())),
        }
    }
    out.push(Mat::elementary(1, 2, &t, n).unwrap());
    if flavor == Flavor::Laurent {
        match group {
            Group::GL => out.push(diag(&t, &one)),
            Group::SL => out.push(diag(&t, &t.inverse().unwrap())),
        }
    }
    out
}
