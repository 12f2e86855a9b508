use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, FqElem, RingAut, RingElem};
use crate::twisted::GroupMap;

/// A label in the transversal `Φ̃0` of `Out(GL_2(F_q))`: `ρ^frob ∘ ε^contra`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phi0 {
    pub frob: u32,
    pub contra: bool,
}

impl Phi0 {
    pub const IDENTITY: Phi0 = Phi0 { frob: 0, contra: false };

    pub fn all(field: &FieldSpec) -> Vec<Phi0> {
        let mut out = Vec::new();
        for contra in [false, true] {
            for frob in 0..field.e() {
                out.push(Phi0 { frob, contra });
            }
        }
        out
    }

    /// `self ∘ other`; Frobenius and `ε` commute.
    pub fn compose(self, other: Phi0, field: &FieldSpec) -> Phi0 {
        Phi0 { frob: (self.frob + other.frob) % field.e(), contra: self.contra ^ other.contra }
    }

    /// Action on `T0`: Frobenius on both entries, then inversion for `ε`.
    pub fn apply_t0(self, h: &(FqElem, FqElem)) -> (FqElem, FqElem) {
        let f = |x: &FqElem| {
            let y = x.frobenius(self.frob);
            if self.contra {
                y.inv().unwrap()
            } else {
                y
            }
        };
        (f(&h.0), f(&h.1))
    }

    /// The automorphism of `GL_2` (any flavor) this label names, acting on constants.
    pub fn apply(self, m: &Mat) -> Result<Mat> {
        let x = if self.contra { m.inverse()?.transpose() } else { m.clone() };
        x.apply_ring_aut(&RingAut::frobenius(m.field(), m.flavor(), self.frob)?)
    }

    pub fn tag(self) -> String {
        match (self.frob, self.contra) {
            (0, false) => "id".into(),
            (0, true) => "eps".into(),
            (k, false) => format!("frob{k}"),
            (k, true) => format!("frob{k}-eps"),
        }
    }

    pub fn parse(s: &str, field: &FieldSpec) -> Result<Phi0> {
        let bad = || Error::Parse(format!("unknown phi0 tag '{s}' (expected id, eps, frobK, frobK-eps)"));
        let (body, contra) = match s.strip_suffix("-eps") {
            Some(b) => (b, true),
            None if s == "eps" => ("id", true),
            None => (s, false),
        };
        let frob = match body {
            "id" => 0,
            _ => body.strip_prefix("frob").and_then(|k| k.parse::<u32>().ok()).ok_or_else(bad)?,
        };
        if frob >= field.e() {
            return Err(Error::Parse(format!("Frobenius exponent {frob} out of range for e = {}", field.e())));
        }
        Ok(Phi0 { frob, contra })
    }
}

/// The type `(h, ε, u^i)` of an automorphism of `GL_2(F_q[t, t^-1])`
/// stabilizing `G0` and `T`, together with its restriction label `φ0`.
///
/// Read as an element of `Γ = T0 ⋊ (Z2 × Z2 × Out(G0))`, the same record is a
/// `GammaElem`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutType {
    pub h: (FqElem, FqElem),
    pub eps: i8,
    pub i: u8,
    pub phi0: Phi0,
}

pub type GammaElem = AutType;

impl AutType {
    pub fn identity(field: &FieldSpec) -> Self {
        Self { h: (field.one(), field.one()), eps: 1, i: 0, phi0: Phi0::IDENTITY }
    }

    pub fn field(&self) -> &FieldSpec {
        self.h.0.field()
    }

    /// `φ(δ(t,1))` for an automorphism of this type.
    pub fn delta_image(&self) -> Mat {
        let f = self.field();
        let te = RingElem::t_pow(f, Flavor::Laurent, self.eps as i64).unwrap();
        let a = RingElem::constant(&self.h.0, Flavor::Laurent);
        let b = RingElem::constant(&self.h.1, Flavor::Laurent);
        if self.i == 0 {
            Mat::delta(&(&a * &te), &b)
        } else {
            Mat::delta(&a, &(&b * &te))
        }
    }

    pub fn label(&self) -> String {
        let i = if self.i == 0 { "1" } else { "u" };
        format!("(({:?},{:?}),{},{};{})", self.h.0, self.h.1, self.eps, i, self.phi0.tag())
    }
}

/// The type of `ψ ∘ φ` from the types of `ψ` and `φ`.
pub fn compose_types(psi: &AutType, phi: &AutType) -> AutType {
    let f = psi.field();
    let g = &psi.h;
    let mut x = if phi.eps == 1 { g.clone() } else { (g.0.inv().unwrap(), g.1.inv().unwrap()) };
    if phi.i == 1 {
        x = (x.1, x.0);
    }
    let ph = psi.phi0.apply_t0(&phi.h);
    AutType {
        h: (x.0.mul(&ph.0), x.1.mul(&ph.1)),
        eps: psi.eps * phi.eps,
        i: (psi.i + phi.i) % 2,
        phi0: psi.phi0.compose(phi.phi0, f),
    }
}

/// All elements of `Γ` in a fixed order.
pub fn gamma_elements(field: &FieldSpec) -> Vec<AutType> {
    let units: Vec<FqElem> = field.units().collect();
    let mut out = Vec::new();
    for phi0 in Phi0::all(field) {
        for eps in [1i8, -1] {
            for i in 0..2u8 {
                for a in &units {
                    for b in &units {
                        out.push(AutType { h: (a.clone(), b.clone()), eps, i, phi0 });
                    }
                }
            }
        }
    }
    out
}

/// The multiplication table of `Γ` under `compose_types`.
#[derive(Clone, Debug)]
pub struct GammaTable {
    pub elems: Vec<AutType>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    index: HashMap<AutType, usize>,
}

impl GammaTable {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, a: &AutType) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Exhaustive group axioms: closure is by construction; checks the
    /// identity, inverses and associativity.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.len();
        let e = self.identity;
        for a in 0..n {
            if self.table[e][a] != a || self.table[a][e] != a {
                return Err(Error::Invariant(format!("identity fails at {}", self.elems[a].label())));
            }
            if !(0..n).any(|b| self.table[a][b] == e && self.table[b][a] == e) {
                return Err(Error::Invariant(format!("{} has no inverse", self.elems[a].label())));
            }
        }
        let bad = (0..n).into_par_iter().find_any(|&a| {
            (0..n).any(|b| {
                let ab = self.table[a][b];
                (0..n).any(|c| self.table[ab][c] != self.table[a][self.table[b][c]])
            })
        });
        match bad {
            Some(a) => Err(Error::Invariant(format!("associativity fails at {}", self.elems[a].label()))),
            None => Ok(()),
        }
    }
}

pub fn gamma_group_build(field: &FieldSpec) -> Result<GammaTable> {
    let elems = gamma_elements(field);
    let index: HashMap<AutType, usize> = elems.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let table = elems
        .par_iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let c = compose_types(a, b);
                    index.get(&c).copied().ok_or_else(|| Error::Invariant(format!("product {} left Γ", c.label())))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let identity = index[&AutType::identity(field)];
    Ok(GammaTable { elems, table, identity, index })
}

/// Generators of `G0 = GL_2(F_q)`, as Laurent matrices.
pub fn g0_generators(field: &FieldSpec) -> Vec<Mat> {
    let fl = Flavor::Laurent;
    let one = RingElem::one(field, fl);
    let w = RingElem::constant(&field.generator(), fl);
    vec![Mat::e12(&one), Mat::e21(&one), Mat::delta(&w, &one), Mat::e12(&w)]
}

/// `δ(t, 1)`.
pub fn delta_t(field: &FieldSpec) -> Mat {
    let fl = Flavor::Laurent;
    Mat::delta(&RingElem::t(field, fl), &RingElem::one(field, fl))
}

/// Every element of `GL_2(F_q)`.
pub fn g0_elements(field: &FieldSpec) -> Vec<Mat> {
    let els: Vec<FqElem> = field.elements().collect();
    let mut out = Vec::new();
    for a in &els {
        for b in &els {
            for c in &els {
                for d in &els {
                    if !a.mul(d).sub(&b.mul(c)).is_zero() {
                        out.push(Mat::constant(field, Flavor::Laurent, 2, &[a.clone(), b.clone(), c.clone(), d.clone()]));
                    }
                }
            }
        }
    }
    out
}

fn unit_parts(x: &RingElem) -> Option<(FqElem, i64)> {
    x.unit_decompose()
}

/// Reads the type of `φ` from `φ(δ(t,1))` and its action on `G0`.
///
/// `φ0` is matched exactly against `Φ̃0` when possible, otherwise modulo
/// `Inn(G0)` by exhaustive search over `G0`.
pub fn type_of(phi: &GroupMap) -> Result<AutType> {
    let std = phi.as_std().ok_or_else(|| Error::NotTypeShaped("not a standard map".into()))?;
    if std.n() != 2 || std.flavor() != Flavor::Laurent {
        return Err(Error::NotTypeShaped("types are defined for GL_2(F_q[t,t^-1])".into()));
    }
    let field = std.field().clone();
    let fl = Flavor::Laurent;
    let one = RingElem::one(&field, fl);
    let w = RingElem::constant(&field.generator(), fl);
    let t = RingElem::t(&field, fl);
    for d in [Mat::delta(&one, &t), Mat::delta(&w, &one), Mat::delta(&one, &w)] {
        let img = phi.apply(&d)?;
        if img.n() != 2 || !img.get(0, 1).is_zero() || !img.get(1, 0).is_zero() {
            return Err(Error::NotTypeShaped(format!("image of {d} is not diagonal")));
        }
    }
    let img = phi.apply(&delta_t(&field))?;
    if !img.get(0, 1).is_zero() || !img.get(1, 0).is_zero() {
        return Err(Error::NotTypeShaped(format!("φ(δ(t,1)) = {img} is not diagonal")));
    }
    let (a, ea) = unit_parts(img.get(0, 0)).ok_or(Error::NotInvertible)?;
    let (b, eb) = unit_parts(img.get(1, 1)).ok_or(Error::NotInvertible)?;
    let (eps, i) = match (ea, eb) {
        (1 | -1, 0) => (ea as i8, 0u8),
        (0, 1 | -1) => (eb as i8, 1u8),
        _ => return Err(Error::NotTypeShaped(format!("φ(δ(t,1)) = {img}"))),
    };
    let phi0 = read_phi0(phi, &field)?;
    Ok(AutType { h: (a, b), eps, i, phi0 })
}

fn read_phi0(phi: &GroupMap, field: &FieldSpec) -> Result<Phi0> {
    let gens = g0_generators(field);
    let imgs = gens.iter().map(|g| phi.apply(g)).collect::<Result<Vec<_>>>()?;
    if !imgs.iter().all(|m| m.is_constant()) {
        return Err(Error::NotTypeShaped("φ does not stabilize G0".into()));
    }
    let labels = Phi0::all(field);
    let label_imgs: Vec<Vec<Mat>> =
        labels.iter().map(|l| gens.iter().map(|g| l.apply(g)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    for (l, li) in labels.iter().zip(&label_imgs) {
        if *li == imgs {
            return Ok(*l);
        }
    }
    let g0 = g0_elements(field);
    for (l, li) in labels.iter().zip(&label_imgs) {
        for g in &g0 {
            let gi = g.inverse()?;
            if li.iter().zip(&imgs).all(|(a, b)| &(g * a) * &gi == *b) {
                return Ok(*l);
            }
        }
    }
    Err(Error::NotTypeShaped("restriction to G0 is not in Φ̃0 modulo Inn(G0)".into()))
}
