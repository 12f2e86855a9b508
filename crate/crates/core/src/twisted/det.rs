use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, RingElem};

/// A subgroup `D` of `R^×`, stored as the lattice of pairs
/// `(log λ, k)` for `λ t^k in D`, in Hermite normal form:
/// `{(a, b) : g | b, a - (b/g) x1 ≡ 0 mod x2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSubgroup {
    field: FieldSpec,
    flavor: Flavor,
    pub generators: Vec<RingElem>,
    /// Generator of the projection to the `t`-exponent (0 if trivial).
    g: i64,
    /// Discrete log of the `F^×` part paired with `t^g`.
    x1: i64,
    /// `D0 = <ω^x2>`, `x2 | q - 1`.
    x2: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

fn log(field: &FieldSpec, l: &crate::ring::FqElem) -> i64 {
    let w = field.generator();
    let mut acc = field.one();
    for k in 0..field.q() as i64 - 1 {
        if acc == *l {
            return k;
        }
        acc = acc.mul(&w);
    }
    unreachable!("nonzero field element has a discrete log")
}

impl DetSubgroup {
    pub fn new(field: &FieldSpec, flavor: Flavor, generators: Vec<RingElem>) -> Result<Self> {
        let m = field.q() as i64 - 1;
        let mut rows: Vec<(i64, i64)> = Vec::new();
        for u in &generators {
            if u.field() != field || u.flavor() != flavor {
                return Err(Error::FieldMismatch);
            }
            let (l, k) = u.unit_decompose().ok_or_else(|| Error::Precondition(format!("{u} is not a unit")))?;
            rows.push((log(field, &l), k));
        }
        // Euclid on the t-exponent column.
        let (mut g, mut x1) = (0i64, 0i64);
        let mut zero_col: Vec<i64> = vec![m];
        for (a, b) in rows {
            if b == 0 {
                zero_col.push(a);
                continue;
            }
            if g == 0 {
                (g, x1) = (b, a);
                if g < 0 {
                    (g, x1) = (-g, -x1);
                }
                continue;
            }
            let (d, s, t) = ext_gcd(g, b);
            let na = s * x1 + t * a;
            // The combination killing the exponent column.
            zero_col.push((b / d) * x1 - (g / d) * a);
            (g, x1) = (d, na);
        }
        let x2 = zero_col.iter().fold(0, |acc, &v| gcd(acc, v));
        let x1 = if g == 0 { 0 } else { x1.rem_euclid(x2) };
        Ok(Self { field: field.clone(), flavor, generators, g, x1, x2 })
    }

    pub fn contains_unit(&self, u: &RingElem) -> bool {
        let Some((l, k)) = u.unit_decompose() else { return false };
        if self.flavor == Flavor::Poly && k != 0 {
            return false;
        }
        let a = log(&self.field, &l);
        if self.g == 0 {
            return k == 0 && a % self.x2 == 0;
        }
        k % self.g == 0 && (a - (k / self.g) * self.x1).rem_euclid(self.x2) == 0
    }

    /// Order of the torsion part `D0`.
    pub fn torsion_order(&self) -> i64 {
        (self.field.q() as i64 - 1) / self.x2
    }
}

/// `det(g) in D`.
pub fn det_subgroup_member(d: &DetSubgroup, g: &Mat) -> bool {
    d.contains_unit(&g.det())
}

/// `D0 = D ∩ F^×`.
pub fn torsion_part(d: &DetSubgroup) -> DetSubgroup {
    let w = d.field.generator().pow(d.x2);
    let gen = RingElem::constant(&w, d.flavor);
    DetSubgroup::new(&d.field, d.flavor, vec![gen]).unwrap()
}
