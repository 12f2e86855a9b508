use crate::amalgam::{reiner_apply, ReinerMap};
use crate::automorphism::{Group, StdAut};
use crate::error::{Error, Result};
use crate::gl2::RealizedAut;
use crate::matrix::Mat;

/// An automorphism of a matrix group, as data that can be applied.
///
/// `Compose(vec![a, b, c])` is `a ∘ b ∘ c`: the rightmost map acts first.
#[derive(Clone, Debug)]
pub enum GroupMap {
    Std(StdAut),
    /// The Reiner automorphism of `GL_2(F[t])` or `SL_2(F[t])` extending `ν`.
    Reiner { nu: ReinerMap, group: Group },
    /// A closed-form automorphism of `GL_2(F_q[t, t^-1])` carrying its type.
    Realized(RealizedAut),
    Compose(Vec<GroupMap>),
}

impl GroupMap {
    pub fn apply(&self, m: &Mat) -> Result<Mat> {
        match self {
            GroupMap::Std(a) => a.apply(m),
            GroupMap::Reiner { nu, group } => reiner_apply(nu, m, *group),
            GroupMap::Realized(r) => r.aut().apply(m),
            GroupMap::Compose(parts) => {
                let mut x = m.clone();
                for p in parts.iter().rev() {
                    x = p.apply(&x)?;
                }
                Ok(x)
            }
        }
    }

    /// `self ∘ other`. Standard pieces are merged into one canonical map.
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        match (self, other) {
            (GroupMap::Realized(a), GroupMap::Realized(b)) => return Ok(GroupMap::Realized(a.compose(b)?)),
            (GroupMap::Std(_) | GroupMap::Realized(_), GroupMap::Std(_) | GroupMap::Realized(_)) => {
                let (a, b) = (self.as_std().unwrap(), other.as_std().unwrap());
                return Ok(GroupMap::Std(a.compose(&b)?));
            }
            _ => {}
        }
        let mut parts = Vec::new();
        for m in [self, other] {
            match m {
                GroupMap::Compose(ps) => parts.extend(ps.iter().cloned()),
                _ => parts.push(m.clone()),
            }
        }
        Ok(GroupMap::Compose(parts))
    }

    /// The map as a single standard automorphism, when it is one.
    pub fn as_std(&self) -> Option<StdAut> {
        match self {
            GroupMap::Std(a) => Some(a.clone()),
            GroupMap::Realized(r) => Some(r.aut().clone()),
            GroupMap::Reiner { .. } => None,
            GroupMap::Compose(parts) => {
                let mut it = parts.iter();
                let mut acc = it.next()?.as_std()?;
                for p in it {
                    acc = acc.compose(&p.as_std()?).ok()?;
                }
                Some(acc)
            }
        }
    }

    /// Least order `<= bound`, when it can be decided.
    pub fn order(&self, bound: u64, group: Group) -> Option<u64> {
        match self {
            GroupMap::Reiner { nu, .. } => nu.order(bound),
            _ => self.as_std()?.order(bound, group),
        }
    }
}

/// `g.x = g x φ(g^-1)`.
pub fn twist_act(phi: &GroupMap, g: &Mat, x: &Mat) -> Result<Mat> {
    let gi = g.inverse()?;
    Ok(&(g * x) * &phi.apply(&gi)?)
}

/// `prod_{0 <= j < len} φ^j(x)`, in order.
pub fn orbit_product(phi: &GroupMap, x: &Mat, len: u64) -> Result<Mat> {
    let mut acc = Mat::identity(x.field(), x.flavor(), x.n());
    let mut term = x.clone();
    for j in 0..len {
        acc = &acc * &term;
        if j + 1 < len {
            term = phi.apply(&term)?;
        }
    }
    Ok(acc)
}

/// The orbit product over the order `r` of `φ` (searched up to `bound`).
pub fn orbit_invariant(phi: &GroupMap, x: &Mat, bound: u64, group: Group) -> Result<Mat> {
    let r = phi
        .order(bound, group)
        .ok_or_else(|| Error::OrderBound(format!("no finite order found up to {bound}")))?;
    orbit_product(phi, x, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::ring::{FieldSpec, Flavor, RingAut, RingElem};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn contragredient_on_shear() {
        let f = FieldSpec::prime(3).unwrap();
        let phi = GroupMap::Std(StdAut::contragredient(&f, Flavor::Laurent, 2));
        let x = RingElem::from_ints(&f, Flavor::Laurent, -1, &[1, 0, 2]).unwrap();
        let g = Mat::e12(&x);
        let i = Mat::identity(&f, Flavor::Laurent, 2);
        let y = twist_act(&phi, &g, &i).unwrap();
        assert_eq!(y, &g * &phi.apply(&g.inverse().unwrap()).unwrap());
        assert_eq!(twist_act(&phi, &i, &g).unwrap(), g);
    }

    #[test]
    fn action_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = FieldSpec::of_order(4).unwrap();
        let rho = RingAut::new(Flavor::Laurent, 1, f.generator(), f.zero(), -1).unwrap();
        let phi = GroupMap::Std(StdAut::ring(&rho, 3).compose(&StdAut::contragredient(&f, Flavor::Laurent, 3)).unwrap());
        for _ in 0..20 {
            let g = random::gl(&mut rng, &f, Flavor::Laurent, 3, 2, false);
            let h = random::gl(&mut rng, &f, Flavor::Laurent, 3, 2, false);
            let x = random::gl(&mut rng, &f, Flavor::Laurent, 3, 2, false);
            let lhs = twist_act(&phi, &(&g * &h), &x).unwrap();
            let rhs = twist_act(&phi, &g, &twist_act(&phi, &h, &x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orbit_products() {
        let f = FieldSpec::prime(2).unwrap();
        let x = crate::matrix::witness_x(2, &f, Flavor::Laurent, 3).unwrap();
        let id = GroupMap::Std(StdAut::identity(&f, Flavor::Laurent, 3));
        assert_eq!(orbit_invariant(&id, &x, 4, Group::GL).unwrap(), x);
        let inv = GroupMap::Std(StdAut::ring(&RingAut::new(Flavor::Laurent, 0, f.one(), f.zero(), -1).unwrap(), 3));
        assert_eq!(orbit_invariant(&inv, &x, 4, Group::GL).unwrap(), x.pow(2).unwrap());
    }

    #[test]
    fn compose_flattens() {
        let f = FieldSpec::prime(2).unwrap();
        let t = RingElem::t(&f, Flavor::Poly);
        let nu = ReinerMap::f_linear(&f, &[&t + &t.pow(2), t.pow(2)]).unwrap();
        let r = GroupMap::Reiner { nu, group: Group::GL };
        let e = GroupMap::Std(StdAut::contragredient(&f, Flavor::Poly, 2));
        let c = r.compose(&e).unwrap().compose(&r).unwrap();
        match &c {
            GroupMap::Compose(ps) => assert_eq!(ps.len(), 3),
            _ => panic!("expected a composition"),
        }
        let g = Mat::e21(&t);
        let expect = r.apply(&e.apply(&r.apply(&g).unwrap()).unwrap()).unwrap();
        assert_eq!(c.apply(&g).unwrap(), expect);
        assert_eq!(r.order(10, Group::GL), Some(2));
    }
}
