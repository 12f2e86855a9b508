use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, FqElem, RingAut, RingElem};

/// Which matrix group an automorphism is regarded on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    GL,
    SL,
}

/// A character `GL_n(R) -> F^×` factoring through the determinant:
/// `λ t^c -> λ^k · t_image^c`. Over `F[t]` only the `k` part matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitCharacter {
    pub k: u64,
    pub t_image: FqElem,
}

impl UnitCharacter {
    pub fn new(k: i64, t_image: FqElem) -> Result<Self> {
        if t_image.is_zero() {
            return Err(Error::Precondition("image of t must be a unit".into()));
        }
        let m = (t_image.field().q() - 1) as i64;
        Ok(Self { k: k.rem_euclid(m) as u64, t_image })
    }

    /// The character `det^k`-on-scalars with `t -> 1`.
    pub fn power(field: &FieldSpec, k: i64) -> Self {
        Self::new(k, field.one()).unwrap()
    }

    pub fn field(&self) -> &FieldSpec {
        self.t_image.field()
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0 && self.t_image.is_one()
    }

    /// All characters over the given ring.
    pub fn all(field: &FieldSpec, flavor: Flavor) -> Vec<Self> {
        let mut out = Vec::new();
        for k in 0..(field.q() - 1) as i64 {
            match flavor {
                Flavor::Poly => out.push(Self::power(field, k)),
                Flavor::Laurent => out.extend(field.units().map(|tau| Self::new(k, tau).unwrap())),
            }
        }
        out
    }

    /// Value on a unit of `R`.
    pub fn eval_unit(&self, u: &RingElem) -> Result<FqElem> {
        let (lambda, c) = u.unit_decompose().ok_or(Error::NotInvertible)?;
        let mut v = lambda.pow(self.k as i64);
        if u.flavor() == Flavor::Laurent {
            v = v.mul(&self.t_image.pow(c));
        }
        Ok(v)
    }

    pub fn eval(&self, g: &Mat) -> Result<FqElem> {
        self.eval_unit(&g.det())
    }

    fn normalized(self) -> Option<Self> {
        (!self.is_trivial()).then_some(self)
    }
}

/// `μ_χ ∘ ρ ∘ ι_g ∘ ε^use_eps`, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdAut {
    n: usize,
    chi: Option<UnitCharacter>,
    rho: RingAut,
    g: Mat,
    g_inv: Mat,
    use_eps: bool,
}

impl StdAut {
    pub fn new(chi: Option<UnitCharacter>, rho: RingAut, g: Mat, use_eps: bool) -> Result<Self> {
        if rho.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        if rho.flavor() != g.flavor() {
            return Err(Error::FlavorMismatch);
        }
        if let Some(c) = &chi {
            if c.field() != g.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let g_inv = g.inverse()?;
        Ok(Self { n: g.n(), chi: chi.and_then(UnitCharacter::normalized), rho, g, g_inv, use_eps })
    }

    pub fn identity(field: &FieldSpec, flavor: Flavor, n: usize) -> Self {
        let id = Mat::identity(field, flavor, n);
        Self { n, chi: None, rho: RingAut::identity(field, flavor), g: id.clone(), g_inv: id, use_eps: false }
    }

    pub fn ring(rho: &RingAut, n: usize) -> Self {
        let mut a = Self::identity(rho.field(), rho.flavor(), n);
        a.rho = rho.clone();
        a
    }

    pub fn inner(g: &Mat) -> Result<Self> {
        Self::new(None, RingAut::identity(g.field(), g.flavor()), g.clone(), false)
    }

    pub fn contragredient(field: &FieldSpec, flavor: Flavor, n: usize) -> Self {
        let mut a = Self::identity(field, flavor, n);
        a.use_eps = true;
        a
    }

    pub fn homothety(chi: &UnitCharacter, flavor: Flavor, n: usize) -> Self {
        let mut a = Self::identity(chi.field(), flavor, n);
        a.chi = chi.clone().normalized();
        a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        self.rho.field()
    }

    pub fn flavor(&self) -> Flavor {
        self.rho.flavor()
    }

    pub fn chi(&self) -> Option<&UnitCharacter> {
        self.chi.as_ref()
    }

    pub fn rho(&self) -> &RingAut {
        &self.rho
    }

    pub fn g(&self) -> &Mat {
        &self.g
    }

    pub fn use_eps(&self) -> bool {
        self.use_eps
    }

    fn check(&self, a: &Mat) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::Dimension(format!("automorphism of degree {} applied to {}x{}", self.n, a.n(), a.n())));
        }
        if a.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if a.flavor() != self.flavor() {
            return Err(Error::FlavorMismatch);
        }
        Ok(())
    }

    pub fn apply(&self, a: &Mat) -> Result<Mat> {
        self.check(a)?;
        let mut x = if self.use_eps { a.inverse()?.transpose() } else { a.clone() };
        if !self.g.is_identity() {
            x = &(&self.g * &x) * &self.g_inv;
        }
        if !self.rho.is_identity() {
            x = x.apply_ring_aut(&self.rho)?;
        }
        if let Some(chi) = &self.chi {
            let c = chi.eval(&x)?;
            x = x.scale(&RingElem::constant(&c, self.flavor()));
        }
        Ok(x)
    }

    /// `self ∘ other`, renormalized to the canonical shape.
    ///
    /// Determinant-factored homotheties commute with `ε` and every `ι_g`;
    /// moving one past `ρ` keeps `k` and twists the image of `t`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension("composing automorphisms of different degrees".into()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.flavor() != other.flavor() {
            return Err(Error::FlavorMismatch);
        }
        let rho2_inv = other.rho.inverse();
        let g1 = self.g.apply_ring_aut(&rho2_inv)?;
        let g2 = if self.use_eps { other.g.inverse()?.transpose() } else { other.g.clone() };
        let g = &g1 * &g2;
        let rho = self.rho.compose(&other.rho)?;
        let chi2 = other.chi.as_ref().map(|c| self.push_through_rho(c));
        let chi = match (&self.chi, chi2) {
            (None, c) => c,
            (Some(c1), None) => Some(c1.clone()),
            (Some(c1), Some(c2)) => {
                let e = 1 + self.n as i64 * c1.k as i64;
                Some(UnitCharacter::new(c1.k as i64 + c2.k as i64 * e, c1.t_image.mul(&c2.t_image.pow(e)))?)
            }
        };
        Self::new(chi, rho, g, self.use_eps ^ other.use_eps)
    }

    /// `χ'` with `ρ ∘ μ_χ = μ_χ' ∘ ρ` for this automorphism's `ρ`.
    fn push_through_rho(&self, chi: &UnitCharacter) -> UnitCharacter {
        let r = &self.rho;
        let tau = chi.t_image.frobenius(r.frob_exp()).mul(&r.a().pow(-(chi.k as i64)));
        let tau = if r.eps() == 1 { tau } else { tau.inv().unwrap() };
        UnitCharacter::new(chi.k as i64, tau).unwrap()
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = Self::identity(self.field(), self.flavor(), self.n);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Canonical form is visibly the identity on `group`.
    pub fn is_canonical_identity(&self, group: Group) -> bool {
        (self.chi.is_none() || group == Group::SL)
            && self.rho.is_identity()
            && !self.use_eps
            && self.g.scalar_value().is_some()
    }

    /// Generating probes: shears `e_ij(c)` for `c in {1, λ, t, λt}` and, for
    /// `GL`, the diagonal units `h`-type matrices.
    pub fn probes(field: &FieldSpec, flavor: Flavor, n: usize, group: Group) -> Vec<Mat> {
        let lambda = RingElem::constant(&field.generator(), flavor);
        let t = RingElem::t(field, flavor);
        let cs = [RingElem::one(field, flavor), lambda.clone(), t.clone(), &lambda * &t];
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    for c in &cs {
                        out.push(Mat::elementary(i, j, c, n).unwrap());
                    }
                }
            }
        }
        if group == Group::GL {
            let mut units = vec![lambda];
            if flavor == Flavor::Laurent {
                units.push(t);
            }
            for u in &units {
                for i in 0..n {
                    let mut d = vec![RingElem::one(field, flavor); n];
                    d[i] = u.clone();
                    out.push(Mat::diagonal(&d).unwrap());
                }
            }
        }
        out
    }

    /// Least `r <= bound` with `φ^r` the identity on the probes and in
    /// canonical form.
    pub fn order(&self, bound: u64, group: Group) -> Option<u64> {
        let probes = Self::probes(self.field(), self.flavor(), self.n, group);
        let mut cur = self.clone();
        for r in 1..=bound {
            if cur.is_canonical_identity(group) && probes.iter().all(|p| cur.apply(p).ok().as_ref() == Some(p)) {
                return Some(r);
            }
            cur = cur.compose(self).ok()?;
        }
        None
    }
}

/// Scans central `λI`, `λ in F_q^×`, for `μ_χ(λI) = I`, i.e. `χ(λI) = λ^-1`.
/// Returns the first witness `λ` if the homothety is not injective.
pub fn homothety_injective(chi: &UnitCharacter, n: usize, flavor: Flavor) -> (bool, Option<FqElem>) {
    let field = chi.field();
    for lambda in field.units() {
        if lambda.is_one() {
            continue;
        }
        let z = Mat::scalar(&RingElem::constant(&lambda, flavor), n);
        let v = chi.eval(&z).expect("scalar matrix is invertible");
        if v == lambda.inv().unwrap() {
            return (false, Some(lambda));
        }
    }
    (true, None)
}

/// Representatives for outer automorphisms of `GL_n(R)` / `SL_n(R)`, `n >= 3`:
/// `ρ`, `ρ∘ε` for all ring automorphisms; for `SL` also `ι_h(α)∘ρ`,
/// `ι_h(α)∘ρ∘ε` for `α` in the sample (except 1); for `GL` also `μ_χ∘ρ`,
/// `μ_χ∘ρ∘ε` for each non-trivial character given.
pub fn transversal_enumerate(
    group: Group,
    n: usize,
    field: &FieldSpec,
    flavor: Flavor,
    unit_sample: &[RingElem],
    characters: &[UnitCharacter],
) -> Result<Vec<StdAut>> {
    if n < 3 {
        return Err(Error::Dimension("the transversal needs n >= 3".into()));
    }
    let eps = StdAut::contragredient(field, flavor, n);
    let mut out = Vec::new();
    for rho in RingAut::all(field, flavor) {
        let r = StdAut::ring(&rho, n);
        let re = r.compose(&eps)?;
        out.push(r.clone());
        out.push(re.clone());
        match group {
            Group::SL => {
                for alpha in unit_sample {
                    if alpha.is_one() {
                        continue;
                    }
                    if !alpha.is_unit() {
                        return Err(Error::Precondition(format!("{alpha} is not a unit")));
                    }
                    let ih = StdAut::inner(&Mat::h(alpha, n))?;
                    out.push(ih.compose(&r)?);
                    out.push(ih.compose(&re)?);
                }
            }
            Group::GL => {
                for chi in characters.iter().filter(|c| !c.is_trivial()) {
                    let mu = StdAut::homothety(chi, flavor, n);
                    out.push(mu.compose(&r)?);
                    out.push(mu.compose(&re)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::witness_x;

    #[test]
    fn contragredient_on_shear() {
        let f = FieldSpec::prime(3).unwrap();
        let fl = Flavor::Laurent;
        let x = RingElem::from_ints(&f, fl, -1, &[1, 0, 2]).unwrap();
        let eps = StdAut::contragredient(&f, fl, 2);
        assert_eq!(eps.apply(&Mat::e12(&x)).unwrap(), Mat::e21(&x.neg()));
        assert_eq!(eps.order(10, Group::GL), Some(2));
    }

    #[test]
    fn ring_automorphisms_fix_witnesses() {
        let f = FieldSpec::of_order(4).unwrap();
        let fl = Flavor::Laurent;
        let x = witness_x(2, &f, fl, 3).unwrap();
        for rho in RingAut::all(&f, fl) {
            assert_eq!(StdAut::ring(&rho, 3).apply(&x).unwrap(), x);
        }
    }

    #[test]
    fn order_of_ring_type_matches_ring_order() {
        let f = FieldSpec::of_order(4).unwrap();
        for fl in [Flavor::Poly, Flavor::Laurent] {
            for rho in RingAut::all(&f, fl) {
                let a = StdAut::ring(&rho, 3);
                assert_eq!(a.order(64, Group::GL), Some(rho.order()), "{rho:?}");
            }
        }
    }

    #[test]
    fn inner_by_delta_has_infinite_order() {
        let f = FieldSpec::prime(2).unwrap();
        let fl = Flavor::Laurent;
        let tau = Mat::delta(&RingElem::one(&f, fl), &RingElem::t(&f, fl));
        let a = StdAut::inner(&tau).unwrap();
        assert_eq!(a.order(20, Group::SL), None);
    }

    #[test]
    fn contragredient_past_inner() {
        let f = FieldSpec::prime(3).unwrap();
        let fl = Flavor::Laurent;
        let t = RingElem::t(&f, fl);
        let g = &Mat::elementary(1, 3, &t, 3).unwrap() * &Mat::h(&t, 3);
        let eps = StdAut::contragredient(&f, fl, 3);
        let lhs = eps.compose(&StdAut::inner(&g).unwrap()).unwrap();
        let eg = eps.apply(&g).unwrap();
        let rhs = StdAut::inner(&eg).unwrap().compose(&eps).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_then_inverse_is_identity() {
        let f = FieldSpec::of_order(9).unwrap();
        let fl = Flavor::Laurent;
        for rho in RingAut::all(&f, fl).iter().step_by(3) {
            let c = StdAut::ring(rho, 3).compose(&StdAut::ring(&rho.inverse(), 3)).unwrap();
            assert!(c.is_canonical_identity(Group::GL));
        }
    }

    #[test]
    fn homothety_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let det = UnitCharacter::power(&f3, 1);
        let (inj, w) = homothety_injective(&det, 3, Flavor::Laurent);
        assert!(!inj);
        assert_eq!(w, Some(f3.from_int(-1)));
        assert_eq!(homothety_injective(&det, 2, Flavor::Laurent), (true, None));
        let triv = UnitCharacter::power(&f3, 0);
        assert!(homothety_injective(&triv, 3, Flavor::Poly).0);
    }

    #[test]
    fn transversal_counts() {
        let f2 = FieldSpec::prime(2).unwrap();
        let units = [RingElem::one(&f2, Flavor::Poly)];
        let n_aut = RingAut::all(&f2, Flavor::Poly).len();
        let tr = transversal_enumerate(Group::SL, 3, &f2, Flavor::Poly, &units, &[]).unwrap();
        assert_eq!(tr.len(), 2 * n_aut);
        let f3 = FieldSpec::prime(3).unwrap();
        let triv = [UnitCharacter::power(&f3, 0)];
        let tr = transversal_enumerate(Group::GL, 3, &f3, Flavor::Laurent, &[], &triv).unwrap();
        assert_eq!(tr.len(), 2 * RingAut::all(&f3, Flavor::Laurent).len());
        assert!(transversal_enumerate(Group::GL, 2, &f3, Flavor::Laurent, &[], &triv).is_err());
        let t = RingElem::t(&f3, Flavor::Laurent);
        let tr = transversal_enumerate(Group::SL, 3, &f3, Flavor::Laurent, &[t.clone()], &[]).unwrap();
        let ht = Mat::h(&t, 3);
        assert!(tr.iter().any(|a| a.g() == &ht && a.rho().is_identity()));
    }
}
