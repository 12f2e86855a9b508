use rand::Rng;

use super::types::{compose_types, delta_t, g0_generators, type_of, AutType, Phi0};
use crate::automorphism::{StdAut, UnitCharacter};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::random;
use crate::ring::{FieldSpec, Flavor, FqElem, RingAut, RingElem};
use crate::twisted::GroupMap;

/// A closed-form automorphism of `GL_2(F_q[t, t^-1])` with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedAut {
    aut: StdAut,
    ty: AutType,
}

impl RealizedAut {
    /// Wraps a standard automorphism, reading its type.
    pub fn from_std(aut: StdAut) -> Result<Self> {
        let ty = type_of(&GroupMap::Std(aut.clone()))?;
        Ok(Self { aut, ty })
    }

    pub fn aut(&self) -> &StdAut {
        &self.aut
    }

    pub fn ty(&self) -> &AutType {
        &self.ty
    }

    pub fn field(&self) -> &FieldSpec {
        self.aut.field()
    }

    pub fn apply(&self, m: &Mat) -> Result<Mat> {
        self.aut.apply(m)
    }

    /// `self ∘ other`, typed by `compose_types`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { aut: self.aut.compose(&other.aut)?, ty: compose_types(&self.ty, &other.ty) })
    }
}

fn ring_map(field: &FieldSpec, frob: u32, lambda: FqElem, eps: i8) -> Result<StdAut> {
    Ok(StdAut::ring(&RingAut::new(Flavor::Laurent, frob, lambda, field.zero(), eps)?, 2))
}

/// `ι_w ∘ ε ∘ μ_χ0` with `w = [[0,1],[-1,0]]` and `χ0(λ t^c) = λ^-1`: the
/// identity on `G0`, and `δ(t,1) ↦ δ(1,t^-1)`.
fn u_flip(field: &FieldSpec) -> Result<StdAut> {
    let fl = Flavor::Laurent;
    let z = field.zero();
    let o = field.one();
    let w = Mat::constant(field, fl, 2, &[z.clone(), o.clone(), o.neg(), z]);
    let chi0 = UnitCharacter::new(-1, o)?;
    StdAut::inner(&w)?.compose(&StdAut::contragredient(field, fl, 2))?.compose(&StdAut::homothety(&chi0, fl, 2))
}

/// The realized automorphism of the requested type.
///
/// Built as `μ_τ ∘ (t ↦ λt) ∘ [u-flip] ∘ (t ↦ t^±1, Frobenius) ∘ ε^contra`,
/// where `μ_τ` multiplies by `τ^c` on determinant `λ t^c`; `λ` and `τ` are
/// solved from the composition rule for types.
pub fn build_realized_aut(field: &FieldSpec, h: (FqElem, FqElem), eps: i8, i: u8, phi0: Phi0) -> Result<RealizedAut> {
    let want = AutType { h, eps, i, phi0 };
    let unknown = || Error::RealizabilityUnknown(want.label());
    if eps.abs() != 1 || i > 1 || phi0.frob >= field.e() {
        return Err(unknown());
    }
    if want.h.0.is_zero() || want.h.1.is_zero() || want.h.0.field() != field || want.h.1.field() != field {
        return Err(unknown());
    }
    let fl = Flavor::Laurent;
    let flips = i as i8 + phi0.contra as i8;
    let ring_eps = if flips % 2 == 1 { -eps } else { eps };
    let mut base = ring_map(field, phi0.frob, field.one(), ring_eps)?;
    if phi0.contra {
        base = base.compose(&StdAut::contragredient(field, fl, 2))?;
    }
    if i == 1 {
        base = u_flip(field)?.compose(&base)?;
    }
    let base = RealizedAut::from_std(base)?;
    // A left factor of type (g, 1, 1; id) turns h_base into adj(g)·h_base.
    let bt = &base.ty;
    let mut g = (want.h.0.mul(&bt.h.0.inv().unwrap()), want.h.1.mul(&bt.h.1.inv().unwrap()));
    if bt.i == 1 {
        g = (g.1, g.0);
    }
    if bt.eps == -1 {
        g = (g.0.inv().unwrap(), g.1.inv().unwrap());
    }
    let tau = g.1.clone();
    let lambda = g.0.mul(&tau.inv().unwrap());
    let left = StdAut::homothety(&UnitCharacter::new(0, tau)?, fl, 2).compose(&ring_map(field, 0, lambda, 1)?)?;
    let aut = left.compose(base.aut())?;
    let got = RealizedAut::from_std(aut)?;
    if got.ty != want {
        return Err(unknown());
    }
    Ok(got)
}

/// One realized automorphism per element of `Γ`, in `gamma_elements` order.
pub fn realized_family(field: &FieldSpec) -> Result<Vec<RealizedAut>> {
    super::types::gamma_elements(field).into_iter().map(|t| build_realized_aut(field, t.h, t.eps, t.i, t.phi0)).collect()
}

/// Order data for a realized map.
///
/// `bound` follows the finite-order argument: for a type `(v, 1, 1)` it is
/// `k (r + q - 2)` with `k` the order on `G0` and `r` the order on `T0`;
/// otherwise it is twice the bound of `φ^2`, which has such a type.
/// `lcm_bound` replaces `r + q - 2` by `r (q - 1)` and `k m` by `lcm(k, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: u64,
    /// Order of the restriction to `G0`.
    pub k: u64,
    /// Order of the restriction to `T0`.
    pub r: u64,
    pub bound: u64,
    pub divides_bound: bool,
    pub lcm_bound: u64,
}

fn first_return(phi: &RealizedAut, gens: &[Mat], limit: u64) -> Option<u64> {
    let mut cur = gens.to_vec();
    for n in 1..=limit {
        cur = cur.iter().map(|g| phi.apply(g).unwrap()).collect();
        if cur == gens {
            return Some(n);
        }
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least `n` with `φ^n` the identity on `G0` generators and `δ(t,1)`.
pub fn aut_order(phi: &RealizedAut) -> Result<OrderReport> {
    let field = phi.field();
    let q = field.q() as u64;
    let limit = 8 * field.e() as u64 * q * q;
    let g0 = g0_generators(field);
    let mut all = g0.clone();
    all.push(delta_t(field));
    let fl = Flavor::Laurent;
    let one = RingElem::one(field, fl);
    let w = RingElem::constant(&field.generator(), fl);
    let t0 = [Mat::delta(&w, &one), Mat::delta(&one, &w)];
    let fail = || Error::OrderBound(format!("no return within {limit} steps"));
    let order = first_return(phi, &all, limit).ok_or_else(fail)?;
    let k = first_return(phi, &g0, limit).ok_or_else(fail)?;
    let r = first_return(phi, &t0, limit).ok_or_else(fail)?;
    let (bound, lcm_bound) = if phi.ty().eps == 1 && phi.ty().i == 0 {
        let m = r * (q - 1);
        (k * (r + q - 2), k / gcd(k, m) * m)
    } else {
        let sq = aut_order(&phi.compose(phi)?)?;
        (2 * sq.bound, 2 * sq.lcm_bound)
    };
    Ok(OrderReport { order, k, r, bound, divides_bound: bound % order == 0, lcm_bound })
}

/// One named check inside a fixed-subgroup report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixReport {
    pub ty: AutType,
    /// "t-inverting" (`i = 0`), "t-preserving" (`i = 1`) or "contragredient"
    /// (`φ0` of class `ρ∘ε`).
    pub case: &'static str,
    pub checks: Vec<Check>,
}

impl FixReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Verifies the fixed-subgroup statements for a realized `φ` of type
/// `(h, -1, u^i)`: `φ(e_k) = e_-k` or `e_k`, `e_k e_-k` fixed, and random
/// words in generators of `GL_2(F_p[s])` fixed. For `φ0` of class `ρ∘ε` it
/// checks `φ(e12(s^k)) = e21(-s^k)` and `φ(e21(s^k)) = e12(-s^k)` instead.
pub fn fixed_subgroup_check<R: Rng>(phi: &RealizedAut, kmax: i64, words: usize, rng: &mut R) -> Result<FixReport> {
    let ty = phi.ty().clone();
    let field = phi.field().clone();
    let fl = Flavor::Laurent;
    let q = field.q() as i64;
    let s = crate::ring::special_s(&field, fl);
    let mut checks = Vec::new();
    let mut check = |name: String, ok: bool| checks.push(Check { name, ok });
    if ty.phi0.contra {
        for k in 1..=kmax as u32 {
            let sk = s.pow(k);
            check(format!("φ(e12(s^{k})) = e21(-s^{k})"), phi.apply(&Mat::e12(&sk))? == Mat::e21(&sk.neg()));
            check(format!("φ(e21(s^{k})) = e12(-s^{k})"), phi.apply(&Mat::e21(&sk))? == Mat::e12(&sk.neg()));
        }
        return Ok(FixReport { ty, case: "contragredient", checks });
    }
    if ty.eps != -1 {
        return Err(Error::ShapeMismatch(format!("fixed-subgroup check needs ε = -1, got type {}", ty.label())));
    }
    let e = |k: i64| Mat::e12(&RingElem::t_pow(&field, fl, (q - 1) * k).unwrap());
    for k in 1..=kmax {
        let img = phi.apply(&e(k))?;
        if ty.i == 0 {
            check(format!("φ(e_{k}) = e_-{k}"), img == e(-k));
        } else {
            check(format!("φ(e_{k}) = e_{k}"), img == e(k));
        }
        let prod = &e(k) * &e(-k);
        let sum = &RingElem::t_pow(&field, fl, (q - 1) * k)? + &RingElem::t_pow(&field, fl, (1 - q) * k)?;
        check(format!("e_{k} e_-{k} = e12(t^{}+t^{})", (q - 1) * k, (1 - q) * k), prod == Mat::e12(&sum));
        check(format!("φ fixes e_{k} e_-{k}"), phi.apply(&prod)? == prod);
    }
    let gens = fp_s_generators(&field, 3);
    let mut all_fixed = true;
    for _ in 0..words {
        let len = rng.gen_range(1..=8);
        let mut w = Mat::identity(&field, fl, 2);
        for _ in 0..len {
            let g = &gens[rng.gen_range(0..gens.len())];
            w = if rng.gen_bool(0.5) { &w * g } else { &w * &g.inverse()? };
        }
        all_fixed &= phi.apply(&w)? == w;
    }
    check(format!("φ fixes {words} random words in GL_2(F_p[s])"), all_fixed);
    let case = if ty.i == 0 { "t-inverting" } else { "t-preserving" };
    Ok(FixReport { ty, case, checks })
}

/// `GL_2(F_p)` generators together with `e12(s^j)`, `e21(s^j)`, `j <= jmax`.
fn fp_s_generators(field: &FieldSpec, jmax: u32) -> Vec<Mat> {
    let fl = Flavor::Laurent;
    let s = crate::ring::special_s(field, fl);
    let one = RingElem::one(field, fl);
    let mut out = vec![Mat::e12(&one), Mat::e21(&one)];
    for l in 2..field.p() as i64 {
        out.push(Mat::delta(&RingElem::from_int(field, fl, l), &one));
    }
    for j in 1..=jmax {
        out.push(Mat::e12(&s.pow(j)));
        out.push(Mat::e21(&s.pow(j)));
    }
    out
}

/// Checks that `φ` evaluates consistently on random matrices: its closed
/// form agrees with applying it letter by letter to a generator word.
pub fn decomposition_independent<R: Rng>(phi: &RealizedAut, samples: usize, rng: &mut R) -> Result<bool> {
    let field = phi.field().clone();
    for _ in 0..samples {
        let g = random::gl(rng, &field, Flavor::Laurent, 2, 4, false);
        let w = super::gens::generator_decompose(&g)?;
        let d = phi.apply(&delta_t(&field))?;
        let di = d.inverse()?;
        let mut acc = Mat::identity(&field, Flavor::Laurent, 2);
        for tok in &w.tokens {
            acc = match tok {
                super::gens::Token::Const(m) => &acc * &phi.apply(m)?,
                super::gens::Token::Delta(1) => &acc * &d,
                super::gens::Token::Delta(_) => &acc * &di,
            };
        }
        if acc != phi.apply(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}
