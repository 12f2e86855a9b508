use std::collections::HashSet;

use super::nagao::nagao_decompose;
use super::word::AmalgamWord;
use crate::automorphism::Group;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, FqElem, RingElem};

/// An additive automorphism `ν` of `F[t]` fixing constants and every `t^i`
/// with `i > D`. It is stored `F_p`-linearly: one image per `t^i β_j`,
/// `1 <= i <= D`, where `β_j = x^j` runs over the power basis of `F / F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReinerMap {
    field: FieldSpec,
    d: usize,
    images: Vec<RingElem>,
}

fn basis(field: &FieldSpec) -> Vec<FqElem> {
    (0..field.e()).map(|j| field.elem(field.p().pow(j))).collect()
}

impl ReinerMap {
    pub fn identity(field: &FieldSpec, d: usize) -> Self {
        let b = basis(field);
        let mut images = Vec::new();
        for i in 1..=d as i64 {
            for bj in &b {
                images.push(RingElem::monomial(bj, i, Flavor::Poly).unwrap());
            }
        }
        Self { field: field.clone(), d, images }
    }

    /// `F`-linear map from the images `ν(t), ..., ν(t^D)`.
    pub fn f_linear(field: &FieldSpec, images_of_powers: &[RingElem]) -> Result<Self> {
        let b = basis(field);
        let mut images = Vec::new();
        for img in images_of_powers {
            for bj in &b {
                images.push(img.scale(bj));
            }
        }
        Self::fp_linear(field, images_of_powers.len(), images)
    }

    /// Raw `F_p`-linear data: `images[(i-1) e + j] = ν(t^i β_j)`.
    pub fn fp_linear(field: &FieldSpec, d: usize, images: Vec<RingElem>) -> Result<Self> {
        let e = field.e() as usize;
        if images.len() != d * e {
            return Err(Error::Precondition(format!("expected {} images, got {}", d * e, images.len())));
        }
        for img in &images {
            if img.field() != field {
                return Err(Error::FieldMismatch);
            }
            if img.flavor() != Flavor::Poly {
                return Err(Error::FlavorMismatch);
            }
            if img.degree().unwrap_or(0) > d as i64 {
                return Err(Error::Precondition(format!("image {img} has degree above D = {d}")));
            }
        }
        let nu = Self { field: field.clone(), d, images };
        if !nu.is_invertible() {
            return Err(Error::Precondition("Reiner data is not invertible".into()));
        }
        Ok(nu)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    /// The stored `F_p`-linear images, in the order of [`Self::basis_elements`].
    pub fn images(&self) -> &[RingElem] {
        &self.images
    }

    /// `F_p`-coordinates of the coefficients of `t^1 .. t^D`.
    fn coords(&self, f: &RingElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.d * self.field.e() as usize);
        for i in 1..=self.d as i64 {
            out.extend(f.coeff(i).coeffs());
        }
        out
    }

    /// The square block of `ν` on `t^1 .. t^D` has full rank over `F_p`.
    fn is_invertible(&self) -> bool {
        let p = self.field.p() as u64;
        let mut rows: Vec<Vec<u64>> = self.images.iter().map(|img| self.coords(img)).collect();
        let n = rows.len();
        let mut rank = 0;
        for col in 0..n {
            let Some(pr) = (rank..n).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, pr);
            let inv = pow_mod(rows[rank][col], p - 2, p);
            let prow: Vec<u64> = rows[rank].iter().map(|v| v * inv % p).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = row[col];
                    for (v, pv) in row.iter_mut().zip(&prow) {
                        *v = (*v + p * p - c * pv) % p;
                    }
                }
            }
            rows[rank] = prow;
            rank += 1;
        }
        rank == n
    }

    pub fn apply(&self, f: &RingElem) -> Result<RingElem> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if f.flavor() != Flavor::Poly {
            return Err(Error::FlavorMismatch);
        }
        let e = self.field.e() as usize;
        let mut acc = RingElem::zero(&self.field, Flavor::Poly);
        for k in 0..=f.degree().unwrap_or(-1) {
            let c = f.coeff(k);
            if c.is_zero() {
                continue;
            }
            if k == 0 || k > self.d as i64 {
                acc = &acc + &RingElem::monomial(&c, k, Flavor::Poly)?;
                continue;
            }
            for (j, a) in c.coeffs().into_iter().enumerate() {
                let img = &self.images[(k as usize - 1) * e + j];
                acc = &acc + &img.scale(&self.field.from_int(a as i64));
            }
        }
        Ok(acc)
    }

    /// `t^i β_j` for `1 <= i <= D`, in storage order.
    pub fn basis_elements(&self) -> Vec<RingElem> {
        let b = basis(&self.field);
        let mut out = Vec::new();
        for i in 1..=self.d as i64 {
            for bj in &b {
                out.push(RingElem::monomial(bj, i, Flavor::Poly).unwrap());
            }
        }
        out
    }

    /// Least `k <= bound` with `ν^k` the identity.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let start = self.basis_elements();
        let mut cur = start.clone();
        for k in 1..=bound {
            cur = cur.iter().map(|f| self.apply(f).unwrap()).collect();
            if cur == start {
                return Some(k);
            }
        }
        None
    }

    /// Whether `ν(λx) = λν(x)` for all `λ` in `scalars`, on a basis.
    pub fn is_linear_over(&self, scalars: &[FqElem]) -> bool {
        let b = basis(&self.field);
        for i in 1..=self.d as i64 {
            for bj in &b {
                let x = RingElem::monomial(bj, i, Flavor::Poly).unwrap();
                let nx = self.apply(&x).unwrap();
                for lam in scalars {
                    if self.apply(&x.scale(lam)).unwrap() != nx.scale(lam) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `F'`: the `F_p`-subalgebra of `F` generated by the nonzero squares.
pub fn square_subfield(field: &FieldSpec) -> Vec<FqElem> {
    let mut set: HashSet<u32> = field.units().map(|l| l.mul(&l).raw()).collect();
    set.insert(0);
    loop {
        let cur: Vec<u32> = set.iter().copied().collect();
        let mut grew = false;
        for &a in &cur {
            for &b in &cur {
                let (x, y) = (field.elem(a), field.elem(b));
                grew |= set.insert(x.add(&y).raw());
                grew |= set.insert(x.mul(&y).raw());
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<u32> = set.into_iter().collect();
    out.sort_unstable();
    out.into_iter().map(|v| field.elem(v)).collect()
}

/// `F`-linearity (`GL_2`) or `F'`-linearity (`SL_2`): the condition for `ν` to
/// extend to the Borel subgroup fixing its diagonal part.
pub fn reiner_valid(nu: &ReinerMap, group: Group) -> bool {
    let field = nu.field();
    let scalars = match group {
        Group::GL => field.elements().collect(),
        Group::SL => square_subfield(field),
    };
    nu.is_linear_over(&scalars)
}

/// Image of an upper triangular `[[λ, f], [0, μ]]`: `[[λ, λ ν(f/λ)], [0, μ]]`.
fn map_borel(nu: &ReinerMap, m: &Mat) -> Result<Mat> {
    let lam = m.get(0, 0);
    let lam_inv = lam.inverse().ok_or(Error::NotInvertible)?;
    let f = nu.apply(&(m.get(0, 1) * &lam_inv))?;
    Mat::from_rows(vec![vec![lam.clone(), lam * &f], vec![m.get(1, 0).clone(), m.get(1, 1).clone()]])
}

/// Applies `ν` factorwise to a weakly reduced word: identity on `G0`
/// factors, the Borel rule on `B` factors.
pub fn reiner_apply_word(nu: &ReinerMap, w: &AmalgamWord) -> Result<Mat> {
    let mut acc = Mat::identity(nu.field(), Flavor::Poly, 2);
    for (tag, m) in &w.factors {
        let img = if *tag == 0 { m.clone() } else { map_borel(nu, m)? };
        acc = &acc * &img;
    }
    Ok(acc)
}

/// The Reiner automorphism of `GL_2(F[t])` (or `SL_2(F[t])`) extending `ν`.
pub fn reiner_apply(nu: &ReinerMap, g: &Mat, group: Group) -> Result<Mat> {
    if g.field() != nu.field() {
        return Err(Error::FieldMismatch);
    }
    let w = nagao_decompose(g, group)?;
    reiner_apply_word(nu, &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(field: &FieldSpec) -> ReinerMap {
        let t = RingElem::t(field, Flavor::Poly);
        ReinerMap::f_linear(field, &[&t + &t.pow(2), t.pow(2)]).unwrap()
    }

    #[test]
    fn constants_fixed_and_shears_mapped() {
        let f = FieldSpec::prime(3).unwrap();
        let nu = sample(&f);
        let k = Mat::constant(&f, Flavor::Poly, 2, &[f.from_int(0), f.from_int(1), f.from_int(2), f.from_int(1)]);
        assert_eq!(reiner_apply(&nu, &k, Group::GL).unwrap(), k);
        let x = RingElem::from_ints(&f, Flavor::Poly, 0, &[1, 2, 1, 1]).unwrap();
        assert_eq!(reiner_apply(&nu, &Mat::e12(&x), Group::GL).unwrap(), Mat::e12(&nu.apply(&x).unwrap()));
    }

    #[test]
    fn identity_map() {
        let f = FieldSpec::of_order(4).unwrap();
        let nu = ReinerMap::identity(&f, 3);
        let t = RingElem::t(&f, Flavor::Poly);
        let g = &Mat::e21(&t) * &Mat::e12(&t.pow(2));
        assert_eq!(reiner_apply(&nu, &g, Group::GL).unwrap(), g);
    }

    #[test]
    fn singular_data_rejected() {
        let f = FieldSpec::prime(2).unwrap();
        let t = RingElem::t(&f, Flavor::Poly);
        assert!(ReinerMap::f_linear(&f, &[t.pow(2), t.pow(2)]).is_err());
        assert!(ReinerMap::f_linear(&f, &[t.pow(3)]).is_err());
    }

    #[test]
    fn square_subfields() {
        for q in [2, 4, 8] {
            let f = FieldSpec::of_order(q).unwrap();
            assert_eq!(square_subfield(&f).len() as u32, f.q());
        }
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(square_subfield(&f3).len(), 3);
        let f9 = FieldSpec::of_order(9).unwrap();
        assert_eq!(square_subfield(&f9).len(), 9);
    }

    #[test]
    fn linearity_checks() {
        let f4 = FieldSpec::of_order(4).unwrap();
        let nu = sample(&f4);
        assert!(reiner_valid(&nu, Group::GL));
        assert!(reiner_valid(&nu, Group::SL));
        // Swap the F_2-coordinates of the t-coefficient: additive but not F_4-linear.
        let t = RingElem::t(&f4, Flavor::Poly);
        let w = RingElem::constant(&f4.generator(), Flavor::Poly);
        let bad = ReinerMap::fp_linear(&f4, 1, vec![&w * &t, t.clone()]).unwrap();
        assert!(!reiner_valid(&bad, Group::GL));
        assert!(!reiner_valid(&bad, Group::SL));
    }
}
