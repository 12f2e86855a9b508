use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::{FieldSpec, FqElem};
use crate::error::{Error, Result};

/// Which coefficient ring a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `F[t]`
    Poly,
    /// `F[t, t^-1]`
    Laurent,
}

/// A polynomial or Laurent polynomial over `F_q`, stored densely on
/// `[low, low + coeffs.len())`.
///
/// Normal form: the top coefficient is nonzero; for Laurent values the bottom
/// one is too. Polynomials always have `low = 0`. Zero has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    field: FieldSpec,
    flavor: Flavor,
    low: i64,
    coeffs: Vec<u32>,
}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.flavor.hash(state);
        self.low.hash(state);
        self.coeffs.hash(state);
    }
}

impl RingElem {
    /// Builds and normalizes from raw field encodings starting at exponent `low`.
    pub(crate) fn from_raw(field: &FieldSpec, flavor: Flavor, low: i64, coeffs: Vec<u32>) -> Self {
        let mut r = Self { field: field.clone(), flavor, low, coeffs };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.low = 0;
            return;
        }
        match self.flavor {
            Flavor::Laurent => {
                let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
                if lead > 0 {
                    self.coeffs.drain(..lead);
                    self.low += lead as i64;
                }
            }
            Flavor::Poly => {
                assert!(self.low >= 0, "negative exponent in F[t]");
                if self.low > 0 {
                    let mut c = vec![0; self.low as usize];
                    c.append(&mut self.coeffs);
                    self.coeffs = c;
                    self.low = 0;
                }
            }
        }
    }

    pub fn zero(field: &FieldSpec, flavor: Flavor) -> Self {
        Self { field: field.clone(), flavor, low: 0, coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec, flavor: Flavor) -> Self {
        Self::from_raw(field, flavor, 0, vec![1])
    }

    pub fn t(field: &FieldSpec, flavor: Flavor) -> Self {
        Self::from_raw(field, flavor, 1, vec![1])
    }

    pub fn constant(c: &FqElem, flavor: Flavor) -> Self {
        Self::from_raw(c.field(), flavor, 0, vec![c.raw()])
    }

    /// The integer `n` viewed in `F_p ⊂ R`.
    pub fn from_int(field: &FieldSpec, flavor: Flavor, n: i64) -> Self {
        Self::constant(&field.from_int(n), flavor)
    }

    /// `c * t^k`. Fails for `k < 0` over `F[t]`.
    pub fn monomial(c: &FqElem, k: i64, flavor: Flavor) -> Result<Self> {
        if flavor == Flavor::Poly && k < 0 && !c.is_zero() {
            return Err(Error::Precondition(format!("t^{k} is not in F[t]")));
        }
        Ok(Self::from_raw(c.field(), flavor, k, vec![c.raw()]))
    }

    /// `t^k` (Laurent only for negative `k`).
    pub fn t_pow(field: &FieldSpec, flavor: Flavor, k: i64) -> Result<Self> {
        Self::monomial(&field.one(), k, flavor)
    }

    /// Builds from integer coefficients (reduced into `F_p`) starting at `low`.
    pub fn from_ints(field: &FieldSpec, flavor: Flavor, low: i64, coeffs: &[i64]) -> Result<Self> {
        if flavor == Flavor::Poly && low < 0 {
            return Err(Error::Precondition("negative exponent in F[t]".into()));
        }
        let raw = coeffs.iter().map(|&c| field.from_int(c).raw()).collect();
        Ok(Self::from_raw(field, flavor, low, raw))
    }

    /// Builds from field elements starting at `low`.
    pub fn from_coeffs(field: &FieldSpec, flavor: Flavor, low: i64, coeffs: &[FqElem]) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if flavor == Flavor::Poly && low < 0 && coeffs.iter().any(|c| !c.is_zero()) {
            return Err(Error::Precondition("negative exponent in F[t]".into()));
        }
        let mut r = Self { field: field.clone(), flavor, low, coeffs: coeffs.iter().map(FqElem::raw).collect() };
        if flavor == Flavor::Poly && low < 0 {
            r.coeffs.drain(..(-low) as usize);
            r.low = 0;
        }
        r.normalize();
        Ok(r)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Lowest stored exponent (0 for polynomials and for zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub(crate) fn raw_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficients from exponent `low()` upward.
    pub fn coeffs(&self) -> Vec<FqElem> {
        self.coeffs.iter().map(|&c| self.field.elem(c)).collect()
    }

    pub fn coeff(&self, k: i64) -> FqElem {
        self.field.elem(self.coeff_raw(k))
    }

    pub(crate) fn coeff_raw(&self, k: i64) -> u32 {
        let i = k - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        let lead = self.coeffs.iter().position(|&c| c != 0)?;
        Some(self.low + lead as i64)
    }

    /// Highest exponent (the degree for polynomials). `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn degree(&self) -> Option<i64> {
        self.max_exp()
    }

    /// `max_exp - min_exp`, the Euclidean size of Laurent values.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading_coeff(&self) -> FqElem {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    /// Constant term if the value is a constant.
    pub fn as_constant(&self) -> Option<FqElem> {
        match self.coeffs.len() {
            0 => Some(self.field.zero()),
            1 if self.low == 0 => Some(self.field.elem(self.coeffs[0])),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch);
        }
        Ok(())
    }

    fn combine(&self, other: &Self, f: impl Fn(&FieldSpec, u32, u32) -> u32) -> Self {
        if self.is_zero() && other.is_zero() {
            return self.clone();
        }
        let lo = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.low,
            (_, true) => self.low,
            _ => self.low.min(other.low),
        };
        let hi = self.max_exp().unwrap_or(lo).max(other.max_exp().unwrap_or(lo));
        let coeffs = (lo..=hi).map(|k| f(&self.field, self.coeff_raw(k), other.coeff_raw(k))).collect();
        Self::from_raw(&self.field, self.flavor, lo, coeffs)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.combine(other, FieldSpec::add_raw))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.combine(other, FieldSpec::sub_raw))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field, self.flavor));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add_raw(out[i + j], f.mul_raw(a, b));
                }
            }
        }
        Ok(Self::from_raw(f, self.flavor, self.low + other.low, out))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg_raw(c)).collect();
        Self { field: self.field.clone(), flavor: self.flavor, low: self.low, coeffs }
    }

    pub fn scale(&self, c: &FqElem) -> Self {
        assert!(c.field() == &self.field, "field mismatch");
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul_raw(a, c.raw())).collect();
        Self::from_raw(&self.field, self.flavor, self.low, coeffs)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.flavor == Flavor::Poly && self.min_exp().unwrap() + k < 0 {
            return Err(Error::Precondition("shift leaves F[t]".into()));
        }
        let mut r = self.clone();
        r.low += k;
        r.normalize();
        Ok(r)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.field, self.flavor);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Applies `x -> x^(p^k)` to every coefficient.
    pub fn frobenius(&self, k: u32) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.field.frob_raw(c, k)).collect();
        Self::from_raw(&self.field, self.flavor, self.low, coeffs)
    }

    /// Value at `t = c` (`c` must be nonzero when negative powers occur).
    pub fn eval(&self, c: &FqElem) -> FqElem {
        let f = &self.field;
        let mut acc = 0u32;
        for (i, &a) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i64;
            acc = f.add_raw(acc, f.mul_raw(a, f.pow_raw(c.raw(), e)));
        }
        f.elem(acc)
    }

    /// Same value viewed in the Laurent ring.
    pub fn to_laurent(&self) -> Self {
        Self::from_raw(&self.field, Flavor::Laurent, self.low, self.coeffs.clone())
    }

    /// Same value viewed in `F[t]`, if it has no negative powers.
    pub fn to_poly(&self) -> Option<Self> {
        if self.min_exp().unwrap_or(0) < 0 {
            return None;
        }
        Some(Self::from_raw(&self.field, Flavor::Poly, self.low, self.coeffs.clone()))
    }

    /// Returns `(λ, k)` with `self = λ t^k` if `self` is a unit of its ring.
    pub fn unit_decompose(&self) -> Option<(FqElem, i64)> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        if lo != hi {
            return None;
        }
        if self.flavor == Flavor::Poly && lo != 0 {
            return None;
        }
        Some((self.coeff(lo), lo))
    }

    pub fn is_unit(&self) -> bool {
        self.unit_decompose().is_some()
    }

    /// Inverse of a unit.
    pub fn inverse(&self) -> Option<Self> {
        let (lambda, k) = self.unit_decompose()?;
        Self::monomial(&lambda.inv()?, -k, self.flavor).ok()
    }

    /// Euclidean division in `F[t]`: `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_ring(d)?;
        if self.flavor != Flavor::Poly {
            return Err(Error::Precondition("div_rem is polynomial division; use laurent_div_rem".into()));
        }
        if d.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv_raw(*d.coeffs.last().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut quot = vec![0u32; r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let top = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            if top != 0 {
                let c = f.mul_raw(top, lead_inv);
                quot[shift] = c;
                for (i, &di) in d.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub_raw(r[shift + i], f.mul_raw(c, di));
                }
            }
            r.pop();
        }
        Ok((Self::from_raw(f, Flavor::Poly, 0, quot), Self::from_raw(f, Flavor::Poly, 0, r)))
    }

    /// Euclidean division in `F[t, t^-1]` with respect to the exponent span:
    /// `self = q * d + r` with `r = 0` or `span(r) < span(d)`.
    pub fn laurent_div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_ring(d)?;
        if self.flavor != Flavor::Laurent {
            return Err(Error::Precondition("laurent_div_rem needs Laurent operands".into()));
        }
        if d.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        if self.is_zero() {
            return Ok((self.clone(), self.clone()));
        }
        let ld = d.min_exp().unwrap();
        let la = self.min_exp().unwrap();
        // d = t^ld * d0, self = t^la * a0 with d0, a0 polynomials with unit constant term.
        let d0 = d.shift(-ld)?.to_poly().unwrap();
        let a0 = self.shift(-la)?.to_poly().unwrap();
        let (q0, r0) = a0.div_rem(&d0)?;
        let q = q0.to_laurent().shift(la - ld)?;
        let r = r0.to_laurent().shift(la)?;
        Ok((q, r))
    }

    /// Canonical byte key (flavor, low, coefficients) for hashing into sets.
    pub fn key_bytes(&self, out: &mut Vec<u8>) {
        out.push(self.flavor as u8);
        out.extend_from_slice(&self.low.to_le_bytes());
        out.extend_from_slice(&(self.coeffs.len() as u32).to_le_bytes());
        for c in &self.coeffs {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
}

impl fmt::Display for RingElem {
    /// Prints in the `c*t^k + ...` grammar accepted by the parser, with `c`
    /// the integer encoding of the coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let k = self.low + i as i64;
            match (c, k) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, k) => write!(f, "t^{k}")?,
                (c, 1) => write!(f, "{c}*t")?,
                (c, k) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn laurent_square_in_char_two() {
        let f = f2();
        let t = RingElem::t(&f, Flavor::Laurent);
        let ti = t.inverse().unwrap();
        let x = &t + &ti;
        let sq = &x * &x;
        let expected = &t.pow(2) + &ti.pow(2);
        assert_eq!(sq, expected);
    }

    #[test]
    fn identities() {
        let f = FieldSpec::of_order(5).unwrap();
        let g = RingElem::from_ints(&f, Flavor::Laurent, -2, &[1, 0, 3, 4]).unwrap();
        let one = RingElem::one(&f, Flavor::Laurent);
        assert_eq!(&g * &one, g);
        assert!((&g + &g.neg()).is_zero());
    }

    #[test]
    fn normal_form_strips_zeros() {
        let f = f2();
        let g = RingElem::from_ints(&f, Flavor::Laurent, -3, &[0, 0, 1, 1, 0]).unwrap();
        assert_eq!(g.low(), -1);
        assert_eq!(g.coeffs().len(), 2);
        let p = RingElem::from_ints(&f, Flavor::Poly, 2, &[1]).unwrap();
        assert_eq!(p.low(), 0);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn mismatches_are_errors() {
        let f = f2();
        let g = FieldSpec::prime(3).unwrap();
        let a = RingElem::t(&f, Flavor::Poly);
        assert_eq!(a.checked_add(&RingElem::t(&f, Flavor::Laurent)), Err(Error::FlavorMismatch));
        assert_eq!(a.checked_mul(&RingElem::t(&g, Flavor::Poly)), Err(Error::FieldMismatch));
    }

    #[test]
    fn mul_low_adds() {
        let f = FieldSpec::of_order(3).unwrap();
        let a = RingElem::from_ints(&f, Flavor::Laurent, -2, &[1, 1]).unwrap();
        let b = RingElem::from_ints(&f, Flavor::Laurent, 5, &[2, 0, 1]).unwrap();
        assert_eq!((&a * &b).low(), 3);
    }

    #[test]
    fn unit_decompose_cases() {
        let f4 = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let omega = f4.from_coeffs(&[0, 1]).unwrap();
        let t = RingElem::t(&f4, Flavor::Laurent);
        assert_eq!(t.unit_decompose(), Some((f4.one(), 1)));
        let tp1 = &RingElem::t(&f4, Flavor::Poly) + &RingElem::one(&f4, Flavor::Poly);
        assert_eq!(tp1.unit_decompose(), None);
        let m = RingElem::monomial(&omega, -3, Flavor::Laurent).unwrap();
        assert_eq!(m.unit_decompose(), Some((omega, -3)));
        assert_eq!(RingElem::t(&f4, Flavor::Poly).unit_decompose(), None);
    }

    #[test]
    fn unit_decompose_matches_inverse_search() {
        // f is a unit iff some λ t^k in a window inverts it.
        let f = FieldSpec::of_order(3).unwrap();
        let cands = [
            RingElem::from_ints(&f, Flavor::Laurent, -1, &[2]).unwrap(),
            RingElem::from_ints(&f, Flavor::Laurent, 0, &[1, 1]).unwrap(),
            RingElem::from_ints(&f, Flavor::Laurent, 3, &[1]).unwrap(),
            RingElem::from_ints(&f, Flavor::Poly, 0, &[2]).unwrap(),
            RingElem::from_ints(&f, Flavor::Poly, 1, &[1]).unwrap(),
            RingElem::zero(&f, Flavor::Laurent),
        ];
        for c in &cands {
            let mut found = false;
            for lam in f.units() {
                for k in -6..=6 {
                    if let Ok(m) = RingElem::monomial(&lam, k, c.flavor()) {
                        if (c * &m).is_one() {
                            found = true;
                        }
                    }
                }
            }
            assert_eq!(c.unit_decompose().is_some(), found, "{c}");
        }
    }

    #[test]
    fn polynomial_division() {
        let f = FieldSpec::of_order(5).unwrap();
        let a = RingElem::from_ints(&f, Flavor::Poly, 0, &[1, 2, 3, 4, 1]).unwrap();
        let d = RingElem::from_ints(&f, Flavor::Poly, 0, &[3, 0, 2]).unwrap();
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(-1) < 2);
    }

    #[test]
    fn laurent_division_reduces_span() {
        let f = FieldSpec::of_order(3).unwrap();
        let a = RingElem::from_ints(&f, Flavor::Laurent, -4, &[1, 2, 0, 1, 1, 2]).unwrap();
        let d = RingElem::from_ints(&f, Flavor::Laurent, 2, &[2, 1, 1]).unwrap();
        let (q, r) = a.laurent_div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.is_zero() || r.span().unwrap() < d.span().unwrap());
    }

    #[test]
    fn display_round_trip_shape() {
        let f = FieldSpec::of_order(3).unwrap();
        let a = RingElem::from_ints(&f, Flavor::Laurent, -1, &[2, 0, 1, 1]).unwrap();
        assert_eq!(a.to_string(), "2*t^-1 + t + t^2");
    }
}
