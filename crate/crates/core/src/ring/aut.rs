use super::elem::{Flavor, RingElem};
use super::field::{FieldSpec, FqElem};
use crate::error::{Error, Result};

/// An `F_p`-algebra automorphism of `F[t]` or `F[t, t^-1]`:
/// scalars go through the `k`-th Frobenius, and `t -> a t^eps + b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingAut {
    flavor: Flavor,
    frob_exp: u32,
    a: FqElem,
    b: FqElem,
    eps: i8,
}

impl RingAut {
    pub fn new(flavor: Flavor, frob_exp: u32, a: FqElem, b: FqElem, eps: i8) -> Result<Self> {
        let field = a.field().clone();
        if b.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if frob_exp >= field.e() {
            return Err(Error::BadRingAut(format!("frobenius exponent {frob_exp} >= e = {}", field.e())));
        }
        if a.is_zero() {
            return Err(Error::BadRingAut("a must be nonzero".into()));
        }
        if eps != 1 && eps != -1 {
            return Err(Error::BadRingAut("eps must be +1 or -1".into()));
        }
        match flavor {
            Flavor::Poly if eps != 1 => return Err(Error::BadRingAut("eps = -1 needs the Laurent ring".into())),
            Flavor::Laurent if !b.is_zero() => return Err(Error::BadRingAut("b must vanish over the Laurent ring".into())),
            _ => {}
        }
        Ok(Self { flavor, frob_exp, a, b, eps })
    }

    pub fn identity(field: &FieldSpec, flavor: Flavor) -> Self {
        Self { flavor, frob_exp: 0, a: field.one(), b: field.zero(), eps: 1 }
    }

    /// Pure Frobenius `x -> x^(p^k)` on scalars, fixing `t`.
    pub fn frobenius(field: &FieldSpec, flavor: Flavor, k: u32) -> Result<Self> {
        Self::new(flavor, k, field.one(), field.zero(), 1)
    }

    /// Every automorphism of the ring with `a, b` in `F_q`.
    pub fn all(field: &FieldSpec, flavor: Flavor) -> Vec<Self> {
        let mut out = Vec::new();
        let epss: &[i8] = match flavor {
            Flavor::Poly => &[1],
            Flavor::Laurent => &[1, -1],
        };
        for k in 0..field.e() {
            for &eps in epss {
                for a in field.units() {
                    match flavor {
                        Flavor::Poly => {
                            for b in field.elements() {
                                out.push(Self { flavor, frob_exp: k, a: a.clone(), b, eps });
                            }
                        }
                        Flavor::Laurent => out.push(Self { flavor, frob_exp: k, a: a.clone(), b: field.zero(), eps }),
                    }
                }
            }
        }
        out
    }

    pub fn field(&self) -> &FieldSpec {
        self.a.field()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn frob_exp(&self) -> u32 {
        self.frob_exp
    }

    pub fn a(&self) -> &FqElem {
        &self.a
    }

    pub fn b(&self) -> &FqElem {
        &self.b
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn is_identity(&self) -> bool {
        self.frob_exp == 0 && self.a.is_one() && self.b.is_zero() && self.eps == 1
    }

    pub fn apply_scalar(&self, x: &FqElem) -> FqElem {
        x.frobenius(self.frob_exp)
    }

    pub fn apply(&self, f: &RingElem) -> Result<RingElem> {
        if f.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if f.flavor() != self.flavor {
            return Err(Error::FlavorMismatch);
        }
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &RingElem) -> RingElem {
        let field = self.field();
        let k = self.frob_exp;
        if f.is_zero() {
            return f.clone();
        }
        if self.b.is_zero() {
            // c t^j -> frob(c) a^j t^(eps j): a monomial-wise map.
            let lo = f.low();
            let n = f.raw_coeffs().len() as i64;
            let a = self.a.raw();
            let mapped: Vec<u32> = f
                .raw_coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| field.mul_raw(field.frob_raw(c, k), field.pow_raw(a, lo + i as i64)))
                .collect();
            return if self.eps == 1 {
                RingElem::from_raw(field, self.flavor, lo, mapped)
            } else {
                let rev: Vec<u32> = mapped.into_iter().rev().collect();
                RingElem::from_raw(field, self.flavor, -(lo + n - 1), rev)
            };
        }
        // Polynomial case with a shift: Horner in (a t + b).
        let sub = RingElem::from_raw(field, self.flavor, 0, vec![self.b.raw(), self.a.raw()]);
        let mut acc = RingElem::zero(field, self.flavor);
        for &c in f.raw_coeffs().iter().rev() {
            acc = &acc * &sub;
            let c = RingElem::from_raw(field, self.flavor, 0, vec![field.frob_raw(c, k)]);
            acc = &acc + &c;
        }
        acc
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch);
        }
        let k1 = self.frob_exp;
        let a2 = other.a.frobenius(k1);
        let b2 = other.b.frobenius(k1);
        let frob_exp = (k1 + other.frob_exp) % self.field().e();
        let (a, b) = match self.flavor {
            Flavor::Poly => (a2.mul(&self.a), a2.mul(&self.b).add(&b2)),
            Flavor::Laurent => (a2.mul(&self.a.pow(other.eps as i64)), self.field().zero()),
        };
        Ok(Self { flavor: self.flavor, frob_exp, a, b, eps: self.eps * other.eps })
    }

    pub fn order(&self) -> u64 {
        let mut cur = self.clone();
        let mut n = 1;
        while !cur.is_identity() {
            cur = cur.compose(self).expect("same ring");
            n += 1;
        }
        n
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut cur = Self::identity(self.field(), self.flavor);
        for _ in 0..n {
            cur = cur.compose(self).expect("same ring");
        }
        cur
    }

    pub fn inverse(&self) -> Self {
        self.pow(self.order() - 1)
    }
}
