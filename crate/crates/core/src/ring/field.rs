//! Table-driven arithmetic in `F_q`, `q = p^e`.
//!
//! Elements are encoded as integers `sum c_i p^i` where `c_0 + c_1 x + ...`
//! is the residue modulo the defining polynomial. Multiplication goes through
//! discrete-log tables and addition through Zech logarithms, so both are a
//! handful of lookups.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted; tables are `O(q)`.
pub const MAX_ORDER: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[v]` for `v != 0`; `log[0] = NONE`.
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)` or `NONE` when `1 + g^d = 0`.
    zech: Vec<u32>,
    neg: Vec<u32>,
}

/// A finite field `F_{p^e}` together with its defining polynomial.
///
/// Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(p={}, e={}, modulus={:?})", self.q(), self.p(), self.e(), self.0.modulus)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

// Dense polynomials over Z/p, low degree first, used only while building tables.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !r.is_empty() {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            let idx = shift + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn digits(mut v: u64, p: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p) as u32);
        v /= p;
    }
    out
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        for low in 0..(p as u64).pow(d as u32) {
            let mut f = digits(low, p as u64, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^e}`. Without an explicit modulus the monic irreducible of
    /// degree `e` with the smallest encoding `sum c_i p^i` (over its non-leading
    /// coefficients) is chosen, so the model is reproducible.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, e })?;
        let p32 = p as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus { expected: e, got: m.to_vec() });
                }
                let m32: Vec<u32> = m.iter().map(|&c| c as u32).collect();
                if !is_irreducible(&m32, p32) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m32
            }
            None => (0..q)
                .map(|low| {
                    let mut m = digits(low, p, e as usize);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p32))
                .expect("an irreducible polynomial of every degree exists"),
        };
        Ok(Self(Arc::new(Self::build_tables(p32, e, q as u32, modulus))))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_q` for a prime power `q`, with the deterministic default modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::CompositeCharacteristic(q))?;
        Self::new(p, e, None)
    }

    fn build_tables(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Tables {
        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a as u64, p as u64, e as usize);
            let db = digits(b as u64, p as u64, e as usize);
            let mut prod = vec![0u32; 2 * e as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            encode(&poly_rem(&prod, &modulus, p), p)
        };
        let order = q - 1;
        let factors = prime_factors(order as u64);
        let pow = |mut b: u32, mut k: u64| {
            let mut r = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                k >>= 1;
            }
            r
        };
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&f| pow(g, order as u64 / f) != 1))
            .expect("multiplicative group of a field is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NONE; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, generator);
        }
        let neg: Vec<u32> = (0..q)
            .map(|v| {
                let d = digits(v as u64, p as u64, e as usize);
                encode(&d.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)
            })
            .collect();
        let add_slow = |a: u32, b: u32| {
            let da = digits(a as u64, p as u64, e as usize);
            let db = digits(b as u64, p as u64, e as usize);
            encode(&da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect::<Vec<_>>(), p)
        };
        let zech = (0..order as usize)
            .map(|d| {
                let s = add_slow(1, exp[d]);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();
        Tables { p, e, q, modulus, generator, exp, log, zech, neg }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, low degree first, monic.
    pub fn modulus(&self) -> Vec<u64> {
        self.0.modulus.iter().map(|&c| c as u64).collect()
    }

    /// A fixed generator of `F_q^x`.
    pub fn generator(&self) -> FqElem {
        self.elem(self.0.generator)
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    /// Wraps a raw encoding. Panics if out of range.
    pub fn elem(&self, v: u32) -> FqElem {
        assert!(v < self.q(), "encoding {v} out of range for F_{}", self.q());
        FqElem { field: self.clone(), v }
    }

    /// Element from its coefficient vector `c_0 + c_1 x + ...` over `Z/p`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.e() as usize {
            return Err(Error::Parse(format!("expected at most {} coefficients", self.e())));
        }
        let c: Vec<u32> = coeffs.iter().map(|&c| (c % self.p() as u64) as u32).collect();
        Ok(self.elem(encode(&c, self.p())))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        self.elem(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q()).map(move |v| self.elem(v))
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.q()).map(move |v| self.elem(v))
    }

    // Raw-encoding kernels used by the polynomial layer.

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let t = &*self.0;
        if t.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        if t.e == 1 {
            let s = a + b;
            return if s >= t.p { s - t.p } else { s };
        }
        let order = t.q - 1;
        let la = t.log[a as usize];
        let lb = t.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = t.zech[d as usize];
        if z == NONE {
            0
        } else {
            t.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.0;
        if t.e == 1 {
            return ((a as u64 * b as u64) % t.p as u64) as u32;
        }
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &*self.0;
        let order = t.q - 1;
        let l = t.log[a as usize];
        Some(t.exp[((order - l) % order) as usize])
    }

    pub(crate) fn pow_raw(&self, a: u32, n: i64) -> u32 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            assert!(n > 0, "zero has no inverse");
            return 0;
        }
        let t = &*self.0;
        let order = (t.q - 1) as i64;
        let l = t.log[a as usize] as i64;
        t.exp[(l * n.rem_euclid(order)).rem_euclid(order) as usize]
    }

    pub(crate) fn frob_raw(&self, a: u32, k: u32) -> u32 {
        let k = k % self.e();
        if k == 0 || a == 0 {
            return a;
        }
        let pk = (self.p() as i64).pow(k);
        self.pow_raw(a, pk)
    }

    pub(crate) fn log_raw(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    pub(crate) fn coeffs_raw(&self, a: u32) -> Vec<u64> {
        digits(a as u64, self.p() as u64, self.e() as usize).into_iter().map(u64::from).collect()
    }

    /// Whether `a` lies in the prime field.
    pub(crate) fn in_prime_field_raw(&self, a: u32) -> bool {
        a < self.p()
    }
}

/// An element of `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: FieldSpec,
    v: u32,
}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e() == 1 {
            write!(f, "{}", self.v)
        } else {
            write!(f, "{:?}", self.coeffs())
        }
    }
}

impl FqElem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Integer encoding `sum c_i p^i`.
    pub fn raw(&self) -> u32 {
        self.v
    }

    /// Residue coefficients `c_0 .. c_{e-1}` over `Z/p`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs_raw(self.v)
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        self.field.elem(self.field.add_raw(self.v, other.v))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        self.field.elem(self.field.sub_raw(self.v, other.v))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        self.field.elem(self.field.mul_raw(self.v, other.v))
    }

    pub fn neg(&self) -> Self {
        self.field.elem(self.field.neg_raw(self.v))
    }

    pub fn inv(&self) -> Option<Self> {
        self.field.inv_raw(self.v).map(|v| self.field.elem(v))
    }

    /// `x^n`; negative exponents invert. Panics on `0^n` with `n < 0`.
    pub fn pow(&self, n: i64) -> Self {
        self.field.elem(self.field.pow_raw(self.v, n))
    }

    /// `x^(p^k)`, the `k`-fold Frobenius.
    pub fn frobenius(&self, k: u32) -> Self {
        self.field.elem(self.field.frob_raw(self.v, k))
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        let l = self.field.log_raw(self.v)? as u64;
        let n = (self.field.q() - 1) as u64;
        Some(n / gcd(l, n))
    }

    pub fn in_prime_field(&self) -> bool {
        self.field.in_prime_field_raw(self.v)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
