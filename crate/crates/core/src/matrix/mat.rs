use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{FieldSpec, Flavor, FqElem, RingAut, RingElem};

/// A square matrix over `F_q[t]` or `F_q[t, t^-1]`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    field: FieldSpec,
    flavor: Flavor,
    entries: Vec<RingElem>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<RingElem>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        let field = rows[0][0].field().clone();
        let flavor = rows[0][0].flavor();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in {n}x{n} matrix", row.len())));
            }
            for e in row {
                if e.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                if e.flavor() != flavor {
                    return Err(Error::FlavorMismatch);
                }
                entries.push(e);
            }
        }
        Ok(Self { n, field, flavor, entries })
    }

    pub(crate) fn from_entries(field: &FieldSpec, flavor: Flavor, n: usize, entries: Vec<RingElem>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, field: field.clone(), flavor, entries }
    }

    pub fn identity(field: &FieldSpec, flavor: Flavor, n: usize) -> Self {
        Self::scalar(&RingElem::one(field, flavor), n)
    }

    pub fn zero(field: &FieldSpec, flavor: Flavor, n: usize) -> Self {
        Self::from_entries(field, flavor, n, vec![RingElem::zero(field, flavor); n * n])
    }

    pub fn scalar(c: &RingElem, n: usize) -> Self {
        let mut m = Self::zero(c.field(), c.flavor(), n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(d: &[RingElem]) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::Dimension("empty diagonal".into()));
        }
        let mut m = Self::zero(d[0].field(), d[0].flavor(), n);
        for (i, x) in d.iter().enumerate() {
            if x.field() != &m.field {
                return Err(Error::FieldMismatch);
            }
            if x.flavor() != m.flavor {
                return Err(Error::FlavorMismatch);
            }
            m.entries[i * n + i] = x.clone();
        }
        Ok(m)
    }

    /// `e_ij(λ)` with 1-based indices as in the usual notation.
    pub fn elementary(i: usize, j: usize, lambda: &RingElem, n: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Index(format!("e_{i}{j} needs i != j")));
        }
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Index(format!("e_{i}{j} out of range for n = {n}")));
        }
        let mut m = Self::identity(lambda.field(), lambda.flavor(), n);
        m.entries[(i - 1) * n + (j - 1)] = lambda.clone();
        Ok(m)
    }

    /// 2x2 helpers.
    pub fn e12(x: &RingElem) -> Self {
        Self::elementary(1, 2, x, 2).unwrap()
    }

    pub fn e21(x: &RingElem) -> Self {
        Self::elementary(2, 1, x, 2).unwrap()
    }

    pub fn delta(a: &RingElem, b: &RingElem) -> Self {
        Self::diagonal(&[a.clone(), b.clone()]).unwrap()
    }

    /// The antidiagonal swap `[[0,1],[1,0]]`.
    pub fn swap(field: &FieldSpec, flavor: Flavor) -> Self {
        let o = RingElem::one(field, flavor);
        let z = RingElem::zero(field, flavor);
        Self::from_entries(field, flavor, 2, vec![z.clone(), o.clone(), o, z])
    }

    /// `h(α) = diag(1, ..., 1, α)`.
    pub fn h(alpha: &RingElem, n: usize) -> Self {
        let mut m = Self::identity(alpha.field(), alpha.flavor(), n);
        m.entries[n * n - 1] = alpha.clone();
        m
    }

    /// Constant matrix from field elements, row-major.
    pub fn constant(field: &FieldSpec, flavor: Flavor, n: usize, vals: &[FqElem]) -> Self {
        assert_eq!(vals.len(), n * n);
        Self::from_entries(field, flavor, n, vals.iter().map(|v| RingElem::constant(v, flavor)).collect())
    }

    /// Places `block` in the top-left corner of `I_n`.
    pub fn embed(block: &Mat, n: usize) -> Result<Self> {
        if block.n > n {
            return Err(Error::Dimension(format!("cannot embed {} into {n}", block.n)));
        }
        let mut m = Self::identity(&block.field, block.flavor, n);
        for i in 0..block.n {
            for j in 0..block.n {
                m.entries[i * n + j] = block.get(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Entry at 0-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &RingElem {
        &self.entries[r * self.n + c]
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<RingElem>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn conformable(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch);
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RingElem::zero(&self.field, self.flavor);
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    let b = &other.entries[k * n + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.push(acc);
            }
        }
        Ok(Self::from_entries(&self.field, self.flavor, n, out))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self::from_entries(&self.field, self.flavor, self.n, entries))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self::from_entries(&self.field, self.flavor, self.n, entries))
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        self.map(|x| x * c)
    }

    pub fn map(&self, f: impl Fn(&RingElem) -> RingElem) -> Self {
        Self::from_entries(&self.field, self.flavor, self.n, self.entries.iter().map(f).collect())
    }

    /// Entrywise ring automorphism.
    pub fn apply_ring_aut(&self, rho: &RingAut) -> Result<Self> {
        if rho.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if rho.flavor() != self.flavor {
            return Err(Error::FlavorMismatch);
        }
        Ok(self.map(|x| rho.apply_unchecked(x)))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n].clone()).collect();
        Self::from_entries(&self.field, self.flavor, n, entries)
    }

    pub fn trace(&self) -> RingElem {
        let mut acc = RingElem::zero(&self.field, self.flavor);
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> RingElem {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> RingElem {
        let k = rows.len();
        match k {
            1 => return self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]);
                let b = self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]);
                return &a - &b;
            }
            _ => {}
        }
        let mut acc = RingElem::zero(&self.field, self.flavor);
        for (ci, &c) in cols.iter().enumerate() {
            let a = self.get(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * &self.minor_det(&rows[1..], &sub_cols);
            acc = if ci % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(&self.field, self.flavor, 1);
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // adj[i][j] = (-1)^(i+j) * minor(j, i)
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.minor_det(&rows, &cols);
                entries.push(if (i + j) % 2 == 0 { m } else { m.neg() });
            }
        }
        Self::from_entries(&self.field, self.flavor, n, entries)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let dinv = d.inverse().ok_or(Error::NotInvertible)?;
        if self.n == 2 {
            let (a, b, c, e) = (self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1));
            let entries = vec![e * &dinv, &b.neg() * &dinv, &c.neg() * &dinv, a * &dinv];
            return Ok(Self::from_entries(&self.field, self.flavor, 2, entries));
        }
        Ok(self.adjugate().scale(&dinv))
    }

    /// `self^k`; negative powers go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(&self.field, self.flavor, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// The scalar `c` if `self = c I`.
    pub fn scalar_value(&self) -> Option<RingElem> {
        let c = self.get(0, 0);
        let ok = (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j) == c } else { self.get(i, j).is_zero() }));
        ok.then(|| c.clone())
    }

    /// All entries are constants.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(RingElem::is_constant)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn gl_member(&self) -> bool {
        self.det().is_unit()
    }

    pub fn sl_member(&self) -> bool {
        self.det().is_one()
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        Ok(&(&(a * b) * &a.inverse()?) * &b.inverse()?)
    }

    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        for e in &self.entries {
            e.key_bytes(&mut out);
        }
        out
    }
}

impl std::ops::Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix mismatch in mul")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
