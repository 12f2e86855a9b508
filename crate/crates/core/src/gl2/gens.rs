use super::types::delta_t;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, FqElem, RingElem};

/// A letter over the alphabet `GL_2(F_q) ∪ {δ(t,1)^±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Const(Mat),
    Delta(i8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    pub field: FieldSpec,
    pub tokens: Vec<Token>,
}

impl GeneratorWord {
    pub fn evaluate(&self) -> Result<Mat> {
        let d = delta_t(&self.field);
        let di = d.inverse()?;
        let mut acc = Mat::identity(&self.field, Flavor::Laurent, 2);
        for tok in &self.tokens {
            acc = match tok {
                Token::Const(m) => &acc * m,
                Token::Delta(1) => &acc * &d,
                Token::Delta(_) => &acc * &di,
            };
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

struct Builder {
    field: FieldSpec,
    tokens: Vec<Token>,
}

impl Builder {
    fn push_const(&mut self, m: Mat) {
        if let Some(Token::Const(prev)) = self.tokens.last_mut() {
            *prev = &*prev * &m;
            if prev.is_identity() {
                self.tokens.pop();
            }
        } else if !m.is_identity() {
            self.tokens.push(Token::Const(m));
        }
    }

    fn push_delta(&mut self, k: i64) {
        let s = k.signum() as i8;
        for _ in 0..k.abs() {
            if let Some(Token::Delta(prev)) = self.tokens.last() {
                if *prev == -s {
                    self.tokens.pop();
                    continue;
                }
            }
            self.tokens.push(Token::Delta(s));
        }
    }

    fn cnst(&self, a: &FqElem, b: &FqElem, c: &FqElem, d: &FqElem) -> Mat {
        Mat::constant(&self.field, Flavor::Laurent, 2, &[a.clone(), b.clone(), c.clone(), d.clone()])
    }

    fn diag(&self, a: &FqElem, b: &FqElem) -> Mat {
        let z = self.field.zero();
        self.cnst(a, &z, &z, b)
    }

    fn u(&self) -> Mat {
        let (z, o) = (self.field.zero(), self.field.one());
        self.cnst(&z, &o, &o, &z)
    }

    /// `δ(λ t^i, μ t^j) = δ(λ, μ) δ(t,1)^i (u δ(t,1) u)^j`.
    fn push_diag(&mut self, a: &RingElem, b: &RingElem) -> Result<()> {
        let (la, i) = a.unit_decompose().ok_or(Error::NotInvertible)?;
        let (lb, j) = b.unit_decompose().ok_or(Error::NotInvertible)?;
        self.push_const(self.diag(&la, &lb));
        self.push_delta(i);
        if j != 0 {
            self.push_const(self.u());
            self.push_delta(j);
            self.push_const(self.u());
        }
        Ok(())
    }

    /// `e12(λ t^k) = δ(λ t^k, 1) e12(1) δ(λ^-1 t^-k, 1)`, monomial by monomial.
    fn push_e12(&mut self, f: &RingElem) -> Result<()> {
        let (o, z) = (self.field.one(), self.field.zero());
        let Some(lo) = f.min_exp() else { return Ok(()) };
        for k in lo..=f.max_exp().unwrap() {
            let c = f.coeff(k);
            if c.is_zero() {
                continue;
            }
            let ci = c.inv().unwrap();
            self.push_const(self.diag(&c, &o));
            self.push_delta(k);
            self.push_const(self.cnst(&o, &o, &z, &o));
            self.push_delta(-k);
            self.push_const(self.diag(&ci, &o));
        }
        Ok(())
    }
}

/// Writes `g ∈ GL_2(F_q[t, t^-1])` over `GL_2(F_q) ∪ {δ(t,1)^±1}`.
///
/// Euclidean elimination on the first column, measured by exponent span,
/// reduces `g` to an upper triangular matrix; each shear and diagonal factor
/// is then spelled out in the generators.
pub fn generator_decompose(g: &Mat) -> Result<GeneratorWord> {
    if g.n() != 2 || g.flavor() != Flavor::Laurent {
        return Err(Error::Dimension("generator words are for 2x2 Laurent matrices".into()));
    }
    if !g.det().is_unit() {
        return Err(Error::NotInvertible);
    }
    let field = g.field().clone();
    let mut b = Builder { field: field.clone(), tokens: Vec::new() };
    let u = b.u();
    let mut cur = g.clone();
    while !cur.get(1, 0).is_zero() {
        let a = cur.get(0, 0);
        let c = cur.get(1, 0);
        if !a.is_zero() && a.span() >= c.span() {
            let (q, _) = a.laurent_div_rem(c)?;
            cur = &Mat::e12(&q.neg()) * &cur;
            b.push_e12(&q)?;
        } else {
            cur = &u * &cur;
            b.push_const(u.clone());
        }
    }
    let a = cur.get(0, 0).clone();
    let d = cur.get(1, 1).clone();
    let ai = a.inverse().ok_or(Error::NotInvertible)?;
    let f = &ai * cur.get(0, 1);
    b.push_diag(&a, &d)?;
    b.push_e12(&f)?;
    Ok(GeneratorWord { field, tokens: b.tokens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_is_one_token() {
        let f = FieldSpec::prime(3).unwrap();
        let k = Mat::constant(&f, Flavor::Laurent, 2, &[f.from_int(1), f.from_int(2), f.from_int(1), f.from_int(0)]);
        let w = generator_decompose(&k).unwrap();
        assert_eq!(w.tokens, vec![Token::Const(k)]);
    }

    #[test]
    fn delta_one_t() {
        let f = FieldSpec::prime(2).unwrap();
        let one = RingElem::one(&f, Flavor::Laurent);
        let d = Mat::delta(&one, &RingElem::t(&f, Flavor::Laurent));
        let w = generator_decompose(&d).unwrap();
        let u = Mat::swap(&f, Flavor::Laurent);
        assert_eq!(w.tokens, vec![Token::Const(u.clone()), Token::Delta(1), Token::Const(u)]);
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2, 3, 4] {
            let f = FieldSpec::of_order(q).unwrap();
            let x = RingElem::t_pow(&f, Flavor::Laurent, -2).unwrap();
            let e = Mat::e21(&x);
            assert_eq!(generator_decompose(&e).unwrap().evaluate().unwrap(), e);
            for _ in 0..30 {
                let g = random::gl(&mut rng, &f, Flavor::Laurent, 2, 6, false);
                assert_eq!(generator_decompose(&g).unwrap().evaluate().unwrap(), g);
            }
        }
    }
}
