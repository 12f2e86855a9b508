use crate::automorphism::Group;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor};

/// Membership oracles for an amalgam `Γ0 *_Λ Γ1`.
pub trait AmalgamSpec {
    fn in_factor0(&self, m: &Mat) -> bool;
    fn in_factor1(&self, m: &Mat) -> bool;
    fn in_edge(&self, m: &Mat) -> bool;
    /// Identity element of the ambient group.
    fn identity(&self) -> Mat;
}

/// The Nagao splitting of `GL_2(F[t])` (`GL_2(F) *_{B0} B`) or of
/// `SL_2(F[t])` (`SL_2(F) *_{B1} B1(F[t])`).
#[derive(Clone, Debug)]
pub struct NagaoSpec {
    pub field: FieldSpec,
    pub group: Group,
}

impl NagaoSpec {
    pub fn new(field: &FieldSpec, group: Group) -> Self {
        Self { field: field.clone(), group }
    }

    fn in_group(&self, m: &Mat) -> bool {
        if m.n() != 2 || m.flavor() != Flavor::Poly || m.field() != &self.field {
            return false;
        }
        let d = m.det();
        match self.group {
            Group::GL => d.is_unit(),
            Group::SL => d.is_one(),
        }
    }
}

impl AmalgamSpec for NagaoSpec {
    fn in_factor0(&self, m: &Mat) -> bool {
        self.in_group(m) && m.is_constant()
    }

    fn in_factor1(&self, m: &Mat) -> bool {
        self.in_group(m) && m.is_upper_triangular()
    }

    fn in_edge(&self, m: &Mat) -> bool {
        self.in_factor0(m) && m.is_upper_triangular()
    }

    fn identity(&self) -> Mat {
        Mat::identity(&self.field, Flavor::Poly, 2)
    }
}

/// A weakly reduced expression: alternating factors outside the edge group.
/// A nontrivial edge element is the single factor tagged 0; the identity is
/// the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamWord {
    pub factors: Vec<(u8, Mat)>,
}

impl AmalgamWord {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn evaluate(&self, spec: &dyn AmalgamSpec) -> Mat {
        self.factors.iter().fold(spec.identity(), |acc, (_, m)| &acc * m)
    }

    pub fn mats(&self) -> Vec<Mat> {
        self.factors.iter().map(|(_, m)| m.clone()).collect()
    }

    /// Word of the inverse element.
    pub fn inverse(&self) -> Result<Self> {
        let factors = self.factors.iter().rev().map(|(t, m)| Ok((*t, m.inverse()?))).collect::<Result<_>>()?;
        Ok(Self { factors })
    }

    pub fn first_tag(&self) -> Option<u8> {
        self.factors.first().map(|f| f.0)
    }

    pub fn last_tag(&self) -> Option<u8> {
        self.factors.last().map(|f| f.0)
    }
}

/// `l(γ)`: factor count of a weakly reduced word.
pub fn word_length(w: &AmalgamWord) -> usize {
    w.len()
}

/// Checks the weakly reduced shape against the oracles.
pub fn is_weakly_reduced(w: &AmalgamWord, spec: &dyn AmalgamSpec) -> bool {
    if w.len() == 1 {
        let (tag, m) = &w.factors[0];
        if spec.in_edge(m) {
            return *tag == 0 && !m.is_identity();
        }
    }
    let in_tag = |t: u8, m: &Mat| if t == 0 { spec.in_factor0(m) } else { spec.in_factor1(m) };
    w.factors.iter().all(|(t, m)| in_tag(*t, m) && !spec.in_edge(m)) && w.factors.windows(2).all(|p| p[0].0 != p[1].0)
}

/// Reduces a product of factor elements to a weakly reduced word for the
/// same element: adjacent factors from the same side are merged and edge
/// elements are absorbed into a neighbour.
pub fn word_reduce(raw: &[Mat], spec: &dyn AmalgamSpec) -> Result<AmalgamWord> {
    let mut stack: Vec<(u8, Mat)> = Vec::new();
    let mut pre = spec.identity();
    for (pos, m) in raw.iter().enumerate() {
        let tag = if spec.in_edge(m) {
            None
        } else if spec.in_factor0(m) {
            Some(0)
        } else if spec.in_factor1(m) {
            Some(1)
        } else {
            return Err(Error::NotInFactor(pos));
        };
        push(&mut stack, &mut pre, tag, m.clone(), spec);
    }
    if stack.is_empty() {
        if pre.is_identity() {
            return Ok(AmalgamWord { factors: Vec::new() });
        }
        return Ok(AmalgamWord { factors: vec![(0, pre)] });
    }
    Ok(AmalgamWord { factors: stack })
}

fn push(stack: &mut Vec<(u8, Mat)>, pre: &mut Mat, tag: Option<u8>, m: Mat, spec: &dyn AmalgamSpec) {
    match tag {
        None => match stack.last_mut() {
            Some(top) => top.1 = &top.1 * &m,
            None => *pre = &*pre * &m,
        },
        Some(j) => {
            let m = if stack.is_empty() && !pre.is_identity() {
                let merged = &*pre * &m;
                *pre = spec.identity();
                merged
            } else {
                m
            };
            match stack.last() {
                Some((tj, _)) if *tj == j => {
                    let (_, top) = stack.pop().unwrap();
                    let merged = &top * &m;
                    if spec.in_edge(&merged) {
                        push(stack, pre, None, merged, spec);
                    } else {
                        stack.push((j, merged));
                    }
                }
                _ => stack.push((j, m)),
            }
        }
    }
}

/// Outcome of testing the parity dichotomy `l(zxw) = m` or odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityVerdict {
    EqualsM,
    Odd,
    Violation,
    HypothesisViolation,
}

/// For weakly reduced `z = u1..uk`, `w = vk..v1` with `uk, vk` in `Γ0`,
/// `k >= 2`, and `x` of even length `m >= 2`: computes `l(zxw)` by full
/// reduction and reports which branch of the dichotomy holds.
pub fn length_parity(z: &AmalgamWord, x: &AmalgamWord, w: &AmalgamWord, spec: &dyn AmalgamSpec) -> Result<(ParityVerdict, usize)> {
    let k = z.len();
    let m = x.len();
    let ok = k >= 2
        && w.len() == k
        && m >= 2
        && m % 2 == 0
        && z.last_tag() == Some(0)
        && w.first_tag() == Some(0)
        && [z, x, w].iter().all(|v| is_weakly_reduced(v, spec));
    if !ok {
        return Ok((ParityVerdict::HypothesisViolation, 0));
    }
    let raw: Vec<Mat> = z.mats().into_iter().chain(x.mats()).chain(w.mats()).collect();
    let l = word_reduce(&raw, spec)?.len();
    let verdict = if l == m {
        ParityVerdict::EqualsM
    } else if l % 2 == 1 {
        ParityVerdict::Odd
    } else {
        ParityVerdict::Violation
    };
    Ok((verdict, l))
}

/// Replaces adjacent `x_i, x_{i+1}` by `x_i h_i, h_i^-1 x_{i+1}` for the given
/// edge elements, one per junction (extra elements are ignored).
pub fn shuffle_edges(w: &AmalgamWord, hs: &[Mat]) -> Result<AmalgamWord> {
    let mut factors = w.factors.clone();
    for (i, h) in hs.iter().enumerate().take(factors.len().saturating_sub(1)) {
        let hi = h.inverse()?;
        factors[i].1 = &factors[i].1 * h;
        factors[i + 1].1 = &hi * &factors[i + 1].1;
    }
    Ok(AmalgamWord { factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingElem;

    fn setup() -> (FieldSpec, NagaoSpec) {
        let f = FieldSpec::prime(3).unwrap();
        (f.clone(), NagaoSpec::new(&f, Group::GL))
    }

    fn c(f: &FieldSpec, v: i64) -> RingElem {
        RingElem::from_int(f, Flavor::Poly, v)
    }

    #[test]
    fn merges_same_factor() {
        let (f, spec) = setup();
        let u = Mat::swap(&f, Flavor::Poly);
        let g = Mat::e21(&c(&f, 1));
        let w = word_reduce(&[u.clone(), g.clone()], &spec).unwrap();
        assert!(w.len() <= 1);
        assert_eq!(w.evaluate(&spec), &u * &g);
        let w = word_reduce(&[u.clone(), u.clone()], &spec).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn absorbs_edge_elements() {
        let (f, spec) = setup();
        let u = Mat::swap(&f, Flavor::Poly);
        let b0 = Mat::e12(&c(&f, 2));
        let g1 = Mat::e21(&c(&f, 1));
        let w = word_reduce(&[u.clone(), b0.clone(), g1.clone()], &spec).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.evaluate(&spec), &(&u * &b0) * &g1);
        let e = word_reduce(&[b0.clone()], &spec).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.factors[0].0, 0);
        assert!(word_reduce(&[spec.identity()], &spec).unwrap().is_empty());
    }

    #[test]
    fn alternating_word_untouched() {
        let (f, spec) = setup();
        let u = Mat::swap(&f, Flavor::Poly);
        let b = Mat::e12(&RingElem::t(&f, Flavor::Poly));
        let w = word_reduce(&[u.clone(), b.clone()], &spec).unwrap();
        assert_eq!(w.factors, vec![(0, u.clone()), (1, b.clone())]);
        let mut raw = Vec::new();
        for _ in 0..4 {
            raw.push(u.clone());
            raw.push(b.clone());
        }
        assert_eq!(word_reduce(&raw, &spec).unwrap().len(), 8);
    }

    #[test]
    fn rejects_outside_factors() {
        let (f, spec) = setup();
        let t = RingElem::t(&f, Flavor::Poly);
        let lower = Mat::e21(&t);
        assert_eq!(word_reduce(&[spec.identity(), lower], &spec), Err(Error::NotInFactor(1)));
    }

    #[test]
    fn parity_hypotheses() {
        let (f, spec) = setup();
        let u = Mat::swap(&f, Flavor::Poly);
        let b = Mat::e12(&RingElem::t(&f, Flavor::Poly));
        let x = word_reduce(&[u.clone(), b.clone()], &spec).unwrap();
        let short = word_reduce(&[u.clone()], &spec).unwrap();
        assert_eq!(length_parity(&short, &x, &short, &spec).unwrap().0, ParityVerdict::HypothesisViolation);
        let z = word_reduce(&[b.clone(), u.clone()], &spec).unwrap();
        let w = word_reduce(&[u.clone(), b.clone()], &spec).unwrap();
        let (v, _) = length_parity(&z, &x, &w, &spec).unwrap();
        assert!(matches!(v, ParityVerdict::EqualsM | ParityVerdict::Odd));
    }
}
