use super::word::{word_reduce, AmalgamWord, NagaoSpec};
use crate::automorphism::Group;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{Flavor, RingElem};

/// The swap used in the Euclidean loop: `[[0,1],[1,0]]` for `GL_2`,
/// `[[0,1],[-1,0]]` for `SL_2`.
pub fn nagao_swap(spec: &NagaoSpec) -> Mat {
    let f = &spec.field;
    let o = RingElem::one(f, Flavor::Poly);
    let z = RingElem::zero(f, Flavor::Poly);
    let c = match spec.group {
        Group::GL => o.clone(),
        Group::SL => o.neg(),
    };
    Mat::from_rows(vec![vec![z.clone(), o], vec![c, z]]).unwrap()
}

/// Factors `g` in `GL_2(F[t])` (or `SL_2(F[t])`) as a weakly reduced word in
/// `G0` and `B`.
///
/// Euclidean reduction of the first column: while the lower-left entry `c`
/// is nonzero, either clear the top of `a` modulo `c` with a shear from `B`
/// or swap the rows with an element of `G0`; the remainder is upper
/// triangular.
pub fn nagao_decompose(g: &Mat, group: Group) -> Result<AmalgamWord> {
    if g.n() != 2 || g.flavor() != Flavor::Poly {
        return Err(Error::Dimension("Nagao decomposition is for 2x2 matrices over F[t]".into()));
    }
    let spec = NagaoSpec::new(g.field(), group);
    let d = g.det();
    let ok = match group {
        Group::GL => d.is_unit(),
        Group::SL => d.is_one(),
    };
    if !ok {
        return Err(Error::NotInvertible);
    }
    let swap = nagao_swap(&spec);
    let swap_inv = swap.inverse()?;
    let mut raw = Vec::new();
    let mut cur = g.clone();
    while !cur.get(1, 0).is_zero() {
        let a = cur.get(0, 0);
        let c = cur.get(1, 0);
        if !a.is_zero() && a.degree() >= c.degree() {
            let (q, _) = a.div_rem(c)?;
            cur = &Mat::e12(&q.neg()) * &cur;
            raw.push(Mat::e12(&q));
        } else {
            cur = &swap * &cur;
            raw.push(swap_inv.clone());
        }
    }
    raw.push(cur);
    word_reduce(&raw, &spec)
}
