//! Explicit commutator words witnessing that elementary matrices are
//! products of commutators.

use super::Mat;
use crate::error::{Error, Result};
use crate::ring::{FieldSpec, Flavor, RingElem};

/// `prod [a_i, b_i]`, kept as factors so it can be re-evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorWord {
    pub pairs: Vec<(Mat, Mat)>,
}

impl CommutatorWord {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Evaluates the word; `n`, `field`, `flavor` fix the identity for empty words.
    pub fn evaluate(&self, field: &FieldSpec, flavor: Flavor, n: usize) -> Result<Mat> {
        let mut acc = Mat::identity(field, flavor, n);
        for (a, b) in &self.pairs {
            acc = acc.checked_mul(&Mat::commutator(a, b)?)?;
        }
        Ok(acc)
    }
}

/// `e_ij(x) = [e_ik(x), e_kj(1)]` for any `k` outside `{i, j}` (1-based).
pub fn elem_as_commutator(i: usize, j: usize, x: &RingElem, n: usize) -> Result<CommutatorWord> {
    if n < 3 {
        return Err(Error::Dimension("needs n >= 3".into()));
    }
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Index(format!("bad index pair ({i}, {j}) for n = {n}")));
    }
    let k = (1..=n).find(|&k| k != i && k != j).unwrap();
    let one = RingElem::one(x.field(), x.flavor());
    Ok(CommutatorWord { pairs: vec![(Mat::elementary(i, k, x, n)?, Mat::elementary(k, j, &one, n)?)] })
}

/// `e12(x)` in `SL_2` as a product of `[δ(λ, λ^-1), e12(y)]`, for `q >= 4`.
///
/// With `λ` generating `F_q^×` and `u = λ^2 - 1`, each commutator contributes
/// `e12(u y)`. The word has `d = ord(u)` factors, all with `y = x / (d u)`;
/// `d` divides `q - 1` so it is invertible in `F_p`.
pub fn elem_as_commutator_sl2(x: &RingElem) -> Result<CommutatorWord> {
    let field = x.field();
    let flavor = x.flavor();
    if field.q() < 4 {
        return Err(Error::NoCertificate(format!("q = {} < 4", field.q())));
    }
    if x.is_zero() {
        return Ok(CommutatorWord { pairs: Vec::new() });
    }
    let lambda = field.generator();
    let u = lambda.mul(&lambda).sub(&field.one());
    let d = u.order().expect("u != 0 since q >= 4");
    let coef = field.from_int(d as i64).mul(&u).inv().expect("d coprime to p");
    let y = x.scale(&coef);
    let delta = Mat::delta(&RingElem::constant(&lambda, flavor), &RingElem::constant(&lambda.inv().unwrap(), flavor));
    let e = Mat::e12(&y);
    Ok(CommutatorWord { pairs: vec![(delta, e); d as usize] })
}
