//! The test elements `x_m = e12(s^m) e21(-s^m)` and their trace powers.

use super::Mat;
use crate::error::{Error, Result};
use crate::ring::{special_s, FieldSpec, Flavor, RingElem};

/// `diag([[1 - s^2m, s^m], [-s^m, 1]], I_{n-2})`.
pub fn witness_x(m: u32, field: &FieldSpec, flavor: Flavor, n: usize) -> Result<Mat> {
    if m < 1 {
        return Err(Error::Precondition("witness index m must be >= 1".into()));
    }
    if n < 2 {
        return Err(Error::Dimension("witness needs n >= 2".into()));
    }
    let u = special_s(field, flavor).pow(m);
    let block = &Mat::e12(&u) * &Mat::e21(&u.neg());
    Mat::embed(&block, n)
}

/// `tr(x_m^r)` of the 2x2 block via `tr(x^r) = (2 - u^2) tr(x^(r-1)) - tr(x^(r-2))`,
/// `u = s^m`.
pub fn trace_power(m: u32, r: u32, field: &FieldSpec, flavor: Flavor) -> Result<RingElem> {
    if m < 1 || r < 1 {
        return Err(Error::Precondition("trace_power needs m, r >= 1".into()));
    }
    let u2 = special_s(field, flavor).pow(2 * m);
    let two = RingElem::from_int(field, flavor, 2);
    let four = RingElem::from_int(field, flavor, 4);
    let c = &two - &u2;
    let t1 = c.clone();
    if r == 1 {
        return Ok(t1);
    }
    let t2 = &(&two - &(&four * &u2)) + &(&u2 * &u2);
    let (mut prev, mut cur) = (t1, t2);
    for _ in 2..r {
        let next = &(&c * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
