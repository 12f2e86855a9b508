//! Seeded generators of ring elements and invertible matrices.

use rand::Rng;

use crate::matrix::Mat;
use crate::ring::{FieldSpec, Flavor, FqElem, RingElem};

pub fn elem<R: Rng>(rng: &mut R, field: &FieldSpec, flavor: Flavor, lo: i64, hi: i64) -> RingElem {
    let lo = if flavor == Flavor::Poly { lo.max(0) } else { lo };
    if hi < lo {
        return RingElem::zero(field, flavor);
    }
    let q = field.q();
    let coeffs: Vec<FqElem> = (lo..=hi).map(|_| field.elem(rng.gen_range(0..q))).collect();
    RingElem::from_coeffs(field, flavor, lo, &coeffs).unwrap()
}

pub fn scalar<R: Rng>(rng: &mut R, field: &FieldSpec) -> FqElem {
    field.elem(rng.gen_range(0..field.q()))
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, field: &FieldSpec) -> FqElem {
    field.elem(rng.gen_range(1..field.q()))
}

/// `λ t^k` with `|k| <= kmax` (`k = 0` over `F[t]`).
pub fn unit<R: Rng>(rng: &mut R, field: &FieldSpec, flavor: Flavor, kmax: i64) -> RingElem {
    let lambda = nonzero_scalar(rng, field);
    let k = match flavor {
        Flavor::Poly => 0,
        Flavor::Laurent => rng.gen_range(-kmax..=kmax),
    };
    RingElem::monomial(&lambda, k, flavor).unwrap()
}

/// Largest exponent span over the entries (Laurent) or largest degree (poly).
pub fn size(m: &Mat) -> i64 {
    m.entries()
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| match e.flavor() {
            Flavor::Poly => e.degree().unwrap(),
            Flavor::Laurent => e.max_exp().unwrap().max(0) - e.min_exp().unwrap().min(0),
        })
        .max()
        .unwrap_or(0)
}

/// A random element of `GL_n(R)` (or `SL_n(R)` when `sl`) whose entries
/// stay within `bound` in the sense of [`size`].
pub fn gl<R: Rng>(rng: &mut R, field: &FieldSpec, flavor: Flavor, n: usize, bound: i64, sl: bool) -> Mat {
    let steps = rng.gen_range(1..=2 * n + 2);
    let mut m = Mat::identity(field, flavor, n);
    for _ in 0..steps {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        let d = rng.gen_range(0..=bound.clamp(0, 2));
        let x = elem(rng, field, flavor, -d, d);
        let cand = &m * &Mat::elementary(i, j, &x, n).unwrap();
        if size(&cand) <= bound {
            m = cand;
        }
    }
    if !sl {
        let mut diag: Vec<RingElem> = (0..n).map(|_| unit(rng, field, flavor, 1)).collect();
        if flavor == Flavor::Laurent && bound < 1 {
            diag = (0..n).map(|_| unit(rng, field, Flavor::Poly, 0).to_laurent()).collect();
        }
        let cand = &m * &Mat::diagonal(&diag).unwrap();
        if size(&cand) <= bound {
            m = cand;
        }
    }
    m
}

/// Arbitrary (usually non-invertible) matrix with entries in `[-d, d]`.
pub fn any<R: Rng>(rng: &mut R, field: &FieldSpec, flavor: Flavor, n: usize, d: i64) -> Mat {
    let rows = (0..n).map(|_| (0..n).map(|_| elem(rng, field, flavor, -d, d)).collect()).collect();
    Mat::from_rows(rows).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_matrices_are_invertible_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 3, 4] {
            let f = FieldSpec::of_order(q).unwrap();
            for flavor in [Flavor::Poly, Flavor::Laurent] {
                for n in [2, 3] {
                    for _ in 0..20 {
                        let g = gl(&mut rng, &f, flavor, n, 5, false);
                        assert!(g.gl_member());
                        assert!(size(&g) <= 5);
                        assert!(gl(&mut rng, &f, flavor, n, 5, true).sl_member());
                    }
                }
            }
        }
    }
}
