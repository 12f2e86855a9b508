//! The element `s` fixed by every ring automorphism defined over `F_q`, and
//! expansion of ring elements in powers of `s` over `F_p`.

use super::elem::{Flavor, RingElem};
use super::field::FieldSpec;

/// `t^(q-1) + t^(1-q)` over the Laurent ring, `prod_{γ in F_q} (t + γ)^(q-1)`
/// over `F[t]`.
pub fn special_s(field: &FieldSpec, flavor: Flavor) -> RingElem {
    let q = field.q() as i64;
    match flavor {
        Flavor::Laurent => {
            let a = RingElem::t_pow(field, flavor, q - 1).unwrap();
            let b = RingElem::t_pow(field, flavor, 1 - q).unwrap();
            &a + &b
        }
        Flavor::Poly => {
            let t = RingElem::t(field, flavor);
            let mut prod = RingElem::one(field, flavor);
            for g in field.elements() {
                prod = &prod * &(&t + &RingElem::constant(&g, flavor));
            }
            prod.pow(field.q() - 1)
        }
    }
}

/// `sum c_i s^i` for coefficients in `Z/p`.
pub fn eval_in_s(coeffs: &[u64], field: &FieldSpec, flavor: Flavor) -> RingElem {
    let s = special_s(field, flavor);
    let mut acc = RingElem::zero(field, flavor);
    for &c in coeffs.iter().rev() {
        acc = &(&acc * &s) + &RingElem::from_int(field, flavor, c as i64);
    }
    acc
}

/// Writes `f = sum_{i<=d} c_i s^i` with `c_i in F_p` and `c_d != 0`.
///
/// Returns `None` when `f` is not in `F_p[s]`, and an empty vector for zero.
/// The degree `d` is forced by the extreme exponents of `f`; the coefficients
/// come from an exact solve of the exponent-by-exponent linear system.
pub fn s_expansion(f: &RingElem, field: &FieldSpec, flavor: Flavor) -> Option<Vec<u64>> {
    if f.field() != field || f.flavor() != flavor {
        return None;
    }
    if f.is_zero() {
        return Some(Vec::new());
    }
    let q = field.q() as i64;
    let step = match flavor {
        Flavor::Poly => q * (q - 1),
        Flavor::Laurent => q - 1,
    };
    let (lo, hi) = (f.min_exp().unwrap(), f.max_exp().unwrap());
    let reach = match flavor {
        Flavor::Poly => hi,
        Flavor::Laurent => hi.max(-lo),
    };
    if reach % step != 0 || !f.coeffs().iter().all(|c| c.in_prime_field()) {
        return None;
    }
    let d = (reach / step) as usize;

    let s = special_s(field, flavor);
    let mut powers = vec![RingElem::one(field, flavor)];
    for i in 1..=d {
        powers.push(&powers[i - 1] * &s);
    }
    let (elo, ehi) = match flavor {
        Flavor::Poly => (0, reach),
        Flavor::Laurent => (-reach, reach),
    };
    let p = field.p() as u64;
    let to_fp = |c: super::field::FqElem| c.coeffs()[0];
    // Augmented rows: [coeff of t^j in s^0..s^d | coeff of t^j in f].
    let mut rows: Vec<Vec<u64>> = (elo..=ehi)
        .map(|j| {
            let mut row: Vec<u64> = powers.iter().map(|pw| to_fp(pw.coeff(j))).collect();
            row.push(to_fp(f.coeff(j)));
            row
        })
        .collect();
    let sol = solve_mod_p(&mut rows, d + 1, p)?;
    if sol[d] == 0 {
        return None;
    }
    Some(sol)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Gauss-Jordan on an augmented system over `Z/p`. Returns the unique
/// solution, or `None` if the system is inconsistent or underdetermined.
fn solve_mod_p(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> Option<Vec<u64>> {
    let mut pivot_row = 0;
    for col in 0..ncols {
        let pr = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0)?;
        rows.swap(pivot_row, pr);
        let inv = inv_mod(rows[pivot_row][col], p);
        for v in rows[pivot_row].iter_mut() {
            *v = *v * inv % p;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let c = row[col];
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v = (*v + p * p - c * pv) % p;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| r[ncols] != 0) {
        return None;
    }
    Some((0..ncols).map(|c| rows[c][ncols]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::aut::RingAut;

    #[test]
    fn small_values() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(special_s(&f2, Flavor::Laurent).to_string(), "t^-1 + t");
        assert_eq!(special_s(&f2, Flavor::Poly).to_string(), "t + t^2");
        assert_eq!(special_s(&f3, Flavor::Poly).to_string(), "t^2 + t^4 + t^6");
    }

    #[test]
    fn s_is_invariant_under_all_ring_automorphisms() {
        for q in [2, 3, 4, 5] {
            let f = FieldSpec::of_order(q).unwrap();
            for flavor in [Flavor::Poly, Flavor::Laurent] {
                let s = special_s(&f, flavor);
                for rho in RingAut::all(&f, flavor) {
                    assert_eq!(rho.apply(&s).unwrap(), s, "q={q} {rho:?}");
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let s = special_s(&f2, Flavor::Laurent);
        assert_eq!(s_expansion(&(&s * &s), &f2, Flavor::Laurent), Some(vec![0, 0, 1]));
        let t = RingElem::t(&f2, Flavor::Poly);
        assert_eq!(s_expansion(&t, &f2, Flavor::Poly), None);
        let f3 = FieldSpec::prime(3).unwrap();
        let s3 = special_s(&f3, Flavor::Laurent);
        let tr = &RingElem::from_int(&f3, Flavor::Laurent, 2) - &(&s3 * &s3);
        assert_eq!(s_expansion(&tr, &f3, Flavor::Laurent), Some(vec![2, 0, 2]));
    }

    #[test]
    fn non_prime_coefficients_are_absent() {
        let f4 = FieldSpec::of_order(4).unwrap();
        let w = RingElem::constant(&f4.generator(), Flavor::Laurent);
        assert_eq!(s_expansion(&w, &f4, Flavor::Laurent), None);
    }

    #[test]
    fn round_trip() {
        for q in [2, 3, 4, 5] {
            let f = FieldSpec::of_order(q).unwrap();
            let p = f.p() as u64;
            for flavor in [Flavor::Poly, Flavor::Laurent] {
                for seed in 0..20u64 {
                    let len = (seed % 4) as usize + 1;
                    let mut c: Vec<u64> = (0..len).map(|i| (seed * 7 + i as u64 * 3) % p).collect();
                    *c.last_mut().unwrap() = 1 + seed % (p - 1).max(1);
                    let v = eval_in_s(&c, &f, flavor);
                    assert_eq!(s_expansion(&v, &f, flavor), Some(c));
                }
            }
        }
    }
}
