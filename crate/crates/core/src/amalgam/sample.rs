//! Finite samples of the Nagao factors, random alternating words and the
//! length scan that separates `x_r = (g0 g1)^r` under a factor-preserving map.

use rand::Rng;

use super::word::{word_reduce, AmalgamSpec, AmalgamWord, NagaoSpec};
use crate::automorphism::Group;
use crate::error::Result;
use crate::matrix::Mat;
use crate::random;
use crate::ring::{FieldSpec, Flavor, RingElem};

fn constant_mats(field: &FieldSpec) -> impl Iterator<Item = Mat> + '_ {
    let q = field.q();
    (0..q.pow(4)).map(move |mut v| {
        let mut c = Vec::with_capacity(4);
        for _ in 0..4 {
            c.push(field.elem(v % q));
            v /= q;
        }
        Mat::constant(field, Flavor::Poly, 2, &c)
    })
}

/// All elements of the edge group `Λ`.
pub fn edge_elements(spec: &NagaoSpec) -> Vec<Mat> {
    constant_mats(&spec.field).filter(|m| spec.in_edge(m)).collect()
}

/// `Γ0 \ Λ`: invertible constant matrices with nonzero lower-left entry.
pub fn factor0_elements(spec: &NagaoSpec) -> Vec<Mat> {
    constant_mats(&spec.field).filter(|m| spec.in_factor0(m) && !spec.in_edge(m)).collect()
}

/// Elements of `Γ1 \ Λ` whose upper-right entry has degree in `1..=deg`.
pub fn factor1_elements(spec: &NagaoSpec, deg: u32) -> Vec<Mat> {
    let f = &spec.field;
    let q = f.q() as u64;
    let mut polys = Vec::new();
    for d in 1..=deg as usize {
        let count = q.pow(d as u32) * (q - 1);
        for mut v in 0..count {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(f.elem((v % q) as u32));
                v /= q;
            }
            c.push(f.elem(v as u32 + 1));
            polys.push(RingElem::from_coeffs(f, Flavor::Poly, 0, &c).unwrap());
        }
    }
    let mut out = Vec::new();
    for lam in f.units() {
        for mu in f.units() {
            if spec.group == Group::SL && !lam.mul(&mu).is_one() {
                continue;
            }
            let (l, m) = (RingElem::constant(&lam, Flavor::Poly), RingElem::constant(&mu, Flavor::Poly));
            for p in &polys {
                let z = RingElem::zero(f, Flavor::Poly);
                out.push(Mat::from_rows(vec![vec![l.clone(), p.clone()], vec![z, m.clone()]]).unwrap());
            }
        }
    }
    out
}

/// Every product of an alternating word of length `1..=max_len` over the
/// samples, together with the edge elements (length 0).
pub fn bounded_words(spec: &NagaoSpec, f0: &[Mat], f1: &[Mat], max_len: usize) -> Vec<Mat> {
    let mut out = edge_elements(spec);
    let mut layer: Vec<(u8, Mat)> = Vec::new();
    for len in 1..=max_len {
        layer = if len == 1 {
            f0.iter().map(|m| (0, m.clone())).chain(f1.iter().map(|m| (1, m.clone()))).collect()
        } else {
            let mut next = Vec::new();
            for (tag, w) in &layer {
                let ext = if *tag == 0 { f1 } else { f0 };
                next.extend(ext.iter().map(|m| (1 - tag, w * m)));
            }
            next
        };
        out.extend(layer.iter().map(|(_, m)| m.clone()));
    }
    out
}

/// A random weakly reduced word of length `len` whose first factor lies in
/// `Γ_first`; `B` factors have upper-right degree in `1..=deg`.
pub fn random_word<R: Rng>(rng: &mut R, spec: &NagaoSpec, len: usize, first: u8, deg: i64) -> AmalgamWord {
    let f = &spec.field;
    let fl = Flavor::Poly;
    let mut factors = Vec::with_capacity(len);
    for i in 0..len {
        let tag = (first + i as u8) % 2;
        let m = loop {
            let m = if tag == 0 {
                random::gl(rng, f, fl, 2, 0, spec.group == Group::SL)
            } else {
                let lam = random::nonzero_scalar(rng, f);
                let mu = match spec.group {
                    Group::GL => random::nonzero_scalar(rng, f),
                    Group::SL => lam.inv().unwrap(),
                };
                let top = random::elem(rng, f, fl, 0, deg.max(1));
                let z = RingElem::zero(f, fl);
                Mat::from_rows(vec![vec![RingElem::constant(&lam, fl), top], vec![z, RingElem::constant(&mu, fl)]]).unwrap()
            };
            let ok = if tag == 0 { spec.in_factor0(&m) } else { spec.in_factor1(&m) };
            if ok && !spec.in_edge(&m) {
                break m;
            }
        };
        factors.push((tag, m));
    }
    AmalgamWord { factors }
}

/// Outcome of [`length_scan`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthScan {
    pub checked: usize,
    /// `(z index, r, l(z x_r ψ(z^-1)))` whenever that length is `2s` for some
    /// other `s` in range, or the product equals some `x_s`, `s != r`.
    pub collisions: Vec<(usize, usize, usize)>,
}

/// For each `z` and each `x_r = (g0 g1)^r`, `r = 1..=rmax`, computes
/// `l(z x_r ψ(z^-1))` and records any coincidence with another `x_s`.
pub fn length_scan<F>(spec: &NagaoSpec, psi: F, g0: &Mat, g1: &Mat, rmax: usize, zs: &[Mat]) -> Result<LengthScan>
where
    F: Fn(&Mat) -> Result<Mat> + Sync,
{
    use rayon::prelude::*;
    let unit = g0 * g1;
    let xs: Vec<Mat> = (1..=rmax).map(|r| unit.pow(r as i64)).collect::<Result<_>>()?;
    for r in 1..=rmax {
        let raw: Vec<Mat> = (0..2 * r).map(|i| if i % 2 == 0 { g0.clone() } else { g1.clone() }).collect();
        let l = word_reduce(&raw, spec)?.len();
        if l != 2 * r {
            return Err(crate::Error::Invariant(format!("l(x_{r}) = {l}, expected {}", 2 * r)));
        }
    }
    let x_words: Vec<Vec<Mat>> = xs.iter().map(|x| Ok(super::nagao::nagao_decompose(x, spec.group)?.mats())).collect::<Result<_>>()?;
    let per_z: Vec<Vec<(usize, usize, usize)>> = zs
        .par_iter()
        .enumerate()
        .map(|(zi, z)| -> Result<Vec<(usize, usize, usize)>> {
            let w = psi(&z.inverse()?)?;
            let zw = super::nagao::nagao_decompose(z, spec.group)?;
            let ww = super::nagao::nagao_decompose(&w, spec.group)?;
            let mut hits = Vec::new();
            let (zm, wm) = (zw.mats(), ww.mats());
            for (r, xw) in x_words.iter().enumerate() {
                let raw: Vec<Mat> = zm.iter().chain(xw).chain(&wm).cloned().collect();
                let red = word_reduce(&raw, spec)?;
                let l = red.len();
                let prod = red.evaluate(spec);
                let len_hit = l % 2 == 0 && l != 2 * (r + 1) && l / 2 >= 1 && l / 2 <= rmax;
                let eq_hit = xs.iter().enumerate().any(|(s, xs_)| s != r && *xs_ == prod);
                if len_hit || eq_hit {
                    hits.push((zi, r + 1, l));
                }
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;
    Ok(LengthScan { checked: zs.len() * rmax, collisions: per_z.into_iter().flatten().collect() })
}
