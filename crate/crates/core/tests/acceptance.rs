//! End-to-end acceptance suite. Runs as a plain binary so every criterion
//! prints its own `[criterion N] PASS|FAIL` line.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rinf_core::amalgam::{
    bounded_words, edge_elements, factor0_elements, factor1_elements, is_weakly_reduced, length_parity, length_scan,
    nagao_decompose, random_word, reiner_apply, reiner_apply_word, reiner_valid, shuffle_edges, word_reduce, AmalgamWord, NagaoSpec,
    ParityVerdict, ReinerMap,
};
use rinf_core::automorphism::{homothety_injective, Group, StdAut, UnitCharacter};
use rinf_core::gl2::{
    aut_order, build_realized_aut, compose_types, fixed_subgroup_check, gamma_group_build, generator_decompose, realized_family, type_of,
    Phi0,
};
use rinf_core::matrix::{elem_as_commutator, elem_as_commutator_sl2, trace_power, witness_x, Mat};
use rinf_core::random;
use rinf_core::ring::{s_expansion, special_s, FieldSpec, Flavor, RingAut, RingElem};
use rinf_core::twisted::{bounded_orbit_bfs, certify_separation, default_generators, example_map, CaseTag, GroupMap, OrbitBall};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

const FLAVORS: [Flavor; 2] = [Flavor::Poly, Flavor::Laurent];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    // Traces for different r may agree (in characteristic 2, tr(x_1^2) =
    // tr(x_2)); the separation compares indices at a common r.
    let mut cross = 0;
    for q in [2, 3, 4] {
        let f = field(q);
        let p = f.p() as u64;
        for fl in FLAVORS {
            let mut all = HashSet::new();
            for r in 1..=6u32 {
                let mut seen = HashSet::new();
                for m in 1..=8u32 {
                    let tr = trace_power(m, r, &f, fl).map_err(|e| e.to_string())?;
                    let c = s_expansion(&tr, &f, fl).ok_or_else(|| format!("q={q} {fl:?} m={m} r={r}: trace not in F_p[s]"))?;
                    let deg = c.len() - 1;
                    ensure(deg == (2 * r * m) as usize, || format!("q={q} {fl:?} m={m} r={r}: deg_s = {deg}"))?;
                    let lead = if r % 2 == 0 { 1 } else { p - 1 };
                    ensure(c[deg] == lead, || format!("q={q} {fl:?} m={m} r={r}: leading coefficient {}", c[deg]))?;
                    ensure(seen.insert(tr.clone()), || format!("q={q} {fl:?} m={m} r={r}: repeated trace"))?;
                    cross += usize::from(!all.insert(tr));
                    checked += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("{checked} traces, distinct in m for each r; {cross} coincidences across different r"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for q in [2, 3, 4] {
        let f = field(q);
        for fl in FLAVORS {
            for m in 1..=8u32 {
                let x = witness_x(m, &f, fl, 2).map_err(|e| e.to_string())?;
                let mut pw = x.clone();
                for r in 1..=6u32 {
                    let rec = trace_power(m, r, &f, fl).map_err(|e| e.to_string())?;
                    ensure(rec == pw.trace(), || format!("q={q} {fl:?} m={m} r={r}: recurrence disagrees"))?;
                    pw = &pw * &x;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} grid points"))
}

fn eps_direct(x: &Mat) -> Mat {
    x.transpose().inverse().unwrap()
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for q in [2, 3, 4] {
        let f = field(q);
        for n in [2, 3] {
            for fl in FLAVORS {
                let rhos = RingAut::all(&f, fl);
                let chis = UnitCharacter::all(&f, fl);
                let eps = StdAut::contragredient(&f, fl, n);
                let ctx = |rel: &str| format!("q={q} n={n} {fl:?} relation ({rel})");
                for _ in 0..200 {
                    let x = random::gl(&mut rng, &f, fl, n, 3, false);
                    let g = random::gl(&mut rng, &f, fl, n, 2, false);
                    let rho = &rhos[rng.gen_range(0..rhos.len())];
                    let chi = &chis[rng.gen_range(0..chis.len())];
                    let r = StdAut::ring(rho, n);
                    let ig = StdAut::inner(&g).unwrap();
                    let ap = |a: &StdAut| a.apply(&x).unwrap();

                    // (i) ρ ∘ ι_g = ι_ρ(g) ∘ ρ
                    let lhs = r.compose(&ig).unwrap();
                    let rhs = StdAut::inner(&g.apply_ring_aut(rho).unwrap()).unwrap().compose(&r).unwrap();
                    let direct = (&(&g * &x) * &g.inverse().unwrap()).apply_ring_aut(rho).unwrap();
                    ensure(ap(&lhs) == direct && ap(&rhs) == direct, || ctx("i"))?;

                    // (ii) ε ∘ ρ = ρ ∘ ε
                    let direct = eps_direct(&x.apply_ring_aut(rho).unwrap());
                    let (lhs, rhs) = (eps.compose(&r).unwrap(), r.compose(&eps).unwrap());
                    ensure(ap(&lhs) == direct && ap(&rhs) == direct, || ctx("ii"))?;

                    // (iii) ε ∘ ι_g = ι_ε(g) ∘ ε
                    let direct = eps_direct(&(&(&g * &x) * &g.inverse().unwrap()));
                    let lhs = eps.compose(&ig).unwrap();
                    let rhs = StdAut::inner(&eps_direct(&g)).unwrap().compose(&eps).unwrap();
                    ensure(ap(&lhs) == direct && ap(&rhs) == direct, || ctx("iii"))?;

                    // (iv) μ_χ ∘ ρ = ρ ∘ μ_η with η = ρ0^-1 ∘ χ ∘ ρ
                    let rx = x.apply_ring_aut(rho).unwrap();
                    let direct = rx.scale(&RingElem::constant(&chi.eval(&rx).unwrap(), fl));
                    let t_img = rho.apply(&RingElem::t(&f, fl)).unwrap();
                    let eta_t = if fl == Flavor::Laurent {
                        rho.inverse().apply_scalar(&chi.eval_unit(&t_img).unwrap())
                    } else {
                        f.one()
                    };
                    let eta = UnitCharacter::new(chi.k as i64, eta_t).unwrap();
                    let lhs = StdAut::homothety(chi, fl, n).compose(&r).unwrap();
                    let rhs = r.compose(&StdAut::homothety(&eta, fl, n)).unwrap();
                    ensure(ap(&lhs) == direct && ap(&rhs) == direct, || ctx("iv"))?;

                    // (v) μ_-χ ∘ ε = ε ∘ μ_χ∘ε, and χ∘ε = -χ
                    let neg = UnitCharacter::new(-(chi.k as i64), chi.t_image.inv().unwrap()).unwrap();
                    let ex = eps_direct(&x);
                    let direct = ex.scale(&RingElem::constant(&neg.eval(&ex).unwrap(), fl));
                    ensure(chi.eval(&ex).unwrap() == neg.eval(&x).unwrap(), || ctx("v: χ∘ε"))?;
                    let lhs = StdAut::homothety(&neg, fl, n).compose(&eps).unwrap();
                    let rhs = eps.compose(&StdAut::homothety(&neg, fl, n)).unwrap();
                    ensure(ap(&lhs) == direct && ap(&rhs) == direct, || ctx("v"))?;
                    checked += 5;
                }
            }
        }
    }
    Ok(format!("{checked} relation instances"))
}

fn separated_elements(case: CaseTag, f: &FieldSpec, fl: Flavor, n: usize, indices: &[u32]) -> Vec<Mat> {
    let uses_eps = matches!(case, CaseTag::Eps | CaseTag::RhoEps | CaseTag::MuRhoEps | CaseTag::IotaHRhoEps);
    let s = special_s(f, fl);
    indices
        .iter()
        .map(|&m| if uses_eps { Mat::embed(&Mat::e12(&s.pow(m)), n).unwrap() } else { witness_x(m, f, fl, n).unwrap() })
        .collect()
}

fn criterion_4() -> Outcome {
    let indices: Vec<u32> = (1..=6).collect();
    let n = 3;
    let mut certs = 0;
    let mut balls = 0;
    for q in [2, 3] {
        let f = field(q);
        for fl in FLAVORS {
            for case in &CaseTag::ALL[..8] {
                let ctx = format!("q={q} {fl:?} {case}");
                let phi = example_map(*case, &f, fl, n).map_err(|e| format!("{ctx}: {e}"))?;
                let cert = certify_separation(&phi, *case, &indices).map_err(|e| format!("{ctx}: {e}"))?;
                ensure(cert.is_separated(), || format!("{ctx}: {} {:?}", cert.verdict.as_str(), cert.notes))?;
                certs += 1;
                let gens = default_generators(&f, fl, n, case.group());
                let elems = separated_elements(*case, &f, fl, n, &indices);
                let orbit: Vec<OrbitBall> =
                    elems.par_iter().map(|x| bounded_orbit_bfs(&phi, x, &gens, 3)).collect::<Result<_, _>>().map_err(|e| format!("{ctx}: {e}"))?;
                for i in 0..orbit.len() {
                    for j in i + 1..orbit.len() {
                        let c = orbit[i].intersection_size(&orbit[j]);
                        ensure(c == 0, || format!("{ctx}: balls {} and {} share {c} elements", indices[i], indices[j]))?;
                    }
                }
                balls += orbit.len();
            }
        }
    }
    Ok(format!("{certs} certificates separated, {balls} radius-3 balls pairwise disjoint"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [2, 3, 4] {
        let f = field(q);
        let spec = NagaoSpec::new(&f, Group::GL);
        let edges = edge_elements(&spec);
        let per_q = if q == 4 { 166 } else { 167 };
        for i in 0..per_q {
            let g = random::gl(&mut rng, &f, Flavor::Poly, 2, 5, false);
            let ctx = format!("q={q} sample {i}");
            let w = nagao_decompose(&g, Group::GL).map_err(|e| format!("{ctx}: {e}"))?;
            ensure(w.evaluate(&spec) == g, || format!("{ctx}: recomposition differs"))?;
            ensure(is_weakly_reduced(&w, &spec), || format!("{ctx}: word is not alternating"))?;
            let hs: Vec<Mat> = (0..w.len()).map(|_| edges[rng.gen_range(0..edges.len())].clone()).collect();
            let sh = shuffle_edges(&w, &hs).map_err(|e| e.to_string())?;
            ensure(is_weakly_reduced(&sh, &spec) && sh.evaluate(&spec) == g, || format!("{ctx}: shuffled word invalid"))?;
            let again = word_reduce(&sh.mats(), &spec).map_err(|e| e.to_string())?;
            ensure(again.len() == w.len(), || format!("{ctx}: length {} after shuffle, {} before", again.len(), w.len()))?;
        }
    }
    Ok("500 matrices".into())
}

fn parity_triple<R: Rng>(rng: &mut R, spec: &NagaoSpec) -> (AmalgamWord, AmalgamWord, AmalgamWord) {
    let k = rng.gen_range(2..=5);
    let m = 2 * rng.gen_range(1..=3);
    let z = random_word(rng, spec, k, ((k - 1) % 2) as u8, 2);
    let first = rng.gen_range(0..2);
    let x = random_word(rng, spec, m, first, 2);
    let w = match rng.gen_range(0..3) {
        0 => random_word(rng, spec, k, 0, 2),
        _ => {
            // z^-1 with edge elements slipped in at a random depth: forces
            // partial cancellation against x.
            let mut w = z.inverse().unwrap();
            let edges = edge_elements(spec);
            let depth = rng.gen_range(0..k);
            for j in depth..k {
                let h = &edges[rng.gen_range(0..edges.len())];
                w.factors[j].1 = h * &w.factors[j].1;
            }
            w
        }
    };
    (z, x, w)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tally = [0usize; 2];
    for i in 0..1000 {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let group = if i % 4 < 2 { Group::GL } else { Group::SL };
        let spec = NagaoSpec::new(&field(q), group);
        let (z, x, w) = parity_triple(&mut rng, &spec);
        let (v, l) = length_parity(&z, &x, &w, &spec).map_err(|e| e.to_string())?;
        match v {
            ParityVerdict::EqualsM => tally[0] += 1,
            ParityVerdict::Odd => tally[1] += 1,
            ParityVerdict::Violation => return Err(format!("triple {i}: l(zxw) = {l}, m = {}", x.len())),
            ParityVerdict::HypothesisViolation => return Err(format!("triple {i}: generator broke the hypotheses")),
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("1000 triples: {} with l = m, {} odd", tally[0], tally[1]))
}

fn criterion_7() -> Outcome {
    let mut report = Vec::new();
    for q in [2, 3] {
        let f = field(q);
        let spec = NagaoSpec::new(&f, Group::GL);
        let (f0, f1) = (factor0_elements(&spec), factor1_elements(&spec, 1));
        let zs = bounded_words(&spec, &f0, &f1, 3);
        let rho = RingAut::new(Flavor::Poly, 0, f.from_int(-1), f.one(), 1).unwrap();
        let t = RingElem::t(&f, Flavor::Poly);
        let nu = ReinerMap::f_linear(&f, &[&t + &t.pow(2), t.pow(2)]).unwrap();
        ensure(reiner_valid(&nu, Group::GL) && nu.order(1).is_none(), || "Reiner map is trivial or invalid".into())?;
        let (g0, g1) = (&f0[0], &Mat::e12(&t));
        let psis: Vec<(&str, Box<dyn Fn(&Mat) -> rinf_core::Result<Mat> + Sync>)> = vec![
            ("ρ", Box::new(|m: &Mat| m.apply_ring_aut(&rho))),
            ("reiner", Box::new(|m: &Mat| reiner_apply(&nu, m, Group::GL))),
        ];
        for (name, psi) in &psis {
            let scan = length_scan(&spec, psi, g0, g1, 6, &zs).map_err(|e| e.to_string())?;
            ensure(scan.collisions.is_empty(), || format!("q={q} ψ={name}: collisions {:?}", &scan.collisions[..scan.collisions.len().min(5)]))?;
            report.push(format!("q={q} ψ={name}: {} pairs", scan.checked));
        }
    }
    Ok(report.join(", "))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for q in [2, 3, 4] {
        let f = field(q);
        let spec = NagaoSpec::new(&f, Group::GL);
        let fl = Flavor::Poly;
        let t = RingElem::t(&f, fl);
        let nu = ReinerMap::f_linear(&f, &[&t + &t.pow(2), &t.pow(2) + &t.pow(3), t.pow(3)]).unwrap();
        let ap = |g: &Mat| reiner_apply(&nu, g, Group::GL).unwrap();
        for i in 0..200 / 3 + 1 {
            let g = random::gl(&mut rng, &f, fl, 2, 4, false);
            let h = random::gl(&mut rng, &f, fl, 2, 4, false);
            ensure(ap(&(&g * &h)) == &ap(&g) * &ap(&h), || format!("q={q} pair {i}: not multiplicative"))?;
        }
        for k in factor0_elements(&spec).iter().chain(edge_elements(&spec).iter()) {
            ensure(ap(k) == *k, || format!("q={q}: moves constant {k}"))?;
        }
        for _ in 0..50 {
            let x = random::elem(&mut rng, &f, fl, 0, 6);
            ensure(ap(&Mat::e12(&x)) == Mat::e12(&nu.apply(&x).unwrap()), || format!("q={q}: e12({x}) not mapped to e12(ν(x))"))?;
        }
        let edges = edge_elements(&spec);
        for i in 0..100 / 3 + 1 {
            let g = random::gl(&mut rng, &f, fl, 2, 5, false);
            let w = nagao_decompose(&g, Group::GL).unwrap();
            let hs: Vec<Mat> = (0..w.len()).map(|_| edges[rng.gen_range(0..edges.len())].clone()).collect();
            let mut alt = shuffle_edges(&w, &hs).unwrap();
            // Split each B factor b as (b e12(-y)) e12(y): a longer, non-reduced word.
            let mut factors = Vec::new();
            for (tag, m) in alt.factors.drain(..) {
                if tag == 1 {
                    let y = random::elem(&mut rng, &f, fl, 0, 3);
                    factors.push((1, &m * &Mat::e12(&y.neg())));
                    factors.push((1, Mat::e12(&y)));
                } else {
                    factors.push((tag, m));
                }
            }
            let alt = AmalgamWord { factors };
            ensure(alt.evaluate(&spec) == g, || format!("q={q} sample {i}: alternative word wrong"))?;
            ensure(reiner_apply_word(&nu, &alt).unwrap() == ap(&g), || format!("q={q} sample {i}: image depends on the word"))?;
        }
    }
    Ok("q = 2, 3, 4".into())
}

fn all_polys(f: &FieldSpec, deg: u32) -> Vec<RingElem> {
    let q = f.q() as u64;
    (0..q.pow(deg + 1))
        .map(|mut v| {
            let c: Vec<_> = (0..=deg)
                .map(|_| {
                    let d = f.elem((v % q) as u32);
                    v /= q;
                    d
                })
                .collect();
            RingElem::from_coeffs(f, Flavor::Poly, 0, &c).unwrap()
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let f2 = field(2);
    let mut count = 0;
    for x in all_polys(&f2, 4) {
        for i in 1..=3 {
            for j in 1..=3 {
                if i == j {
                    continue;
                }
                let w = elem_as_commutator(i, j, &x, 3).map_err(|e| e.to_string())?;
                let target = Mat::elementary(i, j, &x, 3).unwrap();
                ensure(w.evaluate(&f2, Flavor::Poly, 3).unwrap() == target, || format!("e_{i}{j}({x}) over F_2"))?;
                count += 1;
            }
        }
    }
    let f4 = field(4);
    for x in all_polys(&f4, 4) {
        let w = elem_as_commutator_sl2(&x).map_err(|e| e.to_string())?;
        ensure(w.pairs.iter().all(|(a, b)| a.sl_member() && b.sl_member()), || format!("SL_2 word for {x} leaves SL_2"))?;
        ensure(w.evaluate(&f4, Flavor::Poly, 2).unwrap() == Mat::e12(&x), || format!("e12({x}) over F_4"))?;
        count += 1;
    }
    Ok(format!("{count} certificates"))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut notes = Vec::new();
    for q in [2, 3, 4] {
        let f = field(q);
        for i in 0..200 {
            let g = random::gl(&mut rng, &f, Flavor::Laurent, 2, 4, false);
            let w = generator_decompose(&g).map_err(|e| format!("q={q} sample {i}: {e}"))?;
            ensure(w.evaluate().unwrap() == g, || format!("q={q} sample {i}: generator word does not evaluate back"))?;
        }
        let table = gamma_group_build(&f).map_err(|e| e.to_string())?;
        table.verify_axioms().map_err(|e| format!("q={q}: {e}"))?;
        let expected = ((q - 1) * (q - 1) * 8 * f.e() as u64) as usize;
        ensure(table.len() == expected, || format!("q={q}: |Γ| = {}, expected {expected}", table.len()))?;
        let fam = realized_family(&f).map_err(|e| e.to_string())?;
        let maps: Vec<GroupMap> = fam.iter().cloned().map(GroupMap::Realized).collect();
        for (a, pa) in fam.iter().zip(&maps) {
            ensure(type_of(pa).unwrap() == *a.ty(), || format!("q={q}: type_of misreads {}", a.ty().label()))?;
        }
        let bad = (0..fam.len())
            .into_par_iter()
            .map(|i| {
                (0..fam.len())
                    .filter(|&j| {
                        let c = maps[i].compose(&maps[j]).unwrap();
                        type_of(&c).unwrap() != compose_types(fam[i].ty(), fam[j].ty())
                    })
                    .count()
            })
            .sum::<usize>();
        ensure(bad == 0, || format!("q={q}: {bad} pairs with compose_types != type_of∘compose"))?;
        for a in &fam {
            let rep = aut_order(a).map_err(|e| e.to_string())?;
            ensure(rep.divides_bound, || format!("q={q}: order {} of {} does not divide {}", rep.order, a.ty().label(), rep.bound))?;
        }
        let t0: Vec<_> = f.units().flat_map(|a| f.units().map(move |b| (a.clone(), b))).collect();
        let mut fix_runs = 0;
        for h in &t0 {
            for i in [0u8, 1] {
                for phi0 in Phi0::all(&f) {
                    if phi0.frob != 0 && !phi0.contra {
                        continue;
                    }
                    let phi = build_realized_aut(&f, h.clone(), -1, i, phi0).map_err(|e| e.to_string())?;
                    let rep = fixed_subgroup_check(&phi, 6, 20, &mut rng).map_err(|e| e.to_string())?;
                    let failed: Vec<_> = rep.checks.iter().filter(|c| !c.ok).map(|c| c.name.clone()).collect();
                    ensure(failed.is_empty(), || format!("q={q} type {}: {failed:?}", phi.ty().label()))?;
                    fix_runs += 1;
                }
            }
        }
        notes.push(format!("q={q}: |Γ|={expected}, {} realized, {fix_runs} fixed-subgroup reports", fam.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for q in [3, 4, 5] {
        let f = field(q);
        for n in [2, 3] {
            for fl in FLAVORS {
                for chi in UnitCharacter::all(&f, fl) {
                    let mu = StdAut::homothety(&chi, fl, n);
                    let id = Mat::identity(&f, fl, n);
                    let kernel: Vec<_> = f
                        .units()
                        .filter(|l| !l.is_one())
                        .filter(|l| mu.apply(&Mat::scalar(&RingElem::constant(l, fl), n)).unwrap() == id)
                        .collect();
                    let (inj, witness) = homothety_injective(&chi, n, fl);
                    ensure(inj == kernel.is_empty(), || format!("q={q} n={n} {fl:?} χ={chi:?}: injective={inj}, kernel {kernel:?}"))?;
                    if let Some(w) = witness {
                        ensure(kernel.contains(&w), || format!("q={q} n={n}: witness {w:?} is not in the kernel"))?;
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} characters"))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, run) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match res {
            Ok(detail) => println!("[criterion {n}] PASS ({detail}; {:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("[criterion {n}] FAIL: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
