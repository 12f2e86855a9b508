use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use rinf_core::amalgam::{is_weakly_reduced, length_parity, nagao_decompose, random_word, NagaoSpec, ParityVerdict};
use rinf_core::automorphism::{homothety_injective, transversal_enumerate, Group, UnitCharacter};
use rinf_core::gl2::{aut_order, build_realized_aut, fixed_subgroup_check, gamma_group_build, realized_family, AutType, Phi0};
use rinf_core::matrix::{witness_x, Mat};
use rinf_core::parse::{parse_indices, parse_mat};
use rinf_core::random;
use rinf_core::ring::{special_s, FieldSpec, Flavor, RingAut, RingElem};
use rinf_core::twisted::{
    bounded_orbit_bfs, certify_h0, certify_separation, default_generators, example_map, CaseTag, GroupMap, H0Params, Verdict,
};
use rinf_core::wire;

#[derive(Parser)]
#[command(name = "rinf", version, about = "Exact checks for twisted conjugacy in matrix groups over F_q[t] and F_q[t, t^-1]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field order q = p^e.
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Defining polynomial, low degree first, e.g. `1,1,1`.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum FlavorArg {
    Poly,
    Laurent,
}

#[derive(Copy, Clone, ValueEnum)]
enum GroupArg {
    Gl,
    Sl,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq)]
enum Emit {
    Json,
    Csv,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Poly => Flavor::Poly,
            FlavorArg::Laurent => Flavor::Laurent,
        }
    }
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Gl => Group::GL,
            GroupArg::Sl => Group::SL,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Separation certificate for one case shape.
    Certify {
        #[command(flatten)]
        field: FieldArgs,
        /// rho, eps, rho-eps, mu-rho, mu-rho-eps, iota-h, iota-h-rho,
        /// iota-h-rho-eps, gl2-fixed, gl2-rho-eps or h0.
        #[arg(long)]
        case: String,
        #[arg(long, value_enum, default_value = "laurent")]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "1..8")]
        indices: String,
        /// Standard automorphism (JSON) to certify instead of the case's example map.
        #[arg(long)]
        aut: Option<PathBuf>,
        /// For `--case h0`: order of the level field F_{q^d}.
        #[arg(long)]
        level: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Weakly reduced word of a 2x2 matrix over F_q[t].
    Nagao {
        #[command(flatten)]
        field: FieldArgs,
        /// Matrix such as `[[1,0],[t,1]]`.
        #[arg(long)]
        mat: String,
        #[arg(long, value_enum, default_value = "gl")]
        group: GroupArg,
        #[command(flatten)]
        output: Output,
    },
    /// Length dichotomy for z x w, from word files or on random triples.
    Length {
        #[command(flatten)]
        field: FieldArgs,
        /// Three word files: z, x, w.
        #[arg(long, num_args = 3, value_names = ["Z", "X", "W"])]
        words: Option<Vec<PathBuf>>,
        #[arg(long, value_enum, default_value = "gl")]
        group: GroupArg,
        /// Random triples to test when no words are given.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Outer automorphism representatives for n >= 3, with orders.
    Autos {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "laurent")]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value = "gl")]
        group: GroupArg,
        /// Random pairs per map for the homomorphism check.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Multiplication table of the finite group of types, and the realized types.
    OutTable {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        #[command(flatten)]
        output: Output,
    },
    /// Bounded twisted-orbit balls around the separated elements of a case.
    Orbit {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "rho")]
        case: String,
        #[arg(long, value_enum, default_value = "laurent")]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "1..3")]
        indices: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        #[command(flatten)]
        output: Output,
    },
    /// Fixed-subgroup report for a realized automorphism of GL_2(F_q[t, t^-1]).
    FixCheck {
        #[command(flatten)]
        field: FieldArgs,
        /// `a:b,eps,i`: h = diag(a, b) by integer encodings, eps = 1 or -1, i = 0 or 1.
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: String,
        /// id, eps, frobK or frobK-eps.
        #[arg(long, default_value = "id")]
        phi0: String,
        #[arg(long, default_value_t = 6)]
        kmax: i64,
        #[arg(long, default_value_t = 20)]
        words: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<rinf_core::Error> for Failure {
    fn from(e: rinf_core::Error) -> Self {
        use rinf_core::Error as E;
        match e {
            E::Parse(_)
            | E::Precondition(_)
            | E::ShapeMismatch(_)
            | E::CompositeCharacteristic(_)
            | E::ZeroDegree
            | E::FieldTooLarge { .. }
            | E::BadModulus { .. }
            | E::ReducibleModulus(_)
            | E::BadRingAut(_)
            | E::Dimension(_)
            | E::Index(_)
            | E::NotInvertible
            | E::NotInFactor(_)
            | E::FieldMismatch
            | E::FlavorMismatch => Failure::Usage(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

type Run = Result<(Report, bool), Failure>;

/// A finished report and whether every checked property held.
enum Report {
    Json(Value),
    Text(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl FieldArgs {
    fn build(&self) -> Result<FieldSpec, Failure> {
        let f = match &self.modulus {
            None => FieldSpec::of_order(self.q)?,
            Some(m) => {
                let (p, e) = rinf_core::ring::field::prime_power(self.q).ok_or_else(|| usage(format!("{} is not a prime power", self.q)))?;
                FieldSpec::new(p, e, Some(m))?
            }
        };
        Ok(f)
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn certify(
    fa: &FieldArgs,
    case: &str,
    flavor: Flavor,
    n: usize,
    indices: &str,
    aut: Option<&PathBuf>,
    level: Option<u64>,
) -> Run {
    let field = fa.build()?;
    let indices = parse_indices(indices)?;
    if case == "h0" {
        let level = FieldSpec::of_order(level.ok_or_else(|| usage("--case h0 needs --level"))?)?;
        if level.p() != field.p() {
            return Err(usage("the level field must have the same characteristic as --q"));
        }
        let (rho, a) = match flavor {
            Flavor::Laurent => (RingAut::new(flavor, 0, level.one(), level.zero(), -1)?, RingElem::t(&level, flavor)),
            Flavor::Poly => (RingAut::new(flavor, 0, level.one(), level.one(), 1)?, RingElem::one(&level, flavor)),
        };
        let params = H0Params { level, q: field.q(), n, rho, a };
        let cert = certify_h0(&params, &indices)?;
        let ok = cert.verdict == Verdict::Separated;
        return Ok((Report::Json(wire::certificate_to_json(&cert)), ok));
    }
    let tag: CaseTag = case.parse().map_err(|_| usage(format!("unknown case '{case}'")))?;
    let phi = match aut {
        Some(path) => GroupMap::Std(wire::std_aut_from_json(&field, &read_json(path)?)?),
        None => example_map(tag, &field, flavor, n)?,
    };
    let cert = certify_separation(&phi, tag, &indices)?;
    let ok = cert.verdict == Verdict::Separated;
    Ok((Report::Json(wire::certificate_to_json(&cert)), ok))
}

fn nagao(fa: &FieldArgs, mat: &str, group: Group) -> Run {
    let field = fa.build()?;
    let g = parse_mat(mat, &field, Flavor::Poly)?;
    if g.n() != 2 {
        return Err(usage("nagao needs a 2x2 matrix"));
    }
    let w = nagao_decompose(&g, group)?;
    let spec = NagaoSpec::new(&field, group);
    let word = wire::word_to_json(&w);
    let digest = hex::encode(Sha256::digest(word.to_string().as_bytes()));
    let round_trip = w.evaluate(&spec) == g;
    let reduced = is_weakly_reduced(&w, &spec);
    let report = json!({
        "field": wire::field_to_json(&field),
        "mat": g.to_string(),
        "word": word,
        "length": w.len(),
        "sha256": digest,
        "round_trip": round_trip,
        "weakly_reduced": reduced,
    });
    Ok((Report::Json(report), round_trip && reduced))
}

fn verdict_str(v: ParityVerdict) -> &'static str {
    match v {
        ParityVerdict::EqualsM => "l(zxw) = m",
        ParityVerdict::Odd => "l(zxw) odd",
        ParityVerdict::Violation => "violation",
        ParityVerdict::HypothesisViolation => "hypotheses not met",
    }
}

fn length(fa: &FieldArgs, words: Option<&[PathBuf]>, group: Group, samples: usize, seed: u64) -> Run {
    let field = fa.build()?;
    let spec = NagaoSpec::new(&field, group);
    if let Some(paths) = words {
        let ws = paths.iter().map(|p| Ok(wire::word_from_json(&field, &read_json(p)?)?)).collect::<Result<Vec<_>, Failure>>()?;
        let (v, l) = length_parity(&ws[0], &ws[1], &ws[2], &spec)?;
        if v == ParityVerdict::HypothesisViolation {
            return Err(usage("z, x, w do not satisfy the hypotheses (k >= 2, m >= 2 even, z ending and w starting in G0, all weakly reduced)"));
        }
        let report = json!({ "k": ws[0].len(), "m": ws[1].len(), "length": l, "verdict": verdict_str(v) });
        return Ok((Report::Json(report), v != ParityVerdict::Violation));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut equal, mut odd, mut bad) = (0, 0, Vec::new());
    for i in 0..samples {
        let k = rng.gen_range(2..=5);
        let m = 2 * rng.gen_range(1..=3);
        let z = random_word(&mut rng, &spec, k, ((k - 1) % 2) as u8, 2);
        let first = rng.gen_range(0..2);
        let x = random_word(&mut rng, &spec, m, first, 2);
        let w = if rng.gen_bool(0.5) { z.inverse()? } else { random_word(&mut rng, &spec, k, 0, 2) };
        match length_parity(&z, &x, &w, &spec)? {
            (ParityVerdict::EqualsM, _) => equal += 1,
            (ParityVerdict::Odd, _) => odd += 1,
            (v, l) => bad.push(json!({ "sample": i, "length": l, "m": m, "verdict": verdict_str(v) })),
        }
    }
    let ok = bad.is_empty();
    let report = json!({ "samples": samples, "seed": seed, "equals_m": equal, "odd": odd, "violations": bad });
    Ok((Report::Json(report), ok))
}

fn autos(fa: &FieldArgs, flavor: Flavor, n: usize, group: Group, samples: usize, seed: u64) -> Run {
    let field = fa.build()?;
    let units: Vec<RingElem> = match flavor {
        Flavor::Laurent => vec![RingElem::t(&field, flavor), RingElem::constant(&field.generator(), flavor)],
        Flavor::Poly => vec![RingElem::constant(&field.generator(), flavor)],
    };
    let chars: Vec<UnitCharacter> =
        UnitCharacter::all(&field, flavor).into_iter().filter(|c| !c.is_trivial() && homothety_injective(c, n, flavor).0).collect();
    let reps = transversal_enumerate(group, n, &field, flavor, &units, &chars)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sl = group == Group::SL;
    let mut ok = true;
    let mut list = Vec::new();
    for a in &reps {
        let mut hom = true;
        for _ in 0..samples {
            let x = random::gl(&mut rng, &field, flavor, n, 2, sl);
            let y = random::gl(&mut rng, &field, flavor, n, 2, sl);
            hom &= a.apply(&(&x * &y))? == &a.apply(&x)? * &a.apply(&y)?;
        }
        ok &= hom;
        list.push(json!({ "aut": wire::std_aut_to_json(a), "order": a.order(1000, group), "homomorphism": hom }));
    }
    let report = json!({ "field": wire::field_to_json(&field), "n": n, "count": reps.len(), "autos": list });
    Ok((Report::Json(report), ok))
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn out_table(fa: &FieldArgs, emit: Emit) -> Run {
    let field = fa.build()?;
    let table = gamma_group_build(&field)?;
    let axioms = table.verify_axioms();
    let expected = ((field.q() - 1) * (field.q() - 1) * 8 * field.e()) as usize;
    let realized: Vec<AutType> = realized_family(&field)?.iter().map(|r| r.ty().clone()).collect();
    let idx: Vec<usize> = realized.iter().filter_map(|t| table.index_of(t)).collect();
    let closed = idx.iter().all(|&a| idx.iter().all(|&b| idx.contains(&table.mul(a, b))));
    let ok = axioms.is_ok() && table.len() == expected && closed && idx.len() == realized.len();
    let labels: Vec<String> = table.elems.iter().map(|t| t.label()).collect();
    if emit == Emit::Csv {
        let mut out = String::new();
        out.push_str(&std::iter::once("*".to_string()).chain(labels.iter().map(|l| csv_cell(l))).collect::<Vec<_>>().join(","));
        out.push_str(",realized\n");
        for (a, la) in labels.iter().enumerate() {
            let row: Vec<String> = (0..table.len()).map(|b| csv_cell(&labels[table.mul(a, b)])).collect();
            out.push_str(&format!("{},{},{}\n", csv_cell(la), row.join(","), idx.contains(&a)));
        }
        return Ok((Report::Text(out), ok));
    }
    let report = json!({
        "field": wire::field_to_json(&field),
        "order": table.len(),
        "expected_order": expected,
        "axioms": axioms.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.to_string()),
        "elements": labels,
        "table": table.table,
        "realized": realized.iter().map(|t| t.label()).collect::<Vec<_>>(),
        "realized_is_subgroup": closed,
    });
    Ok((Report::Json(report), ok))
}

fn orbit(fa: &FieldArgs, case: &str, flavor: Flavor, n: usize, indices: &str, radius: usize, emit: Emit) -> Run {
    let field = fa.build()?;
    let tag: CaseTag = case.parse().map_err(|_| usage(format!("unknown case '{case}'")))?;
    let indices = parse_indices(indices)?;
    let phi = example_map(tag, &field, flavor, n)?;
    let (fl, n, group) = match tag {
        CaseTag::Gl2Fixed | CaseTag::Gl2RhoEps => (Flavor::Laurent, 2, Group::GL),
        _ => (flavor, n, tag.group()),
    };
    let s = special_s(&field, fl);
    let uses_e12 = matches!(tag, CaseTag::Eps | CaseTag::RhoEps | CaseTag::MuRhoEps | CaseTag::IotaHRhoEps | CaseTag::Gl2RhoEps);
    let gens = default_generators(&field, fl, n, group);
    let mut balls = Vec::new();
    for &m in &indices {
        let x = if uses_e12 { Mat::embed(&Mat::e12(&s.pow(m)), n)? } else { witness_x(m, &field, fl, n)? };
        balls.push(bounded_orbit_bfs(&phi, &x, &gens, radius)?);
    }
    let mut overlaps = Vec::new();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let c = balls[i].intersection_size(&balls[j]);
            if c > 0 {
                overlaps.push(json!({ "a": indices[i], "b": indices[j], "shared": c }));
            }
        }
    }
    let ok = overlaps.is_empty();
    if emit == Emit::Csv {
        let mut out = String::from("index,ball_size\n");
        for (m, b) in indices.iter().zip(&balls) {
            out.push_str(&format!("{m},{}\n", b.len()));
        }
        return Ok((Report::Text(out), ok));
    }
    let sizes: Vec<Value> = indices.iter().zip(&balls).map(|(m, b)| json!({ "index": m, "ball_size": b.len() })).collect();
    let report = json!({
        "case": tag.as_str(),
        "radius": radius,
        "generators": gens.len(),
        "balls": sizes,
        "overlaps": overlaps,
    });
    Ok((Report::Json(report), ok))
}

fn parse_type(src: &str, field: &FieldSpec) -> Result<((u32, u32), i8, u8), Failure> {
    let bad = || usage(format!("bad --type '{src}' (expected a:b,eps,i with eps = 1 or -1 and i = 0 or 1)"));
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    let [h, eps, i] = parts[..] else { return Err(bad()) };
    let (a, b) = h.split_once(':').ok_or_else(bad)?;
    let (a, b): (u32, u32) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a == 0 || b == 0 || a >= field.q() || b >= field.q() {
        return Err(usage(format!("h entries must be nonzero encodings below q = {}", field.q())));
    }
    let eps: i8 = eps.parse().map_err(|_| bad())?;
    let i: u8 = i.parse().map_err(|_| bad())?;
    if !matches!(eps, 1 | -1) || i > 1 {
        return Err(bad());
    }
    Ok(((a, b), eps, i))
}

fn fix_check(fa: &FieldArgs, ty: &str, phi0: &str, kmax: i64, words: usize, seed: u64) -> Run {
    let field = fa.build()?;
    let ((a, b), eps, i) = parse_type(ty, &field)?;
    let phi0 = Phi0::parse(phi0, &field)?;
    let phi = build_realized_aut(&field, (field.elem(a), field.elem(b)), eps, i, phi0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = fixed_subgroup_check(&phi, kmax, words, &mut rng)?;
    let order = aut_order(&phi)?;
    let checks: Vec<Value> = rep.checks.iter().map(|c| json!({ "name": c.name, "ok": c.ok })).collect();
    let report = json!({
        "type": wire::aut_type_to_json(&rep.ty),
        "case": rep.case,
        "order": order.order,
        "order_bound": order.bound,
        "checks": checks,
        "passed": rep.passed(),
    });
    Ok((Report::Json(report), rep.passed()))
}

fn run(cli: &Cli) -> Result<(Report, bool, Option<PathBuf>), Failure> {
    let (res, out) = match &cli.command {
        Command::Certify { field, case, flavor, n, indices, aut, level, output } => {
            (certify(field, case, (*flavor).into(), *n, indices, aut.as_ref(), *level), output)
        }
        Command::Nagao { field, mat, group, output } => (nagao(field, mat, (*group).into()), output),
        Command::Length { field, words, group, samples, seed, output } => {
            (length(field, words.as_deref(), (*group).into(), *samples, *seed), output)
        }
        Command::Autos { field, flavor, n, group, samples, seed, output } => {
            (autos(field, (*flavor).into(), *n, (*group).into(), *samples, *seed), output)
        }
        Command::OutTable { field, emit, output } => (out_table(field, *emit), output),
        Command::Orbit { field, case, flavor, n, indices, radius, emit, output } => {
            (orbit(field, case, (*flavor).into(), *n, indices, *radius, *emit), output)
        }
        Command::FixCheck { field, ty, phi0, kmax, words, seed, output } => (fix_check(field, ty, phi0, *kmax, *words, *seed), output),
    };
    let (report, ok) = res?;
    Ok((report, ok, out.out.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok, out)) => {
            let text = match report {
                Report::Json(v) => serde_json::to_string_pretty(&v).expect("reports serialize") + "\n",
                Report::Text(t) => t,
            };
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a checked property failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
    }
}
