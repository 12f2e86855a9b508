//! JSON encodings shared by every I/O surface.
//!
//! Values that need a field to be interpreted (elements, matrices, maps) are
//! decoded against a caller-supplied [`FieldSpec`].

use serde_json::{json, Map, Value};

use crate::amalgam::{AmalgamWord, ReinerMap};
use crate::automorphism::{Group, StdAut, UnitCharacter};
use crate::error::{Error, Result};
use crate::gl2::AutType;
use crate::matrix::{CommutatorWord, Mat};
use crate::ring::{FieldSpec, Flavor, FqElem, RingAut, RingElem};
use crate::twisted::{GroupMap, TraceCertificate};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(format!("{what}: expected a nonnegative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("{what}: expected an integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))
}

pub fn field_to_json(f: &FieldSpec) -> Value {
    json!({ "p": f.p(), "e": f.e(), "modulus": f.modulus() })
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let p = as_u64(field_of(v, "p")?, "p")?;
    let e = as_u64(field_of(v, "e")?, "e")? as u32;
    let modulus = match v.get("modulus") {
        None | Some(Value::Null) => None,
        Some(m) => Some(as_array(m, "modulus")?.iter().map(|c| as_u64(c, "modulus")).collect::<Result<Vec<_>>>()?),
    };
    FieldSpec::new(p, e, modulus.as_deref())
}

pub fn fq_to_json(x: &FqElem) -> Value {
    json!(x.coeffs())
}

pub fn fq_from_json(field: &FieldSpec, v: &Value) -> Result<FqElem> {
    let cs = as_array(v, "field element")?.iter().map(|c| as_u64(c, "field element")).collect::<Result<Vec<_>>>()?;
    if cs.iter().any(|&c| c >= field.p() as u64) {
        return Err(bad(format!("field element coefficient out of range for p = {}", field.p())));
    }
    field.from_coeffs(&cs)
}

fn flavor_str(f: Flavor) -> &'static str {
    match f {
        Flavor::Poly => "poly",
        Flavor::Laurent => "laurent",
    }
}

pub fn flavor_from_str(s: &str) -> Result<Flavor> {
    match s {
        "poly" => Ok(Flavor::Poly),
        "laurent" => Ok(Flavor::Laurent),
        _ => Err(bad(format!("unknown flavor \"{s}\" (expected poly or laurent)"))),
    }
}

pub fn elem_to_json(x: &RingElem) -> Value {
    let coeffs: Vec<Value> = x.coeffs().iter().map(fq_to_json).collect();
    json!({ "flavor": flavor_str(x.flavor()), "low": x.low(), "coeffs": coeffs })
}

pub fn elem_from_json(field: &FieldSpec, v: &Value) -> Result<RingElem> {
    let flavor = flavor_from_str(field_of(v, "flavor")?.as_str().ok_or_else(|| bad("flavor: expected a string"))?)?;
    let low = as_i64(field_of(v, "low")?, "low")?;
    let coeffs = as_array(field_of(v, "coeffs")?, "coeffs")?.iter().map(|c| fq_from_json(field, c)).collect::<Result<Vec<_>>>()?;
    RingElem::from_coeffs(field, flavor, low, &coeffs)
}

pub fn mat_to_json(m: &Mat) -> Value {
    let rows: Vec<Value> = m.rows().iter().map(|r| Value::Array(r.iter().map(elem_to_json).collect())).collect();
    json!({ "n": m.n(), "entries": rows })
}

pub fn mat_from_json(field: &FieldSpec, v: &Value) -> Result<Mat> {
    let n = as_u64(field_of(v, "n")?, "n")? as usize;
    let rows = as_array(field_of(v, "entries")?, "entries")?;
    if rows.len() != n {
        return Err(bad(format!("expected {n} rows, got {}", rows.len())));
    }
    let rows = rows
        .iter()
        .map(|r| as_array(r, "row")?.iter().map(|e| elem_from_json(field, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}

pub fn ring_aut_to_json(r: &RingAut) -> Value {
    json!({ "frob_exp": r.frob_exp(), "a": fq_to_json(r.a()), "b": fq_to_json(r.b()), "eps": r.eps() })
}

pub fn ring_aut_from_json(field: &FieldSpec, flavor: Flavor, v: &Value) -> Result<RingAut> {
    let frob = as_u64(field_of(v, "frob_exp")?, "frob_exp")? as u32;
    let a = fq_from_json(field, field_of(v, "a")?)?;
    let b = fq_from_json(field, field_of(v, "b")?)?;
    let eps = as_i64(field_of(v, "eps")?, "eps")? as i8;
    RingAut::new(flavor, frob, a, b, eps)
}

pub fn std_aut_to_json(a: &StdAut) -> Value {
    let chi = match a.chi() {
        Some(c) => json!({ "k": c.k, "t_image": fq_to_json(&c.t_image) }),
        None => Value::Null,
    };
    json!({ "chi": chi, "rho": ring_aut_to_json(a.rho()), "g": mat_to_json(a.g()), "use_eps": a.use_eps() })
}

pub fn std_aut_from_json(field: &FieldSpec, v: &Value) -> Result<StdAut> {
    let g = mat_from_json(field, field_of(v, "g")?)?;
    let rho = ring_aut_from_json(field, g.flavor(), field_of(v, "rho")?)?;
    let chi = match field_of(v, "chi")? {
        Value::Null => None,
        c => Some(UnitCharacter::new(as_i64(field_of(c, "k")?, "k")?, fq_from_json(field, field_of(c, "t_image")?)?)?),
    };
    let use_eps = field_of(v, "use_eps")?.as_bool().ok_or_else(|| bad("use_eps: expected a boolean"))?;
    StdAut::new(chi, rho, g, use_eps)
}

pub fn word_to_json(w: &AmalgamWord) -> Value {
    Value::Array(w.factors.iter().map(|(t, m)| json!({ "factor": t, "mat": mat_to_json(m) })).collect())
}

/// Reads the factor list as given; no reduction or membership check.
pub fn word_from_json(field: &FieldSpec, v: &Value) -> Result<AmalgamWord> {
    let factors = as_array(v, "word")?
        .iter()
        .map(|f| {
            let t = as_u64(field_of(f, "factor")?, "factor")?;
            if t > 1 {
                return Err(bad("factor must be 0 or 1"));
            }
            Ok((t as u8, mat_from_json(field, field_of(f, "mat")?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AmalgamWord { factors })
}

pub fn commutator_word_to_json(w: &CommutatorWord) -> Value {
    Value::Array(w.pairs.iter().map(|(a, b)| json!([mat_to_json(a), mat_to_json(b)])).collect())
}

fn group_str(g: Group) -> &'static str {
    match g {
        Group::GL => "GL",
        Group::SL => "SL",
    }
}

pub fn reiner_to_json(nu: &ReinerMap) -> Value {
    json!({ "d": nu.degree_bound(), "images": nu.images().iter().map(elem_to_json).collect::<Vec<_>>() })
}

pub fn aut_type_to_json(t: &AutType) -> Value {
    json!({
        "h": [fq_to_json(&t.h.0), fq_to_json(&t.h.1)],
        "eps": t.eps,
        "i": t.i,
        "phi0": t.phi0.tag(),
        "label": t.label(),
    })
}

pub fn group_map_to_json(phi: &GroupMap) -> Value {
    match phi {
        GroupMap::Std(a) => {
            let mut v = std_aut_to_json(a);
            v["kind"] = json!("std");
            v
        }
        GroupMap::Reiner { nu, group } => json!({ "kind": "reiner", "group": group_str(*group), "nu": reiner_to_json(nu) }),
        GroupMap::Realized(r) => {
            let mut v = std_aut_to_json(r.aut());
            v["kind"] = json!("realized");
            v["type"] = aut_type_to_json(r.ty());
            v
        }
        GroupMap::Compose(parts) => json!({ "kind": "compose", "maps": parts.iter().map(group_map_to_json).collect::<Vec<_>>() }),
    }
}

pub fn certificate_to_json(c: &TraceCertificate) -> Value {
    let mut m = Map::new();
    m.insert("aut".into(), group_map_to_json(&c.aut));
    m.insert("case".into(), json!(c.case));
    m.insert("indices".into(), json!(c.indices));
    m.insert("r".into(), json!(c.r));
    m.insert("traces".into(), Value::Array(c.traces.iter().map(elem_to_json).collect()));
    m.insert("s_degrees".into(), json!(c.s_degrees));
    m.insert("verdict".into(), json!(c.verdict.as_str()));
    if !c.notes.is_empty() {
        m.insert("notes".into(), json!(c.notes));
    }
    Value::Object(m)
}
