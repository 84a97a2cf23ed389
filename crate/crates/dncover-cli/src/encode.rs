//! JSON encoding and decoding of library types.

use dihedral_covers::cover_geometry::{
    AlmostSimpleCheckReport, BaseGeometry, BranchDivisor, DnEpimorphism, InvariantReport, RationalPointCheck, SimpleCheckReport, Verdict,
};
use dihedral_covers::deformations::{DefReport, H1Check};
use dihedral_covers::double_cover::{BundlePair, DoubleCoverRing, DivisorOfSection};
use dihedral_covers::exactmath::{parse::parse_hpoly, parse::parse_upoly, Field, HPoly, UPoly};
use dihedral_covers::hyperelliptic::{HECurve, MumfordClass, TorsionMatrix};
use serde_json::{json, Map, Value};

use crate::job::JobError;

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JobError> {
    v.get(key).ok_or_else(|| JobError::usage(format!("missing field \"{key}\"")))
}

pub fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str, JobError> {
    get(v, key)?.as_str().ok_or_else(|| JobError::usage(format!("field \"{key}\" must be a string")))
}

pub fn get_i64(v: &Value, key: &str) -> Result<i64, JobError> {
    get(v, key)?.as_i64().ok_or_else(|| JobError::usage(format!("field \"{key}\" must be an integer")))
}

pub fn opt_i64(v: &Value, key: &str) -> Result<Option<i64>, JobError> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => get_i64(v, key).map(Some),
    }
}

pub fn get_u32(v: &Value, key: &str) -> Result<u32, JobError> {
    u32::try_from(get_i64(v, key)?).map_err(|_| JobError::usage(format!("field \"{key}\" must be a nonnegative 32-bit integer")))
}

pub fn opt_str<'a>(v: &'a Value, key: &str) -> Result<Option<&'a str>, JobError> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => get_str(v, key).map(Some),
    }
}

fn poly_err(key: &str) -> impl Fn(dihedral_covers::error::Error) -> JobError + '_ {
    move |e| JobError::from(e).context(&format!("in \"{key}\""))
}

pub fn binary_form(v: &Value, key: &str, field: Field, degree: Option<u32>) -> Result<HPoly, JobError> {
    parse_hpoly(get_str(v, key)?, field, 2, degree).map_err(poly_err(key))
}

pub fn ternary_form(v: &Value, key: &str, field: Field) -> Result<HPoly, JobError> {
    parse_hpoly(get_str(v, key)?, field, 3, None).map_err(poly_err(key))
}

pub fn upoly(v: &Value, key: &str, field: Field) -> Result<UPoly, JobError> {
    parse_upoly(get_str(v, key)?, field).map_err(poly_err(key))
}

/// `{"g": 2, "F": "..."}`; `g` is optional and checked when present.
pub fn curve(v: &Value, field: Field) -> Result<HECurve, JobError> {
    let f = binary_form(v, "F", field, None)?;
    let c = HECurve::new(f)?;
    if let Some(g) = opt_i64(v, "g")? {
        if g != c.genus() as i64 {
            return Err(JobError::usage(format!("\"g\" is {g} but F has genus {}", c.genus())));
        }
    }
    Ok(c)
}

/// `{"l": 3, "F": "..."}`; `l` is optional and checked when present.
pub fn ring(v: &Value, field: Field) -> Result<DoubleCoverRing, JobError> {
    let r = DoubleCoverRing::new(binary_form(v, "F", field, None)?)?;
    if let Some(l) = opt_i64(v, "l")? {
        if l != r.l() {
            return Err(JobError::usage(format!("\"l\" is {l} but F has degree {}", 2 * r.l())));
        }
    }
    Ok(r)
}

/// `{"a": 1, "b": 2, "P": "...", "f": "...", "q": "..."}` over a ring with `deg F = 2l`.
pub fn pair(v: &Value, l: i64, field: Field) -> Result<BundlePair, JobError> {
    let (a, b) = (get_i64(v, "a")?, get_i64(v, "b")?);
    let deg = |d: i64| u32::try_from(d).map_err(|_| JobError::usage(format!("splitting ({a}, {b}) gives a negative entry degree")));
    let p = binary_form(v, "P", field, Some(deg(l)?))?;
    let f = binary_form(v, "f", field, Some(deg(l - a + b)?))?;
    let q = binary_form(v, "q", field, Some(deg(l + a - b)?))?;
    Ok(BundlePair::new(l, a, b, p, f, q))
}

pub fn pair_json(p: &BundlePair) -> Value {
    json!({"a": p.a, "b": p.b, "P": p.p.to_string(), "f": p.f.to_string(), "q": p.q.to_string()})
}

/// `{"u": "x^2 + 1", "v": "x"}`, validated as a reduced pair.
pub fn class(v: &Value, curve: &HECurve) -> Result<MumfordClass, JobError> {
    let field = curve.ring().field();
    let c = MumfordClass { u: upoly(v, "u", field)?, v: upoly(v, "v", field)? };
    c.validate(curve)?;
    Ok(c)
}

pub fn class_json(c: &MumfordClass) -> Value {
    json!({"u": c.u.to_string(), "v": c.v.to_string()})
}

pub fn base(v: &Value) -> Result<BaseGeometry, JobError> {
    let m = get_i64(v, "m")?;
    match v.get("base") {
        None | Some(Value::Null) => Ok(BaseGeometry::plane(m)),
        Some(Value::String(s)) => {
            let d = s
                .strip_prefix('P')
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| JobError::usage(format!("base must be P<d> or a surface object, got \"{s}\"")))?;
            Ok(BaseGeometry::ProjectiveSpace { d, m })
        }
        Some(obj @ Value::Object(_)) => Ok(BaseGeometry::AbstractSurface {
            chi: get_i64(obj, "chi")?,
            k2: get_i64(obj, "k2")?,
            kl: get_i64(obj, "kl")?,
            l2: get_i64(obj, "l2")?,
        }),
        Some(_) => Err(JobError::usage("base must be a string or an object")),
    }
}

fn base_json(b: &BaseGeometry) -> Value {
    match *b {
        BaseGeometry::ProjectiveSpace { d, m } => json!({"P": d, "m": m}),
        BaseGeometry::AbstractSurface { chi, k2, kl, l2 } => json!({"chi": chi, "k2": k2, "kl": kl, "l2": l2}),
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({"verdict": v.label(), "detail": v.detail()})
}

pub fn invariants_json(r: &InvariantReport) -> Value {
    json!({
        "n": r.n,
        "base": base_json(&r.base),
        "e": r.e,
        "omega_degree": r.omega_degree,
        "omega_intersections": r.omega_intersections.map(|(a, b)| json!([a, b])),
        "K2": r.k2,
        "chi": r.chi,
        "pushforward": r.pushforward,
        "branch_degree": r.branch_degree,
        "cusp_count": r.cusp_count,
        "label": r.classification.to_string(),
        "unchecked_hypotheses": r.unchecked_hypotheses,
    })
}

fn points_json(p: &Option<RationalPointCheck>) -> Value {
    match p {
        None => Value::Null,
        Some(p) => json!({"points": p.points, "all_transverse": p.all_transverse}),
    }
}

pub fn simple_checks_json(c: &SimpleCheckReport) -> Value {
    json!({
        "smooth_off_F": verdict_json(&c.smooth_off_f),
        "transversal": verdict_json(&c.transversal),
        "intersection_nonempty": c.intersection_nonempty,
        "irreducible": c.irreducible,
        "rational_points": points_json(&c.rational_points),
    })
}

pub fn almost_simple_checks_json(c: &AlmostSimpleCheckReport) -> Value {
    json!({
        "a0_transverse_F": verdict_json(&c.a0_transverse_f),
        "a0_a_inf_disjoint": verdict_json(&c.a0_a_inf_disjoint),
        "a_inf_smooth": verdict_json(&c.a_inf_smooth),
        "smooth_off_F": verdict_json(&c.smooth_off_f),
        "all_pass": c.all_pass(),
    })
}

pub fn branch_json(b: &BranchDivisor) -> Value {
    json!({
        "polynomial": b.polynomial.to_string(),
        "degree": b.degree,
        "squarefree_part": b.squarefree_part.to_string(),
        "cusp_count": b.cusp_count,
    })
}

pub fn epimorphism_json(d: &DnEpimorphism) -> Value {
    json!({"holds": d.holds, "statement": d.statement})
}

pub fn torsion_matrix_json(t: &TorsionMatrix) -> Value {
    json!({
        "rows": t.rows(),
        "cols": t.cols(),
        "source_degrees": t.source_degrees,
        "target_degrees": t.target_degrees,
        "entries": t.matrix.data.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn divisor_json(d: &DivisorOfSection) -> Value {
    json!({
        "u_form": d.u_form.to_string(),
        "u": d.u.to_string(),
        "v": d.v.to_string(),
        "at_infinity": d.at_infinity,
        "embedded": d.embedded.as_ref().map(|e| e.to_string()),
    })
}

fn h1_json(h: &H1Check) -> Value {
    let offenders: Vec<Value> = h
        .offenders
        .iter()
        .map(|o| json!({"summand": o.summand, "as_omega": {"p": o.as_omega.0, "k": o.as_omega.1}, "h1": o.h1}))
        .collect();
    json!({"vanishes": h.vanishes, "offenders": offenders})
}

pub fn def_json(r: &DefReport) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(r.n));
    m.insert("m".into(), json!(r.m));
    m.insert("d".into(), json!(r.d));
    m.insert("target".into(), json!(r.target));
    m.insert("source".into(), json!(r.source));
    m.insert("source_exact".into(), json!(r.source_exact));
    m.insert("lower_bound".into(), json!(r.lower_bound));
    m.insert("unresolved".into(), json!(r.unresolved));
    m.insert("h1_vanishing".into(), h1_json(&r.h1));
    m.insert("smalldef_applies".into(), json!(r.smalldef_applies));
    Value::Object(m)
}
