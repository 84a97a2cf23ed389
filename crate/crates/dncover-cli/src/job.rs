//! A job is a command, an input document, a field and a seed; running it yields a JSON report.

use dihedral_covers::cover_geometry::{
    branch_divisor, branch_divisor_almost_simple, check_almost_simple, dn_epimorphism_criterion, invariants, spec_invariants,
    AlmostSimpleSpec, BaseGeometry, SimpleCoverSpec,
};
use dihedral_covers::deformations::def_prime_dims;
use dihedral_covers::dihedral_algebra::{eigensheaf_decomposition, epsilon, CharTable};
use dihedral_covers::double_cover::{divisor_of_section, inverse, is_isomorphic, is_locally_free, tensor, validate};
use dihedral_covers::error::Error;
use dihedral_covers::exactmath::Field;
use dihedral_covers::hyperelliptic::{
    cantor_add, class_from_matrix, class_order, enumerate_two_torsion, is_n_torsion, matrix_from_class, negate, random_degree0_pair, scalar_mul,
    stratum, torsion_matrix, DEFAULT_ORDER_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::encode::*;

pub const COMMANDS: [&str; 7] = ["torsion", "pic", "cover", "deform", "check", "dn-table", "jacobian"];

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: String,
    pub input: Value,
    pub field: Field,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobError {
    /// 1 for a reported hypothesis or validation failure, 2 for usage and parse errors.
    pub exit: u8,
    pub kind: &'static str,
    pub message: String,
}

impl JobError {
    pub fn usage(msg: impl Into<String>) -> JobError {
        JobError { exit: 2, kind: "usage", message: msg.into() }
    }

    pub fn context(mut self, ctx: &str) -> JobError {
        self.message = format!("{ctx}: {}", self.message);
        self
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> JobError {
        let (exit, kind) = match e {
            Error::Parse { .. } => (2, "parse"),
            Error::FieldMismatch(..) => (2, "field"),
            Error::Hypothesis(_) => (1, "hypothesis"),
            Error::NonNormal => (1, "hypothesis"),
            Error::InvalidInput(_) => (1, "validation"),
            Error::NoRationalRoot(_) => (1, "validation"),
            Error::KernelBound { .. } => (1, "inconclusive"),
            Error::Invariant(_) => (1, "internal"),
        };
        JobError { exit, kind, message: e.to_string() }
    }
}

/// `Q` or `Fp:<p>`.
pub fn parse_field(s: &str) -> Result<Field, JobError> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| JobError::usage(format!("field must be Q or Fp:<prime>, got \"{s}\"")))?;
    Field::prime(p).map_err(|e| JobError::usage(e.to_string()))
}

impl JobSpec {
    /// `{"command": ..., "input": {...}, "field": "Q", "seed": 0}`; field and seed are optional.
    pub fn from_json(v: &Value) -> Result<JobSpec, JobError> {
        let command = get_str(v, "command")?.to_string();
        if !COMMANDS.contains(&command.as_str()) {
            return Err(JobError::usage(format!("unknown command \"{command}\"")));
        }
        let input = v.get("input").cloned().unwrap_or_else(|| json!({}));
        if !input.is_object() {
            return Err(JobError::usage("\"input\" must be an object"));
        }
        let field = parse_field(opt_str(v, "field")?.unwrap_or("Q"))?;
        let seed = match v.get("seed") {
            None | Some(Value::Null) => 0,
            Some(s) => s.as_u64().ok_or_else(|| JobError::usage("\"seed\" must be a nonnegative integer"))?,
        };
        Ok(JobSpec { command, input, field, seed })
    }

    pub fn run(&self) -> (u8, Value) {
        let header = |status: &str| {
            json!({"command": self.command, "field": self.field.to_string(), "seed": self.seed, "status": status})
        };
        match dispatch(self) {
            Ok(result) => {
                // a completed check whose hypotheses fail is reported with exit 1
                let failed = result.get("hypotheses_hold") == Some(&Value::Bool(false));
                let mut out = header(if failed { "hypothesis-failed" } else { "ok" });
                out["result"] = result;
                (u8::from(failed), out)
            }
            Err(e) => {
                let mut out = header("error");
                out["error"] = json!({"kind": e.kind, "message": e.message});
                (e.exit, out)
            }
        }
    }
}

/// Runs a job that is not yet known to be well formed.
pub fn run_value(v: &Value) -> (u8, Value) {
    match JobSpec::from_json(v) {
        Ok(job) => job.run(),
        Err(e) => (
            e.exit,
            json!({
                "command": v.get("command"),
                "field": v.get("field"),
                "seed": v.get("seed"),
                "status": "error",
                "error": {"kind": e.kind, "message": e.message},
            }),
        ),
    }
}

fn dispatch(job: &JobSpec) -> Result<Value, JobError> {
    let (v, field) = (&job.input, job.field);
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    match job.command.as_str() {
        "torsion" => {
            let curve = curve(get(v, "curve")?, field)?;
            let n = get_u32(v, "n")?;
            let pair = pair(get(v, "pair")?, curve.ring().l(), field)?;
            let torsion = is_n_torsion(n, &pair, &curve)?;
            let tm = torsion_matrix(n, &pair, &curve)?;
            let class = class_from_matrix(&pair, &curve)?;
            let cap = opt_i64(v, "cap")?.map_or(DEFAULT_ORDER_CAP, |c| c.max(1) as u64);
            let order = class_order(&class, &curve, cap)?;
            Ok(json!({
                "n": n,
                "torsion": torsion,
                "matrix": torsion_matrix_json(&tm),
                "class": class_json(&class),
                "class_order": order,
            }))
        }
        "pic" => pic(v, field),
        "jacobian" => jacobian(v, field, &mut rng),
        "cover" if v.get("check").and_then(Value::as_bool) == Some(true) => cover_check(v, field, &mut rng),
        "cover" => cover(v, field),
        "check" => cover_check(v, field, &mut rng),
        "deform" => Ok(def_json(&def_prime_dims(get_u32(v, "n")?, get_i64(v, "m")?, get_u32(v, "d")?)?)),
        "dn-table" => dn_table(v),
        other => Err(JobError::usage(format!("unknown command \"{other}\""))),
    }
}

fn pic(v: &Value, field: Field) -> Result<Value, JobError> {
    let ring = match (v.get("ring"), v.get("curve")) {
        (Some(r), _) => ring(r, field)?,
        (None, Some(c)) => ring(c, field)?,
        (None, None) => return Err(JobError::usage("pic needs \"ring\" or \"curve\"")),
    };
    let l = ring.l();
    let op = get_str(v, "op")?;
    if op == "trivial" {
        return Ok(json!({"pair": pair_json(&ring.trivial_pair())}));
    }
    let p1 = pair(get(v, "pair")?, l, field)?;
    match op {
        "validate" => {
            let (free, locus) = is_locally_free(&p1);
            Ok(json!({"valid": validate(&p1, &ring), "locally_free": free, "non_free_locus": locus.to_string()}))
        }
        "normalize" => Ok(json!({"pair": pair_json(&p1.normalized())})),
        "tensor" => Ok(json!({"pair": pair_json(&tensor(&p1, &pair(get(v, "pair2")?, l, field)?, &ring)?)})),
        "inverse" => Ok(json!({"pair": pair_json(&inverse(&p1, &ring)?)})),
        "iso" => Ok(json!({"isomorphic": is_isomorphic(&p1, &pair(get(v, "pair2")?, l, field)?, &ring)?})),
        "divisor" => {
            let k = get_i64(v, "k")?;
            let deg = |d: i64| u32::try_from(d).map_err(|_| JobError::usage(format!("twist k = {k} is too small for this splitting")));
            let s1 = binary_form(v, "s1", field, Some(deg(k - p1.a)?))?;
            let s2 = binary_form(v, "s2", field, Some(deg(k - p1.b)?))?;
            Ok(json!({"divisor": divisor_json(&divisor_of_section(&p1, &ring, k, &s1, &s2)?)}))
        }
        other => Err(JobError::usage(format!("unknown pic op \"{other}\" (trivial, validate, normalize, tensor, inverse, iso, divisor)"))),
    }
}

fn jacobian(v: &Value, field: Field, rng: &mut ChaCha8Rng) -> Result<Value, JobError> {
    let curve = curve(get(v, "curve")?, field)?;
    let cap = opt_i64(v, "cap")?.map_or(DEFAULT_ORDER_CAP, |c| c.max(1) as u64);
    match get_str(v, "op")? {
        "add" => Ok(json!({"class": class_json(&cantor_add(&class(get(v, "class")?, &curve)?, &class(get(v, "class2")?, &curve)?, &curve)?)})),
        "neg" => Ok(json!({"class": class_json(&negate(&class(get(v, "class")?, &curve)?))})),
        "mul" => Ok(json!({"class": class_json(&scalar_mul(&class(get(v, "class")?, &curve)?, get_i64(v, "k")?, &curve)?)})),
        "order" => Ok(json!({"order": class_order(&class(get(v, "class")?, &curve)?, &curve, cap)?, "cap": cap})),
        "from-pair" => {
            let p = pair(get(v, "pair")?, curve.ring().l(), field)?;
            let s = stratum(&p, &curve)?;
            Ok(json!({"class": class_json(&class_from_matrix(&p, &curve)?), "stratum": {"a": s.a, "b": s.b, "degree": s.d}}))
        }
        "to-pair" => Ok(json!({"pair": pair_json(&matrix_from_class(&class(get(v, "class")?, &curve)?, &curve)?)})),
        "random-pair" => {
            let count = opt_i64(v, "count")?.unwrap_or(1).max(0) as usize;
            let pairs = (0..count)
                .map(|_| {
                    let p = random_degree0_pair(&curve, rng)?;
                    let c = class_from_matrix(&p, &curve)?;
                    Ok(json!({"pair": pair_json(&p), "class": class_json(&c)}))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(json!({"pairs": pairs}))
        }
        "two-torsion" => {
            let pairs = enumerate_two_torsion(&curve)?;
            let out = pairs
                .iter()
                .map(|p| {
                    let c = class_from_matrix(p, &curve)?;
                    Ok(json!({"pair": pair_json(p), "class": class_json(&c), "order": class_order(&c, &curve, 2)?}))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(json!({"count": out.len(), "classes": out}))
        }
        other => Err(JobError::usage(format!(
            "unknown jacobian op \"{other}\" (add, neg, mul, order, from-pair, to-pair, random-pair, two-torsion)"
        ))),
    }
}

fn cover(v: &Value, field: Field) -> Result<Value, JobError> {
    let n = get_u32(v, "n")?;
    if let (Some(_), Some(_)) = (v.get("a"), v.get("F")) {
        let spec = SimpleCoverSpec::new(n, ternary_form(v, "a", field)?, ternary_form(v, "F", field)?)?;
        return Ok(json!({"invariants": invariants_json(&spec_invariants(&spec, None)?)}));
    }
    let e = opt_i64(v, "e")?.unwrap_or(0);
    Ok(json!({"invariants": invariants_json(&invariants(n, base(v)?, e)?)}))
}

fn cover_check(v: &Value, field: Field, rng: &mut ChaCha8Rng) -> Result<Value, JobError> {
    let n = get_u32(v, "n")?;
    let f = ternary_form(v, "F", field)?;
    if v.get("a0").is_some() || v.get("a_inf").is_some() {
        let spec = AlmostSimpleSpec::new(n, f, ternary_form(v, "a0", field)?, ternary_form(v, "a_inf", field)?)?;
        let checks = check_almost_simple(&spec, rng)?;
        let inv = invariants(n, BaseGeometry::plane(spec.m as i64), spec.e as i64)?;
        return Ok(json!({
            "kind": "almost-simple",
            "hypotheses_hold": checks.all_pass(),
            "checks": almost_simple_checks_json(&checks),
            "branch": branch_json(&branch_divisor_almost_simple(&spec)),
            "invariants": invariants_json(&inv),
        }));
    }
    let spec = SimpleCoverSpec::new(n, ternary_form(v, "a", field)?, f)?;
    let epi = dn_epimorphism_criterion(&spec, rng)?;
    let inv = spec_invariants(&spec, Some(&epi.checks))?;
    Ok(json!({
        "kind": "simple",
        "hypotheses_hold": epi.holds == Some(true),
        "checks": simple_checks_json(&epi.checks),
        "branch": branch_json(&branch_divisor(&spec)),
        "dn_epimorphism": epimorphism_json(&epi),
        "invariants": invariants_json(&inv),
    }))
}

fn dn_table(v: &Value) -> Result<Value, JobError> {
    let n = get_u32(v, "n")?;
    let table = CharTable::new(n)?;
    let group = table.group();
    let elements: Vec<_> = group.elements().collect();
    let names: Vec<String> = elements.iter().map(|g| format!("s^{} t^{}", g.k, g.t)).collect();
    let rows: Vec<Value> = table
        .irreps()
        .iter()
        .enumerate()
        .map(|(i, irrep)| {
            let chars: Vec<String> = elements.iter().map(|g| table.character(i, *g).to_string()).collect();
            json!({"irrep": irrep.to_string(), "dim": irrep.dim(), "characters": chars})
        })
        .collect();
    let mut eps = vec![];
    for k in 1..n {
        let mut block = vec![];
        for i in 1..n {
            block.push((1..n).map(|j| epsilon(n, k, i, j)).collect::<Result<Vec<u8>, Error>>()?);
        }
        eps.push(block);
    }
    let mut out = json!({
        "n": n,
        "zeta": format!("z = exp(2 pi i / {n})"),
        "elements": names,
        "table": rows,
        "orthogonality_verified": table.verify(),
        "epsilon": eps,
    });
    if let Some(m) = opt_i64(v, "m")? {
        let dec = eigensheaf_decomposition(n, m)?;
        out["eigensheaves"] = Value::Array(dec.iter().map(|e| json!({"irrep": e.irrep.to_string(), "summands": e.summands})).collect());
    }
    Ok(out)
}
