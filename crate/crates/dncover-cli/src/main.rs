//! `dncover`: command-line front end for dihedral-covers.

mod encode;
mod job;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use job::{parse_field, run_value, JobError, JobSpec};

#[derive(Parser, Debug)]
#[command(name = "dncover", version, about = "Exact computations with dihedral covers")]
struct Cli {
    /// Base field: Q or Fp:<prime>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Read a job object or an array of jobs from a file ("-" for stdin).
    #[arg(long, global = true)]
    json: Option<String>,
    /// Print single-line JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n-torsion test of a degree-0 pair by the rank of its torsion matrix.
    Torsion {
        #[arg(long)]
        n: u32,
        /// Curve JSON, e.g. '{"g":1,"F":"x0^4 - x1^4"}'.
        #[arg(long)]
        curve: String,
        /// Pair JSON, e.g. '{"a":1,"b":1,"P":"0","f":"x0^2 + x1^2","q":"x0^2 - x1^2"}'.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Picard-group operations on matrix pairs: trivial, validate, normalize, tensor, inverse, iso, divisor.
    Pic {
        op: String,
        /// Ring JSON '{"l":2,"F":"..."}'.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        pair2: Option<String>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        s1: Option<String>,
        #[arg(long)]
        s2: Option<String>,
    },
    /// Mumford-class arithmetic: add, neg, mul, order, from-pair, to-pair, random-pair, two-torsion.
    Jacobian {
        op: String,
        #[arg(long)]
        curve: String,
        /// Class JSON '{"u":"x^2 + 1","v":"x"}'.
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        class2: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        count: Option<u64>,
    },
    /// Invariants of a simple or almost-simple cover; `cover check` also runs the hypothesis checks.
    Cover(CoverArgs),
    /// Same as `cover check`.
    Check(CoverArgs),
    /// Natural-deformation counts over P^d.
    Deform {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        d: u32,
    },
    /// Character table of D_n and the ε tensor.
    DnTable {
        #[arg(long)]
        n: u32,
        /// Also decompose π_*O_X for L = O(m).
        #[arg(long)]
        m: Option<i64>,
    },
}

#[derive(Args, Debug)]
struct CoverArgs {
    /// `check` to run the hypothesis checks.
    #[arg(value_parser = ["check"])]
    action: Option<String>,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: Option<i64>,
    /// P<d>, default P2.
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    e: Option<i64>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long = "F")]
    big_f: Option<String>,
    #[arg(long)]
    a0: Option<String>,
    #[arg(long = "a-inf")]
    a_inf: Option<String>,
}

fn json_arg(s: &str, flag: &str) -> Result<Value, JobError> {
    serde_json::from_str(s).map_err(|e| JobError::usage(format!("--{flag}: invalid JSON at line {} column {}: {e}", e.line(), e.column())))
}

fn insert_json(map: &mut Map<String, Value>, key: &str, s: &Option<String>) -> Result<(), JobError> {
    if let Some(s) = s {
        map.insert(key.into(), json_arg(s, key)?);
    }
    Ok(())
}

fn insert<T: Into<Value> + Clone>(map: &mut Map<String, Value>, key: &str, v: &Option<T>) {
    if let Some(v) = v {
        map.insert(key.into(), v.clone().into());
    }
}

fn cover_input(c: &CoverArgs, check: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(c.n));
    insert(&mut m, "m", &c.m);
    insert(&mut m, "base", &c.base);
    insert(&mut m, "e", &c.e);
    insert(&mut m, "a", &c.a);
    insert(&mut m, "F", &c.big_f);
    insert(&mut m, "a0", &c.a0);
    insert(&mut m, "a_inf", &c.a_inf);
    if check || c.action.is_some() {
        m.insert("check".into(), json!(true));
    }
    m
}

fn job_from_flags(cli: &Cli, command: &Command) -> Result<JobSpec, JobError> {
    let mut input = Map::new();
    let name = match command {
        Command::Torsion { n, curve, pair, cap } => {
            input.insert("n".into(), json!(n));
            input.insert("curve".into(), json_arg(curve, "curve")?);
            input.insert("pair".into(), json_arg(pair, "pair")?);
            insert(&mut input, "cap", cap);
            "torsion"
        }
        Command::Pic { op, ring, curve, pair, pair2, k, s1, s2 } => {
            input.insert("op".into(), json!(op));
            insert_json(&mut input, "ring", ring)?;
            insert_json(&mut input, "curve", curve)?;
            insert_json(&mut input, "pair", pair)?;
            insert_json(&mut input, "pair2", pair2)?;
            insert(&mut input, "k", k);
            insert(&mut input, "s1", s1);
            insert(&mut input, "s2", s2);
            "pic"
        }
        Command::Jacobian { op, curve, class, class2, pair, k, cap, count } => {
            input.insert("op".into(), json!(op));
            input.insert("curve".into(), json_arg(curve, "curve")?);
            insert_json(&mut input, "class", class)?;
            insert_json(&mut input, "class2", class2)?;
            insert_json(&mut input, "pair", pair)?;
            insert(&mut input, "k", k);
            insert(&mut input, "cap", cap);
            insert(&mut input, "count", count);
            "jacobian"
        }
        Command::Cover(c) => {
            input = cover_input(c, false);
            "cover"
        }
        Command::Check(c) => {
            input = cover_input(c, true);
            "check"
        }
        Command::Deform { n, m, d } => {
            input.insert("n".into(), json!(n));
            input.insert("m".into(), json!(m));
            input.insert("d".into(), json!(d));
            "deform"
        }
        Command::DnTable { n, m } => {
            input.insert("n".into(), json!(n));
            insert(&mut input, "m", m);
            "dn-table"
        }
    };
    Ok(JobSpec { command: name.into(), input: Value::Object(input), field: parse_field(&cli.field)?, seed: cli.seed })
}

/// Jobs in a batch inherit `--field` and `--seed` unless they set their own.
fn with_defaults(job: &Value, cli: &Cli) -> Value {
    let mut job = job.clone();
    if let Value::Object(m) = &mut job {
        m.entry("field").or_insert_with(|| json!(cli.field));
        m.entry("seed").or_insert_with(|| json!(cli.seed));
    }
    job
}

fn run_batch(cli: &Cli, path: &str) -> (u8, Value) {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return error_value(JobError::usage(format!("cannot read {path}: {e}")), cli.seed),
    };
    let doc: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return error_value(JobError::usage(format!("{path}: invalid JSON at line {} column {}: {e}", e.line(), e.column())), cli.seed),
    };
    match doc {
        Value::Array(jobs) => {
            let results: Vec<(u8, Value)> = jobs.par_iter().map(|j| run_value(&with_defaults(j, cli))).collect();
            let code = results.iter().map(|r| r.0).max().unwrap_or(0);
            (code, Value::Array(results.into_iter().map(|r| r.1).collect()))
        }
        single => run_value(&with_defaults(&single, cli)),
    }
}

fn error_value(e: JobError, seed: u64) -> (u8, Value) {
    (e.exit, json!({"seed": seed, "status": "error", "error": {"kind": e.kind, "message": e.message}}))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, out) = match (&cli.json, &cli.command) {
        (Some(path), None) => run_batch(&cli, path),
        (Some(_), Some(_)) => error_value(JobError::usage("--json cannot be combined with a subcommand"), cli.seed),
        (None, Some(cmd)) => match job_from_flags(&cli, cmd) {
            Ok(job) => job.run(),
            Err(e) => error_value(e, cli.seed),
        },
        (None, None) => error_value(JobError::usage("no command given; see --help"), cli.seed),
    };
    let text = if cli.compact { serde_json::to_string(&out) } else { serde_json::to_string_pretty(&out) };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("JSON values serialize"));
    if code != 0 {
        if let Some(msg) = out.get("error").and_then(|e| e.get("message")).and_then(Value::as_str) {
            eprintln!("dncover: {msg}");
        }
    }
    ExitCode::from(code)
}
