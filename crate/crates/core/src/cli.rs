//! Command-line front end. The binary only forwards `argv` to [`run`].
//!
//! Reports are JSON objects carrying `"schema": "hyperweight/1"` (keys in
//! sorted order, so identical inputs give identical bytes) or flat CSV.
//! Counts above `2^53` are emitted as decimal strings.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::code::{
    evaluate_on_torus, exhaustive_spectrum, sample_weights, write_codeword_csv, write_generator_matrix_csv, CodeError,
    CodeParams, CodeShape, Spectrum,
};
use crate::extremal::{
    analyze, experimental_next_to_min, min_distance, next_to_min, Analysis, ExtremalError, RemainderClass,
};
use crate::gf::FieldSpec;
use crate::groebner::GroebnerError;
use crate::limits::Limits;
use crate::poly::{parse_poly, Polynomial};
use crate::verify::{run_all, VerifyConfig};

pub const SCHEMA: &str = "hyperweight/1";

/// Largest integer a JSON consumer can hold exactly in a double.
const MAX_SAFE_INTEGER: u64 = 1 << 53;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("resource gate: {0}")]
    Gate(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 check failure, 2 usage error, 3 resource gate.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Gate(_) => 3,
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::SizeCap { .. } | CodeError::Groebner(GroebnerError::BoxTooLarge { .. }) => {
                CliError::Gate(e.to_string())
            }
            CodeError::Groebner(GroebnerError::StepLimit(_)) => CliError::Gate(e.to_string()),
            CodeError::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExtremalError> for CliError {
    fn from(e: ExtremalError) -> Self {
        match e {
            ExtremalError::Code(c) => c.into(),
            ExtremalError::Groebner(GroebnerError::StepLimit(_) | GroebnerError::BoxTooLarge { .. }) => {
                CliError::Gate(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hyperweight", version, about = "Weights of toric codes over hypersimplices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length, dimension, regime, minimum distance and next-to-minimal weight.
    /// `--out` writes the generator matrix as CSV.
    Params(RunConfig),
    /// Weight of the codeword of `--f`. `--out` writes the codeword as CSV.
    Weight(RunConfig),
    /// Remainder classes, lower bound and product-form verdict for `--f`.
    Classify(RunConfig),
    /// Exhaustive weight distribution, or a sampled one with `--samples`.
    Spectrum(RunConfig),
    /// Runs the eleven acceptance checks.
    Verify(RunConfig),
}

#[derive(Debug, Clone, Args, Default)]
pub struct RunConfig {
    /// Field order, a prime power between 4 and 65536.
    #[arg(long)]
    pub q: Option<u64>,
    /// Number of variables.
    #[arg(long)]
    pub s: Option<usize>,
    /// Hypersimplex level.
    #[arg(long)]
    pub d: Option<usize>,
    /// Polynomial in t1..ts, e.g. "(t1+t4)*(t2+g*t5)".
    #[arg(long)]
    pub f: Option<String>,
    /// Seed for every pseudorandom draw.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of sampled codewords.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also report the unproven next-to-minimal values for s = 2d +- 1.
    #[arg(long)]
    pub experimental: bool,
    /// Output path; see each command.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A finished command: the rendered report and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

fn count(n: u64) -> Value {
    if n > MAX_SAFE_INTEGER {
        Value::String(n.to_string())
    } else {
        Value::from(n)
    }
}

fn report(fields: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    if let Value::Object(m) = fields {
        map.extend(m);
    }
    Value::Object(map)
}

impl RunConfig {
    fn field(&self) -> Result<Arc<FieldSpec>, CliError> {
        let q = self.q.ok_or_else(|| CliError::Usage("--q is required".into()))?;
        FieldSpec::with_order(q).map(Arc::new).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn arity(&self) -> Result<usize, CliError> {
        self.s.ok_or_else(|| CliError::Usage("--s is required".into()))
    }

    fn params(&self) -> Result<CodeParams, CliError> {
        let d = self.d.ok_or_else(|| CliError::Usage("--d is required".into()))?;
        CodeParams::new(self.field()?, self.arity()?, d).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn polynomial(&self, field: &Arc<FieldSpec>, s: usize) -> Result<Polynomial, CliError> {
        let text = self.f.as_deref().ok_or_else(|| CliError::Usage("--f is required".into()))?;
        parse_poly(text, field, s).map_err(|e| CliError::Usage(format!("cannot parse --f: {e}")))
    }

    fn open_out(&self) -> Result<Option<BufWriter<File>>, CliError> {
        Ok(match &self.out {
            Some(path) => Some(BufWriter::new(File::create(path)?)),
            None => None,
        })
    }
}

fn regime_fields(shape: CodeShape, experimental: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("delta".into(), min_distance(shape).map_or(Value::Null, count));
    let ntm = match next_to_min(shape) {
        Ok(v) => count(v),
        Err(ExtremalError::UnsupportedRegime { note, .. }) => Value::String(note),
        Err(_) => Value::Null,
    };
    m.insert("ntm".into(), ntm);
    if experimental {
        let value = match experimental_next_to_min(shape) {
            Ok(Some(e)) => json!({"value": count(e.value), "marker": e.marker}),
            _ => Value::Null,
        };
        m.insert("experimental".into(), value);
    }
    m
}

pub fn cmd_params(cfg: &RunConfig, limits: &Limits) -> Result<Outcome, CliError> {
    let p = cfg.params()?;
    let shape = p.shape();
    let n = shape.length().map_or_else(|| Value::String(((p.q() as u128 - 1).pow(p.s() as u32)).to_string()), count);
    let mut fields = json!({
        "q": p.q(), "s": p.s(), "d": p.d(), "n": n, "dim": count(shape.dimension()),
        "regime": p.regime().to_string(),
    });
    fields.as_object_mut().expect("object").extend(regime_fields(shape, cfg.experimental));
    if let Some(mut w) = cfg.open_out()? {
        write_generator_matrix_csv(&p, limits, &mut w)?;
        w.flush()?;
    }
    Ok(Outcome { report: report(fields), exit_code: 0 })
}

pub fn cmd_weight(cfg: &RunConfig, limits: &Limits) -> Result<Outcome, CliError> {
    let field = cfg.field()?;
    let s = cfg.arity()?;
    let f = cfg.polynomial(&field, s)?;
    // d only matters for validation here; any admissible level will do
    let p = CodeParams::new(field, s, cfg.d.unwrap_or(1)).map_err(|e| CliError::Usage(e.to_string()))?;
    let word = evaluate_on_torus(&f, &p, limits)?;
    let w = word.weight();
    if let Some(mut out) = cfg.open_out()? {
        write_codeword_csv(&word, p.field(), &mut out)?;
        out.flush()?;
    }
    let fields = json!({
        "q": p.q(), "s": s, "f": f.to_string(),
        "weight": count(w.weight), "zeros": count(w.zeros), "length": count(w.length),
    });
    Ok(Outcome { report: report(fields), exit_code: 0 })
}

fn class_json(class: &RemainderClass) -> Value {
    let mut v = serde_json::to_value(class).expect("plain enum");
    if let Value::Object(m) = &mut v {
        m.insert("label".into(), class.to_string().into());
    }
    v
}

fn analysis_json(a: &Analysis, p: &CodeParams) -> Value {
    let field = p.field();
    let pivots: Vec<Value> = a
        .pivots
        .iter()
        .map(|piv| {
            let c = &piv.classification;
            json!({
                "j": c.j,
                "j_original": a.perm.original_var(c.j),
                "class": class_json(&c.class),
                "witness": c.witness.as_ref().map(|m| m.to_string()),
                "witness_original": c.witness_original.as_ref().map(|m| m.to_string()),
                "contribution": count(piv.contribution),
            })
        })
        .collect();
    let (verdict, pairs) = if 2 * p.d() > p.s() {
        ("undefined (2d > s)", Value::Null)
    } else {
        match &a.min_weight_form {
            Some(pairs) => (
                "minimum-weight form",
                pairs
                    .iter()
                    .map(|x| {
                        json!({
                            "i": x.i, "c": x.c, "a": field.format(x.a),
                            "i_original": a.perm.original_var(x.i), "c_original": a.perm.original_var(x.c),
                        })
                    })
                    .collect(),
            ),
            None => ("not minimum-weight form", Value::Null),
        }
    };
    json!({
        "normalized": a.normalized.to_string(),
        "pivots": pivots,
        "verdict": verdict,
        "pairs": pairs,
        "lower_bound": a.lower_bound.map(count),
    })
}

pub fn cmd_classify(cfg: &RunConfig, _limits: &Limits) -> Result<Outcome, CliError> {
    let p = cfg.params()?;
    let f = cfg.polynomial(p.field(), p.s())?;
    if !f.is_squarefree_homog(p.d() as u32) {
        return Err(CliError::Usage(format!("--f must be square-free homogeneous of degree {}", p.d())));
    }
    let scaled = f.leading_coeff() != Some(p.field().one());
    let f = f.monic();
    let a = analyze(&f, &p)?;
    let mut fields = json!({
        "q": p.q(), "s": p.s(), "d": p.d(), "f": f.to_string(), "scaled_to_monic": scaled,
    });
    if let (Value::Object(m), Value::Object(extra)) = (&mut fields, analysis_json(&a, &p)) {
        m.extend(extra);
    }
    Ok(Outcome { report: report(fields), exit_code: 0 })
}

fn spectrum_json(sp: &Spectrum) -> Value {
    let dist: Vec<Value> = sp.distribution.iter().map(|(w, c)| json!({"weight": count(*w), "count": count(*c)})).collect();
    json!({
        "distribution": dist,
        "total": count(sp.total()),
        "min_nonzero": sp.min_nonzero().map(count),
        "second_nonzero": sp.second_nonzero().map(count),
    })
}

pub fn cmd_spectrum(cfg: &RunConfig, limits: &Limits) -> Result<Outcome, CliError> {
    let p = cfg.params()?;
    let mut fields = json!({"q": p.q(), "s": p.s(), "d": p.d()});
    let body = match cfg.samples {
        Some(n) => {
            let sp = Spectrum::from_weights(sample_weights(&p, cfg.seed, n, limits)?);
            let mut v = spectrum_json(&sp);
            v["mode"] = "sampled".into();
            v["seed"] = Value::String(cfg.seed.to_string());
            v["samples"] = count(n);
            v
        }
        None => match exhaustive_spectrum(&p, limits) {
            Ok(sp) => {
                let mut v = spectrum_json(&sp);
                v["mode"] = "exhaustive".into();
                v
            }
            Err(e @ CodeError::SizeCap { .. }) => {
                return Err(CliError::Gate(format!("{e}; pass --samples to sample instead")));
            }
            Err(e) => return Err(e.into()),
        },
    };
    if let (Value::Object(m), Value::Object(extra)) = (&mut fields, body) {
        m.extend(extra);
    }
    Ok(Outcome { report: report(fields), exit_code: 0 })
}

pub fn cmd_verify(cfg: &RunConfig, limits: &Limits) -> Result<Outcome, CliError> {
    let vc = VerifyConfig {
        seed: cfg.seed,
        samples: cfg.samples.unwrap_or(VerifyConfig::default().samples),
        limits: *limits,
        ..VerifyConfig::default()
    };
    let checks = run_all(&vc);
    let passed = checks.iter().all(|c| c.passed());
    let mut fields = json!({
        "seed": Value::String(cfg.seed.to_string()),
        "checks": serde_json::to_value(&checks).expect("plain data"),
        "passed": passed,
    });
    if cfg.experimental {
        let mut rows = Vec::new();
        for q in [5u64, 7] {
            for d in [3u32, 4] {
                for s in [2 * d - 1, 2 * d + 1] {
                    let sh = CodeShape::new(q, s, d);
                    if let Ok(Some(e)) = experimental_next_to_min(sh) {
                        rows.push(json!({"q": q, "s": s, "d": d, "value": count(e.value), "marker": e.marker}));
                    }
                }
            }
        }
        fields["experimental"] = Value::Array(rows);
    }
    Ok(Outcome { report: report(fields), exit_code: if passed { 0 } else { 1 } })
}

fn csv_escape(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Flattens a report to CSV: arrays of objects become tables (one per
/// array key), everything else becomes `key,value` rows.
pub fn to_csv(report: &Value) -> String {
    let mut scalars = String::from("key,value\n");
    let mut tables = String::new();
    let Value::Object(map) = report else { return scalar(report) };
    for (k, v) in map {
        match v {
            Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                let cols: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
                tables.push_str(&format!("\n# {k}\n"));
                tables.push_str(&cols.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(","));
                tables.push('\n');
                for row in rows {
                    let line: Vec<String> = cols.iter().map(|c| csv_escape(&scalar(&row[c.as_str()]))).collect();
                    tables.push_str(&line.join(","));
                    tables.push('\n');
                }
            }
            other => {
                scalars.push_str(&format!("{},{}\n", csv_escape(k), csv_escape(&scalar(other))));
            }
        }
    }
    scalars + &tables
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Csv => to_csv(report),
    }
}

/// Dispatches a parsed command with gates from `HYPERWEIGHT_MAX_CELLS`.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let limits = Limits::from_env();
    match command {
        Command::Params(c) => cmd_params(c, &limits),
        Command::Weight(c) => cmd_weight(c, &limits),
        Command::Classify(c) => cmd_classify(c, &limits),
        Command::Spectrum(c) => cmd_spectrum(c, &limits),
        Command::Verify(c) => cmd_verify(c, &limits),
    }
}

fn config_of(command: &Command) -> &RunConfig {
    match command {
        Command::Params(c) | Command::Weight(c) | Command::Classify(c) | Command::Spectrum(c) | Command::Verify(c) => c,
    }
}

/// Full CLI round: parse `args`, run, print, and return the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let format = config_of(&cli.command).format;
    match execute(&cli.command) {
        Ok(outcome) => {
            print!("{}", render(&outcome.report, format));
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("hyperweight: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(q: u64, s: usize, d: usize) -> RunConfig {
        RunConfig { q: Some(q), s: Some(s), d: Some(d), ..RunConfig::default() }
    }

    #[test]
    fn params_reports() {
        let l = Limits::default();
        let r = cmd_params(&cfg(4, 8, 3), &l).unwrap().report;
        assert_eq!(r["schema"], SCHEMA);
        assert_eq!((r["n"].as_u64(), r["dim"].as_u64()), (Some(6561), Some(56)));
        assert_eq!((r["delta"].as_u64(), r["ntm"].as_u64()), (Some(1944), Some(2160)));
        let r = cmd_params(&cfg(4, 4, 3), &l).unwrap().report;
        assert_eq!((r["n"].as_u64(), r["delta"].as_u64(), r["ntm"].as_u64()), (Some(81), Some(54), Some(60)));
        let r = cmd_params(&cfg(4, 6, 3), &l).unwrap().report;
        assert_eq!(r["ntm"], "unresolved (s = 2d)");
        assert!(r.get("experimental").is_none());
        let mut c = cfg(5, 7, 3);
        c.experimental = true;
        let r = cmd_params(&c, &l).unwrap().report;
        assert_eq!(r["experimental"]["marker"], "unproven");
        let err = cmd_params(&cfg(6, 4, 3), &l).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn large_counts_become_strings() {
        let r = cmd_params(&cfg(65536, 4, 3), &Limits::default()).unwrap().report;
        assert_eq!(r["n"], Value::String((65535u128.pow(4)).to_string()));
        assert!(count(1 << 53).is_u64());
        assert!(count((1 << 53) + 1).is_string());
    }

    #[test]
    fn weight_reports() {
        let l = Limits::default();
        for (q, s, f, w) in [
            (4, 8, "(t1-t3)*(t2-t4)*(t5-t6+t7-t8)", 2160),
            (4, 3, "t1*t2*t3", 27),
            (4, 8, "(t1+t4)*(t2+t5)*(t3+t6)", 1944),
        ] {
            let c = RunConfig { q: Some(q), s: Some(s), f: Some(f.into()), ..RunConfig::default() };
            assert_eq!(cmd_weight(&c, &l).unwrap().report["weight"].as_u64(), Some(w), "{f}");
        }
        let bad = RunConfig { q: Some(4), s: Some(3), f: Some("t1 +".into()), ..RunConfig::default() };
        assert_eq!(cmd_weight(&bad, &l).unwrap_err().exit_code(), 2);
        let c = RunConfig { q: Some(4), s: Some(8), f: Some("t1".into()), ..RunConfig::default() };
        assert_eq!(cmd_weight(&c, &Limits::with_max_cells(100)).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn classify_reports() {
        let l = Limits::default();
        let run = |f: &str| {
            let mut c = cfg(4, 8, 3);
            c.f = Some(f.into());
            cmd_classify(&c, &l).unwrap().report
        };
        let r = run("(t1+t4)*(t2+t5)*(t3+t6)");
        assert_eq!(r["verdict"], "minimum-weight form");
        assert_eq!(r["lower_bound"].as_u64(), Some(1944));
        assert!(r["pivots"].as_array().unwrap().iter().all(|p| p["class"]["tag"] == "Zero"));

        let r = run("(t1-t3)*(t2-t4)*(t5-t6+t7-t8)");
        let tags: Vec<&str> = r["pivots"].as_array().unwrap().iter().map(|p| p["class"]["tag"].as_str().unwrap()).collect();
        assert_eq!(tags, ["Zero", "Zero", "M4"]);
        assert_eq!(r["lower_bound"].as_u64(), Some(2160));
        assert_eq!(r["pivots"][2]["j_original"].as_u64(), Some(5));

        let r = run("t1*t2*t3 + t4*t5*t6");
        assert_eq!(r["pivots"][0]["class"]["tag"], "M2");
        assert_eq!(r["pivots"][0]["class"]["v"].as_u64(), Some(3));
        assert_eq!(r["lower_bound"].as_u64(), Some(2304));

        let r = run("g*t1*t2*t3");
        assert_eq!(r["scaled_to_monic"], true);
        let mut c = cfg(4, 8, 3);
        c.f = Some("t1*t2".into());
        assert_eq!(cmd_classify(&c, &l).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn spectrum_reports() {
        let l = Limits::default();
        let r = cmd_spectrum(&cfg(4, 4, 3), &l).unwrap().report;
        assert_eq!((r["min_nonzero"].as_u64(), r["second_nonzero"].as_u64()), (Some(54), Some(60)));
        assert_eq!(r["total"].as_u64(), Some(256));
        let r = cmd_spectrum(&cfg(5, 4, 3), &l).unwrap().report;
        assert_eq!((r["min_nonzero"].as_u64(), r["second_nonzero"].as_u64()), (Some(192), Some(204)));
        assert_eq!(cmd_spectrum(&cfg(4, 8, 3), &l).unwrap_err().exit_code(), 3);
        let mut c = cfg(4, 8, 3);
        c.samples = Some(200);
        c.seed = 1;
        let r = cmd_spectrum(&c, &l).unwrap().report;
        assert!(r["min_nonzero"].as_u64().unwrap() >= 1944);
        assert_eq!(r["mode"], "sampled");
    }

    #[test]
    fn csv_rendering() {
        let r = cmd_spectrum(&cfg(4, 4, 3), &Limits::default()).unwrap().report;
        let text = render(&r, Format::Csv);
        assert!(text.starts_with("key,value\n"));
        assert!(text.contains("min_nonzero,54\n"));
        assert!(text.contains("# distribution\ncount,weight\n1,0\n"));
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
    }

    #[test]
    fn output_is_deterministic() {
        let l = Limits::default();
        let mut c = cfg(4, 8, 3);
        c.f = Some("t1*t2*t3 + t1*t2*t4 + t2*t3*t4".into());
        let a = render(&cmd_classify(&c, &l).unwrap().report, Format::Json);
        let b = render(&cmd_classify(&c, &l).unwrap().report, Format::Json);
        assert_eq!(a, b);
    }
}
