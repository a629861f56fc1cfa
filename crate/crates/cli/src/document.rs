//! Versioned output documents and the computations that produce them.

use crate::config::RunConfig;
use crate::session::Session;
use crate::suite::{run_suite, Check, SUITES};
use crate::CliError;
use bockstein_engine::{cross_check, homotopy_from_modules, n_t_closed_form, FpV1Module};
use ehh2_core::ring::to_text;
use module_analysis::{bc_shift_obstruction, essentially_finite_rank, from_fpv1};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub kind: String,
    pub config: RunConfig,
    pub params: BTreeMap<String, Value>,
    pub data: Value,
}

impl Document {
    fn new(kind: &str, cfg: &RunConfig, params: BTreeMap<String, Value>, data: Value) -> Self {
        Document { schema_version: SCHEMA_VERSION, kind: kind.into(), config: cfg.clone(), params, data }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Document, CliError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Schema(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    fn param_i64(&self, key: &str) -> Result<i64, CliError> {
        self.params
            .get(key)
            .and_then(Value::as_i64)
            .ok_or_else(|| CliError::Schema(format!("params.{key} is missing or not an integer")))
    }

    fn param_str(&self, key: &str) -> Result<&str, CliError> {
        self.params
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Schema(format!("params.{key} is missing or not a string")))
    }

    /// Whether every verification recorded in the document passed.
    pub fn passed(&self) -> bool {
        self.data.get("passed").and_then(Value::as_bool).unwrap_or(true)
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn verify(s: &Session, suites: &[String]) -> Result<Document, CliError> {
    let names: Vec<String> = if suites.is_empty() { SUITES.iter().map(|x| x.to_string()).collect() } else { suites.to_vec() };
    let mut checks: Vec<Check> = vec![];
    for name in &names {
        checks.extend(run_suite(s, name)?);
    }
    if let Some(dir) = &s.cfg.fixtures {
        checks.extend(crate::fixtures::check_dir_with(dir, Some(s))?);
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Ok(Document::new(
        "verify",
        &s.cfg,
        params(&[("suites", json!(names))]),
        json!({ "checks": checks, "passed": passed, "failed": failed }),
    ))
}

pub fn fgl_dump(s: &Session) -> Result<Document, CliError> {
    let law = s.law()?;
    let coefficients: Vec<Value> = law
        .coefficients()
        .iter()
        .map(|(i, j, c)| json!({ "i": i, "j": j, "coefficient": to_text(law.ctx(), c) }))
        .collect();
    Ok(Document::new(
        "fgl",
        &s.cfg,
        BTreeMap::new(),
        json!({ "p": law.p(), "cap": law.cap(), "generators": law.generators(), "coefficients": coefficients }),
    ))
}

pub fn cobar_cohomology(s: &Session) -> Result<Document, CliError> {
    let raw = s.raw_table()?;
    let inv = s.e1()?;
    let dims = |t: &hopf_cobar::CohomologyTable| -> Vec<Value> {
        t.entries
            .iter()
            .filter(|e| e.dimension > 0)
            .map(|e| json!({ "s": e.bidegree.0, "t": e.bidegree.1, "dimension": e.dimension }))
            .collect()
    };
    Ok(Document::new(
        "cobar",
        &s.cfg,
        BTreeMap::new(),
        json!({ "raw": { "field": raw.field, "nonzero": dims(raw) }, "invariant": inv, "searches": raw.searches }),
    ))
}

fn module_map(m: &BTreeMap<usize, FpV1Module>) -> Value {
    let named: BTreeMap<String, &FpV1Module> = m.iter().map(|(k, v)| (format!("H{k}"), v)).collect();
    json!(named)
}

pub fn bockstein_run(s: &Session) -> Result<Document, CliError> {
    let run = s.run()?;
    let cc = cross_check(run)?;
    Ok(Document::new(
        "bockstein",
        &s.cfg,
        BTreeMap::new(),
        json!({
            "differentials": run.differentials,
            "modules": module_map(&run.modules),
            "unresolved": run.unresolved,
            "cross_check": cc,
            "passed": cc.passed,
        }),
    ))
}

pub fn nt_value(cfg: &RunConfig, t: i64) -> Result<Document, CliError> {
    let n = n_t_closed_form(t, cfg.p)?;
    Ok(Document::new("nt", cfg, params(&[("t", json!(t))]), json!(n)))
}

pub fn analyze_efr(s: &Session) -> Result<Document, CliError> {
    let run = s.run()?;
    let mut out = BTreeMap::new();
    for (k, m) in &run.modules {
        out.insert(format!("H{k}"), essentially_finite_rank(&from_fpv1(m, s.p())?)?);
    }
    Ok(Document::new("efr", &s.cfg, BTreeMap::new(), json!(out)))
}

pub fn analyze_bc(s: &Session, cmin: i64, cmax: i64, kmax: u32) -> Result<Document, CliError> {
    let run = s.run()?;
    let rep = bc_shift_obstruction(&run.modules[&2], run.t_min..=run.t_max, s.p(), cmin..=cmax, 1..=kmax)
        .map_err(|e| match e {
            module_analysis::ModuleError::InsufficientWindow { .. } => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        })?;
    Ok(Document::new(
        "bc-shift",
        &s.cfg,
        params(&[("cmin", json!(cmin)), ("cmax", json!(cmax)), ("kmax", json!(kmax))]),
        json!(rep),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    HStar,
    Homotopy,
    NtTable,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::HStar => "h-star",
            Target::Homotopy => "homotopy",
            Target::NtTable => "nt-table",
        }
    }
}

pub fn compute(s: &Session, target: Target, dmin: i64, dmax: i64) -> Result<Document, CliError> {
    let cfg = &s.cfg;
    match target {
        Target::NtTable => {
            let mut rows = vec![];
            for t in cfg.tmin..=cfg.tmax {
                rows.push(json!({ "t": t, "n_t": n_t_closed_form(t, cfg.p)? }));
            }
            Ok(Document::new("nt-table", cfg, params(&[("target", json!("nt-table"))]), json!(rows)))
        }
        Target::HStar => {
            let run = s.run()?;
            Ok(Document::new(
                "h-star",
                cfg,
                params(&[("target", json!("h-star"))]),
                json!({ "modules": module_map(&run.modules), "unresolved": run.unresolved }),
            ))
        }
        Target::Homotopy => {
            let chart = if dmin > dmax {
                bockstein_engine::HomotopyChart {
                    p: cfg.p,
                    degree_min: dmin,
                    degree_max: dmax,
                    t_min: cfg.tmin,
                    t_max: cfg.tmax,
                    degrees: BTreeMap::new(),
                }
            } else {
                homotopy_from_modules(cfg.p, &s.run()?.modules, dmin, dmax)
            };
            Ok(Document::new(
                "homotopy",
                cfg,
                params(&[("target", json!("homotopy")), ("dmin", json!(dmin)), ("dmax", json!(dmax))]),
                json!(chart),
            ))
        }
    }
}

/// Recomputes a document from its recorded config and parameters.
pub fn regenerate(doc: &Document) -> Result<Document, CliError> {
    doc.config.validate()?;
    regenerate_in(&Session::new(doc.config.clone()), doc)
}

/// As `regenerate`, reusing a session built for the document's config.
pub fn regenerate_in(s: &Session, doc: &Document) -> Result<Document, CliError> {
    if !s.cfg.same_content(&doc.config) {
        return Err(CliError::Internal("session config differs from the document's".into()));
    }
    match doc.kind.as_str() {
        "verify" => {
            let suites: Vec<String> = serde_json::from_value(doc.params.get("suites").cloned().unwrap_or(json!([])))
                .map_err(|e| CliError::Schema(format!("params.suites: {e}")))?;
            verify(s, &suites)
        }
        "fgl" => fgl_dump(s),
        "cobar" => cobar_cohomology(s),
        "bockstein" => bockstein_run(s),
        "nt" => nt_value(&s.cfg, doc.param_i64("t")?),
        "efr" => analyze_efr(s),
        "bc-shift" => analyze_bc(s, doc.param_i64("cmin")?, doc.param_i64("cmax")?, doc.param_i64("kmax")? as u32),
        "nt-table" | "h-star" | "homotopy" => {
            let target = match doc.param_str("target")? {
                "nt-table" => Target::NtTable,
                "h-star" => Target::HStar,
                "homotopy" => Target::Homotopy,
                other => return Err(CliError::Schema(format!("params.target: unknown target {other}"))),
            };
            let (dmin, dmax) = match target {
                Target::Homotopy => (doc.param_i64("dmin")?, doc.param_i64("dmax")?),
                _ => (0, 0),
            };
            compute(s, target, dmin, dmax)
        }
        other => Err(CliError::Schema(format!("kind: unknown document kind {other}"))),
    }
}
