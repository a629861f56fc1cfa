//! Plain-text rendering of documents.

use crate::document::Document;
use crate::suite::Check;
use crate::CliError;
use bockstein_engine::{DifferentialRecord, FpV1Module, HomotopyChart, Unresolved};
use module_analysis::{BcReport, FiniteRank};
use serde::de::DeserializeOwned;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write;

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, CliError> {
    let x = if key.is_empty() { v.clone() } else { v.get(key).cloned().unwrap_or(Value::Null) };
    serde_json::from_value(x).map_err(|e| CliError::Schema(format!("data.{key}: {e}")))
}

fn modules_text(out: &mut String, modules: &BTreeMap<String, FpV1Module>) {
    for (name, m) in modules {
        let _ = writeln!(out, "{name}: {} free, {} torsion", m.free.len(), m.torsion.len());
        for g in &m.free {
            let _ = writeln!(out, "  free {} in ({}, {})", g.name, g.s, g.internal_degree);
        }
        for g in &m.torsion {
            let _ = writeln!(out, "  {} in ({}, {}) killed by v1^{}", g.name, g.s, g.internal_degree, g.exponent);
        }
    }
}

pub fn render(doc: &Document) -> Result<String, CliError> {
    let mut out = String::new();
    let d = &doc.data;
    let c = &doc.config;
    let _ = writeln!(
        out,
        "# {} p={} N={} D={} t=[{}, {}] smax={} kmax={}",
        doc.kind, c.p, c.trunc, c.degree_cap, c.tmin, c.tmax, c.smax, c.kmax
    );
    match doc.kind.as_str() {
        "verify" => {
            let checks: Vec<Check> = field(d, "checks")?;
            for ch in &checks {
                let mark = if ch.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{mark} {}/{}: {} [residual {}]", ch.suite, ch.name, ch.statement, ch.residual);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
        }
        "fgl" => {
            let _ = writeln!(out, "cap {}", d["cap"]);
            for e in d["coefficients"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "a({},{}) = {}", e["i"], e["j"], e["coefficient"].as_str().unwrap_or(""));
            }
        }
        "cobar" => {
            for e in d["invariant"]["entries"].as_array().into_iter().flatten() {
                let dim = e["dimension"].as_u64().unwrap_or(0);
                if dim > 0 {
                    let reps: Vec<&str> =
                        e["representatives"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                    let _ = writeln!(out, "H^({},{}) dim {}: {}", e["bidegree"][0], e["bidegree"][1], dim, reps.join(", "));
                }
            }
        }
        "bockstein" => {
            let diffs: Vec<DifferentialRecord> = field(d, "differentials")?;
            for r in &diffs {
                let _ = writeln!(
                    out,
                    "d_{}(v2^{}) = {} v1^{} v2^{} (g^p - g)",
                    r.page, r.source_exponent, r.unit, r.page, r.target_exponent
                );
            }
            modules_text(&mut out, &field(d, "modules")?);
            let un: Vec<Unresolved> = field(d, "unresolved")?;
            for u in &un {
                let _ = writeln!(out, "unresolved s={} t={}: {}", u.s, u.t, u.reason);
            }
            let _ = writeln!(out, "cross-check {}", if doc.passed() { "passed" } else { "failed" });
        }
        "nt" => {
            out.clear();
            let _ = writeln!(out, "{}", d);
        }
        "efr" => {
            let m: BTreeMap<String, FiniteRank> = field(d, "")?;
            for (k, r) in &m {
                let rank = r.rank.map_or("infinite".to_string(), |x| x.to_string());
                let _ = writeln!(out, "{k}: essentially finite rank {} (rank {rank})", r.finite);
            }
        }
        "bc-shift" => {
            let rep: BcReport = field(d, "")?;
            let _ = writeln!(out, "{}", rep.normalization);
            for e in &rep.entries {
                let fail = e.failing_k.map_or("none in range".to_string(), |k| k.to_string());
                let _ = writeln!(out, "c = {}: first failing k = {fail}; satisfied at k = {:?}", e.c, e.satisfied_k);
            }
        }
        "nt-table" => {
            for e in d.as_array().into_iter().flatten() {
                let _ = writeln!(out, "{} {}", e["t"], e["n_t"]);
            }
        }
        "h-star" => modules_text(&mut out, &field(d, "modules")?),
        "homotopy" => {
            let chart: HomotopyChart = field(d, "")?;
            for (deg, cs) in &chart.degrees {
                let parts: Vec<String> = cs
                    .iter()
                    .map(|c| match c.lifetime {
                        Some(n) => format!("v1^{} {} (n={n})", c.j, c.source),
                        None => format!("v1^{} {}", c.j, c.source),
                    })
                    .collect();
                let _ = writeln!(out, "pi_{deg}: {}", if parts.is_empty() { "0".into() } else { parts.join(", ") });
            }
        }
        other => return Err(CliError::Schema(format!("kind: no text rendering for {other}"))),
    }
    Ok(out)
}
