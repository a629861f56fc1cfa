//! SVG charts: topological degree across, v1-filtration up. Each generator
//! is a tower of dots joined by v1-multiplication; torsion towers carry
//! their length as a `data-nt` attribute, free towers end in an arrow.

use crate::document::Document;
use crate::CliError;
use bockstein_engine::{FpV1Module, HomotopyChart};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt::Write;

/// dots drawn for a free generator
const FREE_DOTS: i64 = 8;
const SX: i64 = 6;
const SY: i64 = 6;
const MARGIN: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub label: String,
    pub s: usize,
    pub t: i64,
    /// None for a free generator
    pub nt: Option<i64>,
    /// (topological degree, v1-power)
    pub dots: Vec<(i64, i64)>,
}

#[derive(Deserialize)]
struct HStar {
    modules: BTreeMap<String, FpV1Module>,
}

fn schema(e: serde_json::Error) -> CliError {
    CliError::Schema(format!("data: {e}"))
}

/// Towers and the degree range a document covers.
pub fn towers(doc: &Document) -> Result<(Vec<Tower>, i64, i64), CliError> {
    let step = 2 * (doc.config.p as i64 - 1);
    match doc.kind.as_str() {
        "homotopy" => {
            let chart: HomotopyChart = serde_json::from_value(doc.data.clone()).map_err(schema)?;
            let mut by: BTreeMap<(usize, i64, String), Tower> = BTreeMap::new();
            for (deg, cs) in &chart.degrees {
                for c in cs {
                    let t = by.entry((c.s, c.t, c.source.clone())).or_insert_with(|| Tower {
                        label: c.source.clone(),
                        s: c.s,
                        t: c.t,
                        nt: c.lifetime,
                        dots: vec![],
                    });
                    t.dots.push((*deg, c.j));
                }
            }
            Ok((by.into_values().collect(), chart.degree_min, chart.degree_max))
        }
        "h-star" => {
            let h: HStar = serde_json::from_value(doc.data.clone()).map_err(schema)?;
            let mut out = vec![];
            for m in h.modules.values() {
                for g in &m.free {
                    let base = g.internal_degree - g.s as i64;
                    let dots = (0..FREE_DOTS).map(|j| (base + j * step, j)).collect();
                    out.push(Tower { label: g.name.clone(), s: g.s, t: g.t, nt: None, dots });
                }
                for g in &m.torsion {
                    let base = g.internal_degree - g.s as i64;
                    let dots = (0..g.exponent).map(|j| (base + j * step, j)).collect();
                    out.push(Tower { label: g.name.clone(), s: g.s, t: g.t, nt: Some(g.exponent), dots });
                }
            }
            let lo = out.iter().flat_map(|t| t.dots.iter().map(|d| d.0)).min().unwrap_or(0);
            let hi = out.iter().flat_map(|t| t.dots.iter().map(|d| d.0)).max().unwrap_or(0);
            Ok((out, lo, hi))
        }
        other => Err(CliError::Schema(format!("kind: charts need a homotopy or h-star document, got {other}"))),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn svg(doc: &Document) -> Result<String, CliError> {
    let (towers, mut lo, mut hi) = towers(doc)?;
    if lo > hi {
        (lo, hi) = (0, 0);
    }
    let top = towers.iter().flat_map(|t| t.dots.iter().map(|d| d.1)).max().unwrap_or(0) + 2;
    let width = (hi - lo + 2) * SX + 2 * MARGIN;
    let height = top * SY + 2 * MARGIN;
    let x = |d: i64| MARGIN + (d - lo + 1) * SX;
    let y = |j: i64| height - MARGIN - j * SY;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" data-kind="{}" data-p="{}">"#,
        doc.kind, doc.config.p
    );
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let (x0, y0) = (MARGIN, height - MARGIN);
    let _ = writeln!(out, r#"<g class="axes" stroke="black">"#);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}"/>"#, width - MARGIN);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}"/>"#);
    let _ = writeln!(out, "</g>");
    let tick = ((hi - lo) / 10).max(1);
    let _ = writeln!(out, r#"<g class="ticks" font-size="8" text-anchor="middle">"#);
    let mut d = lo;
    while d <= hi {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{d}</text>"#, x(d), y0 + 12);
        d += tick;
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">degree</text>"#, width / 2, height - 8);
    let _ = writeln!(out, r#"<text x="10" y="{}" font-size="10">v1</text>"#, MARGIN);
    for t in &towers {
        let nt = t.nt.map_or("free".to_string(), |n| n.to_string());
        let _ = writeln!(
            out,
            r#"<g class="tower" data-label="{}" data-s="{}" data-t="{}" data-nt="{nt}">"#,
            escape(&t.label),
            t.s,
            t.t
        );
        for w in t.dots.windows(2) {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
                x(w[0].0),
                y(w[0].1),
                x(w[1].0),
                y(w[1].1)
            );
        }
        for &(deg, j) in &t.dots {
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="2" data-degree="{deg}" data-j="{j}"/>"#, x(deg), y(j));
        }
        if let (None, Some(&(deg, j))) = (t.nt, t.dots.last()) {
            let _ = writeln!(
                out,
                r#"<line class="free-arrow" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
                x(deg),
                y(j),
                x(deg) + SX,
                y(j) - SY
            );
        }
        if let Some(&(deg, j)) = t.dots.first() {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="6">{}</text>"#,
                x(deg) + 3,
                y(j) + 8,
                escape(&t.label)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
