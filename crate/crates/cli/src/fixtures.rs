//! Fixture files are documents pinned to disk; each must regenerate
//! byte for byte from the config it records.

use crate::document::{regenerate_in, Document};
use crate::session::Session;
use crate::suite::Check;
use crate::CliError;
use std::path::{Path, PathBuf};

pub fn file_name(doc: &Document) -> String {
    format!("{}-p{}.json", doc.kind, doc.config.p)
}

pub fn pin(doc: &Document, dir: &Path) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(file_name(doc));
    std::fs::write(&path, doc.to_json()?)?;
    Ok(path)
}

/// Sorted `*.json` files of a fixture directory.
pub fn list(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("fixture directory {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

fn read(path: &Path) -> Result<(String, String, Document), CliError> {
    let text = std::fs::read_to_string(path)?;
    let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let doc = Document::from_json(&text).map_err(|e| CliError::Schema(format!("{name}: {e}")))?;
    doc.config.validate()?;
    Ok((text, name, doc))
}

pub fn check_file(path: &Path) -> Result<Check, CliError> {
    let (text, name, doc) = read(path)?;
    compare(&Session::new(doc.config.clone()), text, name, &doc)
}

fn compare(s: &Session, text: String, name: String, doc: &Document) -> Result<Check, CliError> {
    let again = regenerate_in(s, doc)?.to_json()?;
    let first_diff = text.lines().zip(again.lines()).position(|(a, b)| a != b);
    let residual = match (text == again, first_diff) {
        (true, _) => "0".to_string(),
        (false, Some(line)) => format!("differs from line {}", line + 1),
        (false, None) => format!("length {} vs {}", text.len(), again.len()),
    };
    Ok(Check {
        suite: "fixtures".into(),
        name: format!("fixture[{name}]"),
        statement: format!("{name} regenerates from its recorded config"),
        passed: text == again,
        residual,
    })
}

pub fn check_dir(dir: &Path) -> Result<Vec<Check>, CliError> {
    check_dir_with(dir, None)
}

/// Checks every fixture, sharing one session per recorded config; `seed`
/// is reused for fixtures whose config matches it.
pub fn check_dir_with(dir: &Path, seed: Option<&Session>) -> Result<Vec<Check>, CliError> {
    let mut sessions: Vec<Session> = vec![];
    let mut out = vec![];
    for path in list(dir)? {
        let (text, name, doc) = read(&path)?;
        let s = match seed.filter(|s| s.cfg.same_content(&doc.config)) {
            Some(s) => s,
            None => match sessions.iter().position(|s| s.cfg.same_content(&doc.config)) {
                Some(i) => &sessions[i],
                None => {
                    sessions.push(Session::new(doc.config.clone()));
                    sessions.last().expect("just pushed")
                }
            },
        };
        out.push(compare(s, text, name, &doc)?);
    }
    Ok(out)
}
