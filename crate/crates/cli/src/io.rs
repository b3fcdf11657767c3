//! File loading with schema validation and output emission.

use std::fmt;
use std::path::{Path, PathBuf};

use extbranch_core::{LineRegistry, Rat};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Schema(String),
    Domain(extbranch_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, err) => write!(f, "{}: {err}", path.display()),
            CliError::Schema(msg) => write!(f, "schema error: {msg}"),
            CliError::Domain(err) => write!(f, "{err}"),
        }
    }
}

impl From<extbranch_core::Error> for CliError {
    fn from(err: extbranch_core::Error) -> Self {
        CliError::Domain(err)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Loads a JSON value, validating the optional top-level `schema` field.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    if let Some(schema) = value.get("schema") {
        if schema.as_u64() != Some(SCHEMA_VERSION) {
            return Err(CliError::Schema(format!(
                "{}: unsupported schema {schema}, expected {SCHEMA_VERSION}",
                path.display()
            )));
        }
    }
    serde_json::from_value(value).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct LinesFile {
    lines: Vec<extbranch_core::LineDecl>,
}

/// Builds the line registry from an optional declarations file.
pub fn load_registry(path: Option<&Path>) -> CliResult<LineRegistry> {
    let mut reg = LineRegistry::new();
    if let Some(path) = path {
        let decls: LinesFile = load_json(path)?;
        for decl in decls.lines {
            reg.declare(decl.id, decl.degree, decl.dual)?;
        }
    }
    Ok(reg)
}

/// Parses "lo..hi" into a rational window.
pub fn parse_window(text: &str) -> CliResult<(Rat, Rat)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| CliError::Schema(format!("window '{text}' is not of the form lo..hi")))?;
    let lo = extbranch_core::rat::parse_rat(lo)
        .ok_or_else(|| CliError::Schema(format!("bad rational '{lo}'")))?;
    let hi = extbranch_core::rat::parse_rat(hi)
        .ok_or_else(|| CliError::Schema(format!("bad rational '{hi}'")))?;
    Ok((lo, hi))
}

/// Parses a comma-separated rational tuple.
pub fn parse_rat_list(text: &str) -> CliResult<Vec<Rat>> {
    text.split(',')
        .map(|part| {
            extbranch_core::rat::parse_rat(part)
                .ok_or_else(|| CliError::Schema(format!("bad rational '{part}'")))
        })
        .collect()
}

/// Parses a comma-separated integer tuple.
pub fn parse_int_list(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Schema(format!("bad integer '{part}'")))
        })
        .collect()
}

/// Wraps a payload with the schema version and prints it.
pub fn emit(payload: Value, text_summary: &str, as_text: bool) {
    if as_text {
        println!("{text_summary}");
        return;
    }
    let mut wrapped = serde_json::Map::new();
    wrapped.insert("schema".into(), Value::from(SCHEMA_VERSION));
    match payload {
        Value::Object(map) => {
            for (k, v) in map {
                wrapped.insert(k, v);
            }
        }
        other => {
            wrapped.insert("result".into(), other);
        }
    }
    println!("{}", serde_json::to_string_pretty(&Value::Object(wrapped)).expect("serializable"));
}

pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}
