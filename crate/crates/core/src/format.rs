//! JSON file formats for configurations and matrices.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "weight": [1, 1],
//!   "arity": 2,
//!   "dim": 1,
//!   "points": {"a": ["1", "0"], "b": ["1", "1/2"]},
//!   "colors": [[["a", "b"]], [["b", "a"]]]
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::configuration::{build_configuration, Configuration, ProjPoint};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Matrix};
use crate::wps::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub field: String,
    pub weight: Vec<u32>,
    pub arity: usize,
    pub dim: usize,
    pub points: BTreeMap<String, Vec<String>>,
    pub colors: Vec<Vec<Vec<String>>>,
}

fn format_err(source: &str, message: impl Into<String>) -> Error {
    Error::Format {
        path: source.to_string(),
        message: message.into(),
    }
}

fn json_err(source: &str, e: &serde_json::Error) -> Error {
    format_err(
        source,
        format!("line {} column {}: {e}", e.line(), e.column()),
    )
}

impl ConfigFile {
    pub fn from_configuration(cfg: &Configuration) -> Self {
        Self {
            field: "rational".into(),
            weight: cfg.weight().parts().to_vec(),
            arity: cfg.arity(),
            dim: cfg.dim(),
            points: cfg
                .points()
                .iter()
                .map(|(n, p)| {
                    (
                        n.clone(),
                        p.coords.iter().map(ToString::to_string).collect(),
                    )
                })
                .collect(),
            colors: cfg.color_names(),
        }
    }

    /// Validates into a configuration; `source` names the file in errors.
    pub fn into_configuration(self, source: &str) -> Result<Configuration> {
        if self.field != "rational" {
            return Err(format_err(
                source,
                format!("field: expected \"rational\", found \"{}\"", self.field),
            ));
        }
        let weight =
            Weight::real(&self.weight).map_err(|e| format_err(source, format!("weight: {e}")))?;
        let mut points = Vec::with_capacity(self.points.len());
        for (name, coords) in self.points {
            let parsed = coords
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    parse_rational(s)
                        .map_err(|e| format_err(source, format!("points.{name}[{k}]: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            points.push(ProjPoint::new(name, parsed));
        }
        build_configuration(weight, self.arity, self.dim, self.colors, points)
            .map_err(|e| format_err(source, e.to_string()))
    }
}

pub fn parse_config(text: &str, source: &str) -> Result<Configuration> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| json_err(source, &e))?;
    file.into_configuration(source)
}

/// Pretty-printed JSON with a trailing newline.
pub fn config_to_json(cfg: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(&ConfigFile::from_configuration(cfg))
        .expect("configuration file serializes");
    s.push('\n');
    s
}

/// A JSON array of rows of rational strings.
pub fn parse_matrix(text: &str, source: &str) -> Result<Matrix> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| json_err(source, &e))?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(format_err(source, "matrix is empty"));
    }
    let width = rows[0].len();
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != width {
                return Err(format_err(
                    source,
                    format!("row {i}: expected {width} entries, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_rational(s).map_err(|e| format_err(source, format!("[{i}][{j}]: {e}")))
                })
                .collect()
        })
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let mut s = serde_json::to_string(&rows).expect("matrix serializes");
    s.push('\n');
    s
}
