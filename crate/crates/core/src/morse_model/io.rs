//! TOML dataset format.
//!
//! ```toml
//! schema_version = 1
//! name = "example"
//! manifold_dim = 2
//! ell = 1
//!
//! [[points]]
//! id = "m"
//! index = 0
//! value = -2.0        # optional
//!
//! [[boundary]]         # also [[cup]]
//! to = "s"
//! from = "m"
//! coeff = "-3/2"
//! ```

use std::collections::HashSet;
use std::path::Path;
use std::str::FromStr;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use super::{CriticalPoint, MorseData, MorseDataError, SparseEntry};
use crate::complex_core::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetFile {
    schema_version: u32,
    name: String,
    manifold_dim: usize,
    ell: usize,
    #[serde(default)]
    points: Vec<PointRecord>,
    #[serde(default)]
    boundary: Vec<EntryRecord>,
    #[serde(default)]
    cup: Vec<EntryRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    id: String,
    index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRecord {
    to: String,
    from: String,
    coeff: String,
}

/// Parses `"a/b"` or `"a"` into lowest terms.
pub(crate) fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("invalid rational '{text}'"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("invalid rational '{text}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn entries(records: Vec<EntryRecord>, table: &str) -> Result<Vec<SparseEntry>, MorseDataError> {
    records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let coeff = parse_rational(&r.coeff).map_err(|message| MorseDataError::Field {
                field: format!("{table}[{i}].coeff"),
                message,
            })?;
            Ok(SparseEntry {
                to: r.to,
                from: r.from,
                coeff,
            })
        })
        .collect()
}

pub fn from_toml_str(text: &str) -> Result<MorseData, MorseDataError> {
    let file: DatasetFile =
        toml::from_str(text).map_err(|e| MorseDataError::Parse(e.to_string()))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(MorseDataError::UnsupportedSchema {
            found: file.schema_version,
            expected: SCHEMA_VERSION,
        });
    }
    let mut seen = HashSet::new();
    for p in &file.points {
        if !seen.insert(p.id.as_str()) {
            return Err(MorseDataError::DuplicateId(p.id.clone()));
        }
    }
    Ok(MorseData {
        name: file.name,
        manifold_dim: file.manifold_dim,
        ell: file.ell,
        points: file
            .points
            .into_iter()
            .map(|p| CriticalPoint {
                id: p.id,
                index: p.index,
                value: p.value,
            })
            .collect(),
        boundary: entries(file.boundary, "boundary")?,
        cup: entries(file.cup, "cup")?,
    })
}

pub fn to_toml_string(data: &MorseData) -> String {
    let record = |e: &SparseEntry| EntryRecord {
        to: e.to.clone(),
        from: e.from.clone(),
        coeff: format_rational(&e.coeff),
    };
    let file = DatasetFile {
        schema_version: SCHEMA_VERSION,
        name: data.name.clone(),
        manifold_dim: data.manifold_dim,
        ell: data.ell,
        points: data
            .points
            .iter()
            .map(|p| PointRecord {
                id: p.id.clone(),
                index: p.index,
                value: p.value,
            })
            .collect(),
        boundary: data.boundary.iter().map(record).collect(),
        cup: data.cup.iter().map(record).collect(),
    };
    toml::to_string(&file).expect("dataset records always serialize")
}

/// Reads a dataset without validating it.
pub fn load(path: impl AsRef<Path>) -> Result<MorseData, MorseDataError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| MorseDataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_toml_str(&text)
}

pub fn save(data: &MorseData, path: impl AsRef<Path>) -> Result<(), MorseDataError> {
    let path = path.as_ref();
    std::fs::write(path, to_toml_string(data)).map_err(|source| MorseDataError::Io {
        path: path.display().to_string(),
        source,
    })
}
