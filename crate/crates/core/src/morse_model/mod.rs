//! Morse–Smale input data: critical points, flow counts and cup integrals.

mod builtin;
mod io;
mod validate;

use thiserror::Error;

use crate::complex_core::Rational;

pub use builtin::{builtin, BUILTIN_NAMES};
pub use io::{from_toml_str, load, save, to_toml_string, SCHEMA_VERSION};
pub use validate::{validate, ValidatedMorse};

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub id: String,
    pub index: usize,
    pub value: Option<f64>,
}

/// One sparse matrix entry: coefficient of `to` in the image of `from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseEntry {
    pub to: String,
    pub from: String,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorseData {
    pub name: String,
    pub manifold_dim: usize,
    pub ell: usize,
    pub points: Vec<CriticalPoint>,
    pub boundary: Vec<SparseEntry>,
    pub cup: Vec<SparseEntry>,
}

impl MorseData {
    pub fn point(&self, id: &str) -> Option<&CriticalPoint> {
        self.points.iter().find(|p| p.id == id)
    }

    /// Number of critical points of each index `0..=m`.
    pub fn mu(&self) -> Vec<usize> {
        let mut mu = vec![0; self.manifold_dim + 1];
        for p in &self.points {
            if let Some(c) = mu.get_mut(p.index) {
                *c += 1;
            }
        }
        mu
    }
}

/// Which sparse map an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Boundary,
    Cup,
}

impl std::fmt::Display for MapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MapKind::Boundary => "boundary",
            MapKind::Cup => "cup",
        })
    }
}

#[derive(Debug, Error)]
pub enum MorseDataError {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error("duplicate point id '{0}'")]
    DuplicateId(String),
    #[error("unsupported schema_version {found}, expected {expected}")]
    UnsupportedSchema { found: u32, expected: u32 },
    #[error("unknown builtin dataset '{0}'")]
    UnknownBuiltin(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("duplicate point id '{0}'")]
    DuplicateId(String),
    #[error("point '{id}' has index {index} outside [0, {manifold_dim}]")]
    IndexOutOfRange {
        id: String,
        index: usize,
        manifold_dim: usize,
    },
    #[error("{map} entry ({to}, {from}) refers to unknown point '{missing}'")]
    UnknownPoint {
        map: MapKind,
        to: String,
        from: String,
        missing: String,
    },
    #[error("duplicate {map} entry ({to}, {from})")]
    DuplicateEntry { map: MapKind, to: String, from: String },
    #[error(
        "grading violation: {map} entry ({to}, {from}) joins indices {to_index} and {from_index}, expected a gap of {expected}"
    )]
    GradingViolation {
        map: MapKind,
        to: String,
        from: String,
        to_index: usize,
        from_index: usize,
        expected: usize,
    },
    #[error("nilpotency violation: coefficient of '{to}' in the boundary squared of '{from}' is nonzero")]
    NilpotencyViolation { to: String, from: String },
    #[error("anticommutation violation at degree {degree}")]
    AnticommutationViolation { degree: i32 },
}
