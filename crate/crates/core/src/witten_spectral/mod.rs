//! Witten-type deformation of the discrete mapping cone and its spectral
//! analysis on periodic grids.

mod block;
mod cone;
pub mod dd;
pub mod eigen;
mod field;
mod instanton;
mod laplacian;
mod model;
mod params;
mod scan;
mod spectrum;

use thiserror::Error;

use crate::dec_grid::DecError;

pub use block::{BlockCochain, BlockSpace};
pub use cone::{cone_operator, cone_operator_with, ConeOperator, ConeOptions};
pub use eigen::{sym_eigen, SymEigen, SymMatrix};
pub use field::{CosineField, MorseChart};
pub use instanton::{
    instanton_complex, singular_values, InstantonComplex, InstantonDegree, LEAKAGE_LIMIT,
    RANK_CUTOFF,
};
pub use laplacian::{dirac_laplacian, DiracLaplacian};
pub use model::{a_omega, gaussian_model_cochain, Summand, DEFAULT_BUMP_RADIUS, MAX_BUMP_RADIUS};
pub use params::{
    default_c0, scaling_map, DeformParams, ScalingMap, ScalingMode, LINEAR_EXPONENT_CAP,
};
pub use scan::{
    cone_spectra, run_scan, zero_counts, DefectReport, DegreeReport, ScanConfig, ScanPoint, SCAN_SCHEMA_VERSION,
};
pub use spectrum::{
    cluster_split, spectrum, ClusterSplit, SpectralResult, DEFAULT_THRESHOLD, GAP_FLOOR,
    ZERO_CUTOFF,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(
        "eigensolver did not converge at index {index} after {iterations} iterations \
         (dim {dim}, frobenius {frobenius:e}, diagonal in [{diag_min:e}, {diag_max:e}])"
    )]
    NoConvergence {
        index: usize,
        iterations: usize,
        dim: usize,
        frobenius: f64,
        diag_min: f64,
        diag_max: f64,
    },
    #[error(transparent)]
    Dec(#[from] DecError),
    #[error("T·max|f| = {t}·{max_abs_f} exceeds the linear-mode cap; use log-domain scaling")]
    Overflow { t: f64, max_abs_f: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ε too large: bump radius {radius} must be at most 0.25")]
    EpsilonTooLarge { radius: f64 },
    #[error("critical points are not grid vertices for odd n = {n}")]
    NotGridAligned { n: usize },
    #[error("cluster leakage in degree {degree}: {leakage:e} off the low cluster (T too small or grid too coarse)")]
    ClusterLeakage { degree: i32, leakage: f64 },
}
