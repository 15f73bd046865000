use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cone::{cone_operator, ConeOperator};
use super::field::CosineField;
use super::instanton::{instanton_complex, InstantonComplex};
use super::laplacian::dirac_laplacian;
use super::model::{gaussian_model_cochain, Summand, DEFAULT_BUMP_RADIUS};
use super::params::{default_c0, DeformParams};
use super::spectrum::{spectrum, SpectralResult, DEFAULT_THRESHOLD};
use super::SpectralError;
use crate::dec_grid::{sample_form, Cochain, ConstantForm, PeriodicGrid};

pub const SCAN_SCHEMA_VERSION: u32 = 1;

/// A `T` scan on the schedule `S = e^{c0 T}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub n: usize,
    pub amplitudes: Vec<f64>,
    pub omega: ConstantForm,
    pub ts: Vec<f64>,
    /// Defaults to `1 + 2 max|f|` over the grid.
    pub c0: Option<f64>,
    pub threshold: f64,
    pub bump_radius: f64,
    pub parallel: bool,
}

impl ScanConfig {
    /// `cos 2πx + cos 2πy` with `ω = c·dx` on the `n × n` torus.
    pub fn torus(n: usize, dx_coeff: f64, ts: Vec<f64>) -> Self {
        Self {
            n,
            amplitudes: vec![1.0, 1.0],
            omega: ConstantForm::axis(2, 0, dx_coeff),
            ts,
            c0: None,
            threshold: DEFAULT_THRESHOLD,
            bump_radius: DEFAULT_BUMP_RADIUS,
            parallel: true,
        }
    }

    pub fn grid(&self) -> Result<PeriodicGrid, SpectralError> {
        Ok(PeriodicGrid::new(self.amplitudes.len(), self.n)?)
    }

    pub fn field(&self) -> CosineField {
        CosineField::new(self.amplitudes.clone())
    }

    pub fn c0(&self, f: &Cochain) -> f64 {
        self.c0.unwrap_or_else(|| default_c0(f.max_abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport {
    pub degree: i32,
    pub dim: usize,
    pub low_count: usize,
    pub gap_ratio: f64,
    pub gap_low_count: usize,
    pub modes_agree: bool,
    pub zero_count: usize,
    pub min_eigenvalue: f64,
    pub largest_low: Option<f64>,
    pub smallest_high: Option<f64>,
    pub max_relative_residual: f64,
    pub symmetry_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectReport {
    pub label: String,
    pub index: usize,
    pub summand: Summand,
    pub degree: i32,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub t: f64,
    pub log_s: f64,
    pub degrees: Vec<DegreeReport>,
    /// `Err` carries the diagnostic, e.g. cluster leakage at small `T`.
    pub instanton: Result<InstantonComplex, String>,
    pub defects: Vec<DefectReport>,
}

impl ScanPoint {
    pub fn low_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.low_count).collect()
    }

    pub fn zero_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.zero_count).collect()
    }

    /// Smallest gap ratio over degrees with a nonempty low cluster.
    pub fn min_gap_ratio(&self) -> f64 {
        self.degrees
            .iter()
            .filter(|d| d.low_count > 0)
            .map(|d| d.gap_ratio)
            .fold(f64::INFINITY, f64::min)
    }
}

fn degree_report(lap_sym: f64, s: &SpectralResult) -> DegreeReport {
    DegreeReport {
        degree: s.degree,
        dim: s.dim(),
        low_count: s.low_count(),
        gap_ratio: s.gap_ratio(),
        gap_low_count: s.split.gap_low_count,
        modes_agree: s.split.modes_agree,
        zero_count: s.zero_count(),
        min_eigenvalue: s.raw_eigenvalues.first().copied().unwrap_or(0.0),
        largest_low: s.largest_low(),
        smallest_high: s.smallest_high(),
        max_relative_residual: s.max_relative_residual(),
        symmetry_defect: lap_sym,
    }
}

/// Laplacian spectra in every cone degree, lowest first.
pub fn cone_spectra(
    cone: &ConeOperator,
    threshold: f64,
) -> Result<Vec<(f64, SpectralResult)>, SpectralError> {
    cone.degrees()
        .map(|q| {
            let lap = dirac_laplacian(cone, q);
            Ok((lap.symmetry_defect(), spectrum(&lap, threshold)?))
        })
        .collect()
}

/// Zero-eigenvalue counts of `𝔻²_ST` per cone degree.
pub fn zero_counts(
    grid: &PeriodicGrid,
    f: &Cochain,
    omega: &Cochain,
    params: &DeformParams,
) -> Result<Vec<usize>, SpectralError> {
    let cone = cone_operator(grid, f, omega, params)?;
    Ok(cone_spectra(&cone, DEFAULT_THRESHOLD)?
        .iter()
        .map(|(_, s)| s.zero_count())
        .collect())
}

fn scan_point(cfg: &ScanConfig, t: f64) -> Result<ScanPoint, SpectralError> {
    let grid = cfg.grid()?;
    let field = cfg.field();
    let f = field.sample(&grid);
    let omega = sample_form(&grid, &cfg.omega)?;
    let params = DeformParams::schedule(t, cfg.c0(&f))?;
    let cone = cone_operator(&grid, &f, &omega, &params)?;
    let spectra = cone_spectra(&cone, cfg.threshold)?;
    let degrees = spectra.iter().map(|(sym, s)| degree_report(*sym, s)).collect();
    let results: Vec<SpectralResult> = spectra.into_iter().map(|(_, s)| s).collect();
    let instanton = match instanton_complex(&cone, &results) {
        Ok(c) => Ok(c),
        Err(e @ SpectralError::ClusterLeakage { .. }) => Err(e.to_string()),
        Err(e) => return Err(e),
    };
    let ell = cfg.omega.degree;
    let mut defects = Vec::new();
    for chart in field.critical_points()? {
        for summand in [Summand::First, Summand::Second] {
            let xi = gaussian_model_cochain(&grid, &chart, ell, t, summand, cfg.bump_radius)?;
            let Some(s) = results.iter().find(|s| s.degree == xi.degree) else {
                continue;
            };
            defects.push(DefectReport {
                label: chart.label.clone(),
                index: chart.index,
                summand,
                degree: xi.degree,
                defect: s.projection_defect(&xi.values),
            });
        }
    }
    Ok(ScanPoint {
        t,
        log_s: params.log_s,
        degrees,
        instanton,
        defects,
    })
}

/// One point per `T`, in input order. Points are independent, so the
/// parallel and serial paths give identical results.
pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<ScanPoint>, SpectralError> {
    if cfg.ts.is_empty() {
        return Err(SpectralError::InvalidParams("T list is empty".into()));
    }
    if cfg.parallel {
        cfg.ts.par_iter().map(|&t| scan_point(cfg, t)).collect()
    } else {
        cfg.ts.iter().map(|&t| scan_point(cfg, t)).collect()
    }
}
