use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::SpectralError;
use crate::dec_grid::{sample_zero_form, Cochain, PeriodicGrid};

/// `f(x) = Σ_i a_i cos(2π x_i)` on `T^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosineField {
    pub amplitudes: Vec<f64>,
}

/// Critical point of a [`CosineField`] with its Morse chart
/// `x_i = 2π √|a_i| δ_i`, in which `f = f(p) − ½Σ_{neg} x_i² + ½Σ_{pos} x_i²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorseChart {
    pub label: String,
    pub position: Vec<f64>,
    pub index: usize,
    pub negative_axes: Vec<usize>,
    pub scales: Vec<f64>,
    pub value: f64,
}

impl CosineField {
    pub fn new(amplitudes: Vec<f64>) -> Self {
        Self { amplitudes }
    }

    /// `cos 2πx + cos 2πy`.
    pub fn torus_default() -> Self {
        Self::new(vec![1.0, 1.0])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.amplitudes
            .iter()
            .zip(x)
            .map(|(a, xi)| a * (TAU * xi).cos())
            .sum()
    }

    /// `max |f| = Σ |a_i|`, attained at a critical point.
    pub fn max_abs(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.abs()).sum()
    }

    pub fn sample(&self, grid: &PeriodicGrid) -> Cochain {
        sample_zero_form(grid, |x| self.eval(x))
    }

    /// The `2^m` critical points, ordered by index and then position. They
    /// sit on grid vertices when `n` is even.
    pub fn critical_points(&self) -> Result<Vec<MorseChart>, SpectralError> {
        if self.amplitudes.iter().any(|&a| a == 0.0 || !a.is_finite()) {
            return Err(SpectralError::InvalidParams(
                "cosine amplitudes must be finite and nonzero".into(),
            ));
        }
        let m = self.dim();
        let mut charts: Vec<MorseChart> = (0..1usize << m)
            .map(|bits| {
                let position: Vec<f64> = (0..m)
                    .map(|i| if bits >> i & 1 == 1 { 0.5 } else { 0.0 })
                    .collect();
                // a cos(2πx) is maximal along x at 0 when a > 0.
                let negative_axes: Vec<usize> = (0..m)
                    .filter(|&i| (position[i] == 0.0) == (self.amplitudes[i] > 0.0))
                    .collect();
                let coords: Vec<String> = position.iter().map(|p| format!("{p}")).collect();
                MorseChart {
                    label: format!("index{}@({})", negative_axes.len(), coords.join(",")),
                    index: negative_axes.len(),
                    negative_axes,
                    scales: self.amplitudes.iter().map(|a| TAU * a.abs().sqrt()).collect(),
                    value: self.eval(&position),
                    position,
                }
            })
            .collect();
        charts.sort_by(|a, b| {
            a.index
                .cmp(&b.index)
                .then_with(|| b.position.partial_cmp(&a.position).expect("finite"))
        });
        Ok(charts)
    }
}
