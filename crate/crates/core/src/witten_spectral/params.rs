use serde::{Deserialize, Serialize};

use super::block::BlockSpace;
use super::SpectralError;
use crate::dec_grid::{Cochain, PeriodicGrid};

/// Linear mode refuses `T · max|f|` beyond this.
pub const LINEAR_EXPONENT_CAP: f64 = 300.0;

/// Deformation strength `T` and cone scaling `S`, kept as `ln S` so that
/// scheduled values `S = e^{c0 T}` carry no rounding in the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformParams {
    pub t: f64,
    pub log_s: f64,
}

impl DeformParams {
    pub fn new(t: f64, s: f64) -> Result<Self, SpectralError> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(SpectralError::InvalidParams(format!("S must be positive, got {s}")));
        }
        Self::from_log_s(t, s.ln())
    }

    pub fn from_log_s(t: f64, log_s: f64) -> Result<Self, SpectralError> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(SpectralError::InvalidParams(format!("T must be >= 0, got {t}")));
        }
        if !log_s.is_finite() {
            return Err(SpectralError::InvalidParams(format!("ln S must be finite, got {log_s}")));
        }
        Ok(Self { t, log_s })
    }

    /// `S = e^{c0 T}`.
    pub fn schedule(t: f64, c0: f64) -> Result<Self, SpectralError> {
        Self::from_log_s(t, c0 * t)
    }

    pub fn s(&self) -> f64 {
        self.log_s.exp()
    }
}

/// Default schedule constant `1 + 2 max|f|`.
pub fn default_c0(max_abs_f: f64) -> f64 {
    1.0 + 2.0 * max_abs_f
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    Linear,
    LogDomain,
}

impl ScalingMode {
    /// Linear while `T · max|f|` stays under the cap.
    pub fn auto(t: f64, max_abs_f: f64) -> Self {
        if t * max_abs_f > LINEAR_EXPONENT_CAP {
            ScalingMode::LogDomain
        } else {
            ScalingMode::Linear
        }
    }
}

/// Diagonal `ϱ_ST = diag(e^{Tf}, S^{-1} e^{Tf})` on one block space, with
/// `f` extended to cells by its anchor value.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalingMap {
    Linear(Vec<f64>),
    LogDomain(Vec<f64>),
}

pub fn scaling_map(
    grid: &PeriodicGrid,
    f: &Cochain,
    params: &DeformParams,
    space: &BlockSpace,
    mode: ScalingMode,
) -> Result<ScalingMap, SpectralError> {
    let max_f = f.max_abs();
    if mode == ScalingMode::Linear && params.t * max_f > LINEAR_EXPONENT_CAP {
        return Err(SpectralError::Overflow {
            t: params.t,
            max_abs_f: max_f,
        });
    }
    let logs: Vec<f64> = space
        .base_values(grid, f)
        .into_iter()
        .enumerate()
        .map(|(i, fb)| {
            let x = params.t * fb;
            if space.is_second(i) {
                x - params.log_s
            } else {
                x
            }
        })
        .collect();
    Ok(match mode {
        ScalingMode::Linear => ScalingMap::Linear(logs.iter().map(|x| x.exp()).collect()),
        ScalingMode::LogDomain => ScalingMap::LogDomain(logs),
    })
}

impl ScalingMap {
    pub fn len(&self) -> usize {
        match self {
            ScalingMap::Linear(v) | ScalingMap::LogDomain(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        match self {
            ScalingMap::Linear(d) => x.iter().zip(d).map(|(a, b)| a * b).collect(),
            ScalingMap::LogDomain(l) => x.iter().zip(l).map(|(a, b)| a * b.exp()).collect(),
        }
    }

    /// Closed-form inverse.
    pub fn inverse(&self) -> Self {
        match self {
            ScalingMap::Linear(d) => ScalingMap::Linear(d.iter().map(|v| 1.0 / v).collect()),
            ScalingMap::LogDomain(l) => ScalingMap::LogDomain(l.iter().map(|v| -v).collect()),
        }
    }

    /// Factor `ϱ_dst^{-1} ϱ_src` for an operator entry from `src` (in
    /// `self`) to `dst` (in `target`). Log mode combines the exponents
    /// before exponentiating.
    pub fn transfer(&self, src: usize, target: &ScalingMap, dst: usize) -> f64 {
        match (self, target) {
            (ScalingMap::Linear(a), ScalingMap::Linear(b)) => a[src] / b[dst],
            (ScalingMap::LogDomain(a), ScalingMap::LogDomain(b)) => (a[src] - b[dst]).exp(),
            _ => panic!("mixed scaling modes"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dec_grid::sample_zero_form;

    fn space(g: &PeriodicGrid, q: i32) -> BlockSpace {
        BlockSpace::new(g, 1, q)
    }

    #[test]
    fn identity_at_zero() {
        let g = PeriodicGrid::new(2, 4).unwrap();
        let f = sample_zero_form(&g, |x| x[0].sin());
        let p = DeformParams::new(0.0, 1.0).unwrap();
        let map = scaling_map(&g, &f, &p, &space(&g, 1), ScalingMode::Linear).unwrap();
        let x: Vec<f64> = (0..map.len()).map(|i| i as f64).collect();
        assert_eq!(map.apply(&x), x);
    }

    #[test]
    fn constant_field_scales_uniformly() {
        let g = PeriodicGrid::new(2, 4).unwrap();
        let f = sample_zero_form(&g, |_| 1.0);
        let p = DeformParams::new(2.0, 1.0).unwrap();
        let map = scaling_map(&g, &f, &p, &space(&g, 0), ScalingMode::Linear).unwrap();
        let out = map.apply(&vec![1.0; map.len()]);
        assert!(out.iter().all(|&v| (v - 2f64.exp()).abs() < 1e-14));
    }

    #[test]
    fn overflow_guard() {
        let g = PeriodicGrid::new(1, 8).unwrap();
        let f = sample_zero_form(&g, |x| 2.0 * (std::f64::consts::TAU * x[0]).cos());
        let p = DeformParams::new(151.0, 1.0).unwrap();
        let sp = space(&g, 0);
        assert!(matches!(
            scaling_map(&g, &f, &p, &sp, ScalingMode::Linear),
            Err(SpectralError::Overflow { .. })
        ));
        assert!(scaling_map(&g, &f, &p, &sp, ScalingMode::LogDomain).is_ok());
        assert_eq!(ScalingMode::auto(151.0, 2.0), ScalingMode::LogDomain);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(DeformParams::new(1.0, 0.0).is_err());
        assert!(DeformParams::new(-1.0, 1.0).is_err());
        let p = DeformParams::schedule(4.0, 5.0).unwrap();
        assert_eq!(p.log_s, 20.0);
    }
}
