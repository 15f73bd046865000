use serde::{Deserialize, Serialize};

use super::block::{BlockCochain, BlockSpace};
use super::field::MorseChart;
use super::SpectralError;
use crate::dec_grid::{Cochain, PeriodicGrid};

pub const DEFAULT_BUMP_RADIUS: f64 = 0.24;
/// Bumps of radius up to a quarter period around distinct critical points
/// never overlap.
pub const MAX_BUMP_RADIUS: f64 = 0.25;

/// Which cone summand a model cochain occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summand {
    First,
    Second,
}

impl Summand {
    /// Cone degree of a model cochain for a point of index `k`.
    pub fn cone_degree(self, k: usize, ell: usize) -> i32 {
        match self {
            Summand::First => k as i32,
            Summand::Second => k as i32 + ell as i32 - 1,
        }
    }
}

/// Smooth cutoff: 1 on `r ≤ R/2`, 0 on `r ≥ R`.
fn bump(r: f64, radius: f64) -> f64 {
    let inner = radius / 2.0;
    if r >= radius {
        return 0.0;
    }
    if r <= inner {
        return 1.0;
    }
    let t = (r - inner) / (radius - inner);
    let a = (-1.0 / (1.0 - t)).exp();
    let b = (-1.0 / t).exp();
    a / (a + b)
}

fn wrap(z: f64) -> f64 {
    (z + 0.5).rem_euclid(1.0) - 0.5
}

/// Discrete `γ ρ` at critical point `p`: on cells `(v, D)` with `D` the
/// negative axes, `Π_{i∈D}(s_i h) · γ(|v − p|) · exp(−T/2 Σ_i s_i² (v_i − p_i)²)`,
/// where `s_i` are the chart scales. Zero elsewhere, normalized in the block
/// mass norm.
pub fn gaussian_model_cochain(
    grid: &PeriodicGrid,
    chart: &MorseChart,
    ell: usize,
    t: f64,
    summand: Summand,
    radius: f64,
) -> Result<BlockCochain, SpectralError> {
    if !(radius > 0.0 && radius <= MAX_BUMP_RADIUS) {
        return Err(SpectralError::EpsilonTooLarge { radius });
    }
    if grid.n() % 2 == 1 {
        return Err(SpectralError::NotGridAligned { n: grid.n() });
    }
    if chart.position.len() != grid.dim() {
        return Err(SpectralError::InvalidParams(format!(
            "critical point {} has dimension {}, grid has {}",
            chart.label,
            chart.position.len(),
            grid.dim()
        )));
    }
    let k = chart.index;
    let h = grid.h();
    let weight: f64 = chart.negative_axes.iter().map(|&i| chart.scales[i] * h).product();
    let mut local = vec![0.0; grid.num_cells(k)];
    for (idx, anchor, set) in grid.cells(k) {
        if set != chart.negative_axes {
            continue;
        }
        let delta: Vec<f64> = grid
            .vertex_position(anchor)
            .iter()
            .zip(&chart.position)
            .map(|(x, p)| wrap(x - p))
            .collect();
        let r = delta.iter().map(|d| d * d).sum::<f64>().sqrt();
        let quad: f64 = delta
            .iter()
            .zip(&chart.scales)
            .map(|(d, s)| (s * d).powi(2))
            .sum();
        local[idx] = weight * bump(r, radius) * (-0.5 * t * quad).exp();
    }
    let degree = summand.cone_degree(k, ell);
    let space = BlockSpace::new(grid, ell, degree);
    let mut values = vec![0.0; space.dim()];
    let offset = match summand {
        Summand::First => 0,
        Summand::Second => space.n_first,
    };
    values[offset..offset + local.len()].copy_from_slice(&local);
    let mut xi = BlockCochain { degree, values };
    let norm = xi.norm(&space.mass(grid));
    if !(norm > 0.0) {
        return Err(SpectralError::InvalidParams(format!(
            "model cochain at {} vanishes on the grid",
            chart.label
        )));
    }
    xi.values.iter_mut().for_each(|x| *x /= norm);
    Ok(xi)
}

/// `a(ω) = 2^m · max_v √(Σ_D (ω(v, D) / h^ℓ)²)`: the pointwise norm of the
/// recovered constant coefficients, maximized over anchors.
pub fn a_omega(grid: &PeriodicGrid, omega: &Cochain) -> f64 {
    let ell = omega.degree;
    let scale = grid.h().powi(ell as i32);
    let mut sums = vec![0.0; grid.num_vertices()];
    for (idx, anchor, _) in grid.cells(ell) {
        sums[anchor] += (omega.values[idx] / scale).powi(2);
    }
    let max = sums.into_iter().fold(0.0, f64::max).sqrt();
    (1u32 << grid.dim()) as f64 * max
}
