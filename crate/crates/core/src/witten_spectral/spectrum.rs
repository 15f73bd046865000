use serde::Serialize;

use super::eigen::sym_eigen;
use super::laplacian::DiracLaplacian;
use super::SpectralError;

/// Eigenvalues at or below this count as the low cluster by default.
pub const DEFAULT_THRESHOLD: f64 = 1.0;
/// Eigenvalues below this count as zero.
pub const ZERO_CUTOFF: f64 = 1e-8;
/// Floor for the denominator of gap ratios.
pub const GAP_FLOOR: f64 = 1e-12;

/// Low/high split of a sorted spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterSplit {
    pub threshold: f64,
    pub low_count: usize,
    /// `λ_high / max(λ_low, 1e-12)`; infinite when one side is empty.
    pub gap_ratio: f64,
    /// Split at the largest multiplicative gap.
    pub gap_low_count: usize,
    pub gap_mode_ratio: f64,
    pub modes_agree: bool,
}

fn ratio_at(values: &[f64], low: usize) -> f64 {
    if low == 0 || low == values.len() {
        f64::INFINITY
    } else {
        values[low] / values[low - 1].max(GAP_FLOOR)
    }
}

pub fn cluster_split(eigenvalues: &[f64], threshold: f64) -> ClusterSplit {
    let low_count = eigenvalues.iter().take_while(|&&l| l <= threshold).count();
    let (gap_low_count, gap_mode_ratio) = (1..eigenvalues.len())
        .map(|i| (i, ratio_at(eigenvalues, i)))
        .fold((0, f64::INFINITY), |best, cur| {
            if best.0 == 0 || cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    ClusterSplit {
        threshold,
        low_count,
        gap_ratio: ratio_at(eigenvalues, low_count),
        gap_low_count,
        gap_mode_ratio,
        modes_agree: gap_low_count == low_count,
    }
}

/// Full eigendecomposition of one Laplacian block.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub degree: i32,
    /// Ascending; each one recomputed as `‖B u‖² + ‖Cᵀ u‖²`.
    pub eigenvalues: Vec<f64>,
    /// Eigensolver values in the same order.
    pub raw_eigenvalues: Vec<f64>,
    /// `‖A u − λ u‖` per pair.
    pub residuals: Vec<f64>,
    pub split: ClusterSplit,
    sym_vectors: Vec<f64>,
    sqrt_mass: Vec<f64>,
    n: usize,
}

/// Dense eigensolve followed by factored Rayleigh refinement. The plain
/// eigensolver loses absolute accuracy `ε‖A‖` on tiny eigenvalues; the
/// factored quotient keeps them nonnegative and relatively accurate.
pub fn spectrum(lap: &DiracLaplacian, threshold: f64) -> Result<SpectralResult, SpectralError> {
    let eig = sym_eigen(&lap.matrix)?;
    let n = eig.dim();
    let refined: Vec<f64> = (0..n).map(|j| lap.factored_quadratic(eig.vector(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| refined[a].total_cmp(&refined[b]));
    let mut sym_vectors = Vec::with_capacity(n * n);
    let mut eigenvalues = Vec::with_capacity(n);
    let mut raw = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for &j in &order {
        let u = eig.vector(j);
        let lambda = refined[j];
        let au = lap.apply_sym(u);
        residuals.push(
            au.iter()
                .zip(u)
                .map(|(a, x)| (a - lambda * x).powi(2))
                .sum::<f64>()
                .sqrt(),
        );
        sym_vectors.extend_from_slice(u);
        eigenvalues.push(lambda);
        raw.push(eig.values[j]);
    }
    let split = cluster_split(&eigenvalues, threshold);
    Ok(SpectralResult {
        degree: lap.degree,
        eigenvalues,
        raw_eigenvalues: raw,
        residuals,
        split,
        sym_vectors,
        sqrt_mass: lap.sqrt_mass.clone(),
        n,
    })
}

impl SpectralResult {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn low_count(&self) -> usize {
        self.split.low_count
    }

    pub fn gap_ratio(&self) -> f64 {
        self.split.gap_ratio
    }

    pub fn resplit(&mut self, threshold: f64) {
        self.split = cluster_split(&self.eigenvalues, threshold);
    }

    /// Eigenvector `j` in the symmetric frame (Euclidean unit vector).
    pub fn sym_vector(&self, j: usize) -> &[f64] {
        &self.sym_vectors[j * self.n..(j + 1) * self.n]
    }

    /// Eigenvector `j` as a cochain, unit in the block mass norm.
    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        self.sym_vector(j)
            .iter()
            .zip(&self.sqrt_mass)
            .map(|(u, s)| u / s)
            .collect()
    }

    pub fn sqrt_mass(&self) -> &[f64] {
        &self.sqrt_mass
    }

    pub fn zero_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l < ZERO_CUTOFF).count()
    }

    pub fn largest_low(&self) -> Option<f64> {
        self.split
            .low_count
            .checked_sub(1)
            .map(|i| self.eigenvalues[i])
    }

    pub fn smallest_high(&self) -> Option<f64> {
        self.eigenvalues.get(self.split.low_count).copied()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Largest residual relative to `max(1, λ)`.
    pub fn max_relative_residual(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.eigenvalues)
            .map(|(r, l)| r / l.max(1.0))
            .fold(0.0, f64::max)
    }

    /// Largest residual among the low cluster.
    pub fn max_low_residual(&self) -> f64 {
        self.residuals[..self.split.low_count]
            .iter()
            .fold(0.0, |a, &r| a.max(r))
    }

    /// `‖P ξ − ξ‖_M` for the mass-orthogonal projector onto the low cluster.
    pub fn projection_defect(&self, xi: &[f64]) -> f64 {
        let u: Vec<f64> = xi.iter().zip(&self.sqrt_mass).map(|(x, s)| x * s).collect();
        let mut rest = u.clone();
        for j in 0..self.split.low_count {
            let w = self.sym_vector(j);
            let c: f64 = w.iter().zip(&u).map(|(a, b)| a * b).sum();
            for (r, a) in rest.iter_mut().zip(w) {
                *r -= c * a;
            }
        }
        rest.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_split() {
        let s = cluster_split(&[1e-9, 1e-8, 4.0, 5.0], 1.0);
        assert_eq!(s.low_count, 2);
        assert!((s.gap_ratio - 4e8).abs() < 1e-3);
        assert_eq!(s.gap_low_count, 2);
        assert!(s.modes_agree);
    }

    #[test]
    fn one_sided_spectra() {
        let s = cluster_split(&[2.0, 3.0], 1.0);
        assert_eq!(s.low_count, 0);
        assert!(s.gap_ratio.is_infinite());
        let s = cluster_split(&[0.1, 0.2], 1.0);
        assert_eq!(s.low_count, 2);
        assert!(s.gap_ratio.is_infinite());
        let s = cluster_split(&[], 1.0);
        assert_eq!((s.low_count, s.gap_low_count), (0, 0));
    }

    #[test]
    fn disagreement_is_flagged() {
        let s = cluster_split(&[0.5, 0.9, 100.0, 101.0], 0.6);
        assert_eq!(s.low_count, 1);
        assert_eq!(s.gap_low_count, 2);
        assert!(!s.modes_agree);
    }
}
