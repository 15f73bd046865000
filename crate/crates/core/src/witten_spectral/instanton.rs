use serde::Serialize;

use super::cone::ConeOperator;
use super::dd::Dd;
use super::spectrum::SpectralResult;
use super::SpectralError;

/// Relative singular value cutoff for numerical rank.
pub const RANK_CUTOFF: f64 = 1e-8;
/// Normalized off-cluster component tolerated in `d F^q`.
pub const LEAKAGE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstantonDegree {
    pub degree: i32,
    pub dim: usize,
    /// Rank of `d^ω_ST : F^q → F^{q+1}`.
    pub rank: usize,
    pub cohomology: i64,
    pub singular_values: Vec<f64>,
    /// Second-order bound on singular values produced by eigenvector error.
    pub noise_floor: f64,
    pub cutoff: f64,
    /// `‖(I − P) d v‖ / ‖𝔻‖` maximized over the low eigenvectors `v`.
    pub commutation_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstantonComplex {
    pub degrees: Vec<InstantonDegree>,
}

impl InstantonComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn cohomology(&self) -> Vec<i64> {
        self.degrees.iter().map(|d| d.cohomology).collect()
    }
}

/// Singular values of a small dense matrix by one-sided Jacobi, descending.
pub fn singular_values(rows: usize, cols: usize, a: &[f64]) -> Vec<f64> {
    // Work on columns of the (possibly transposed) tall matrix.
    let (m, n, mut cols_data): (usize, usize, Vec<Vec<f64>>) = if rows >= cols {
        (rows, cols, (0..cols).map(|j| (0..rows).map(|i| a[i * cols + j]).collect()).collect())
    } else {
        (cols, rows, (0..rows).map(|i| a[i * cols..(i + 1) * cols].to_vec()).collect())
    };
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = (0..m).fold((0.0, 0.0, 0.0), |(a, b, g), i| {
                    let (x, y) = (cols_data[p][i], cols_data[q][i]);
                    (a + x * x, b + y * y, g + x * y)
                });
                if gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum().max(0.0).mul_add(2.0, -1.0) / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (cols_data[p][i], cols_data[q][i]);
                    cols_data[p][i] = c * x - s * y;
                    cols_data[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols_data
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// `R_{ab} = ⟨w_a, d^ω_ST v_b⟩_M` over low eigenvectors, evaluated in
/// double-double so that cancellations between large entries survive.
fn restricted_matrix(cone: &ConeOperator, src: &SpectralResult, dst: &SpectralResult) -> Vec<f64> {
    let (p, r) = (src.low_count(), dst.low_count());
    let mut out = vec![0.0; r * p];
    for b in 0..p {
        let v = src.eigenvector(b);
        let y = cone.apply_dd(src.degree, &v);
        for a in 0..r {
            let w = dst.sym_vector(a);
            let acc = w
                .iter()
                .zip(dst.sqrt_mass())
                .zip(&y)
                .fold(Dd::ZERO, |acc, ((wi, si), yi)| acc + *yi * Dd::from_f64(wi * si));
            out[a * p + b] = acc.to_f64();
        }
    }
    out
}

fn subspace_error(s: &SpectralResult) -> f64 {
    match (s.largest_low(), s.smallest_high()) {
        (Some(lo), Some(hi)) if hi > lo => s.max_low_residual() / (hi - lo),
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 0.0,
    }
}

fn commutation_residual(cone: &ConeOperator, src: &SpectralResult, dst: Option<&SpectralResult>) -> f64 {
    let scale = src.max_eigenvalue().max(1.0).sqrt();
    let op = cone.op(src.degree);
    let mut worst = 0.0_f64;
    for b in 0..src.low_count() {
        let y = op.apply(&src.eigenvector(b));
        let mut u: Vec<f64> = match dst {
            Some(d) => y.iter().zip(d.sqrt_mass()).map(|(x, s)| x * s).collect(),
            None => y,
        };
        if let Some(d) = dst {
            for a in 0..d.low_count() {
                let w = d.sym_vector(a);
                let c: f64 = w.iter().zip(&u).map(|(x, y)| x * y).sum();
                for (ui, wi) in u.iter_mut().zip(w) {
                    *ui -= c * wi;
                }
            }
        }
        worst = worst.max(u.iter().map(|x| x * x).sum::<f64>().sqrt() / scale);
    }
    worst
}

/// Restriction of `d^ω_ST` to the low clusters. `spectra` holds one result
/// per cone degree, lowest degree first.
pub fn instanton_complex(
    cone: &ConeOperator,
    spectra: &[SpectralResult],
) -> Result<InstantonComplex, SpectralError> {
    let mut degrees = Vec::with_capacity(spectra.len());
    for (i, src) in spectra.iter().enumerate() {
        let dst = spectra.get(i + 1);
        let residual = commutation_residual(cone, src, dst);
        if residual > LEAKAGE_LIMIT {
            return Err(SpectralError::ClusterLeakage {
                degree: src.degree,
                leakage: residual,
            });
        }
        let (singular_values, noise_floor) = match dst {
            Some(d) if src.low_count() > 0 && d.low_count() > 0 => {
                let r = restricted_matrix(cone, src, d);
                let sv = singular_values(d.low_count(), src.low_count(), &r);
                let delta = subspace_error(src).max(subspace_error(d));
                (sv, delta * delta * src.max_eigenvalue().sqrt())
            }
            _ => (Vec::new(), 0.0),
        };
        let sigma_max = singular_values.first().copied().unwrap_or(0.0);
        let cutoff = (RANK_CUTOFF * sigma_max).max(noise_floor);
        let rank = singular_values.iter().filter(|&&s| s > cutoff).count();
        degrees.push(InstantonDegree {
            degree: src.degree,
            dim: src.low_count(),
            rank,
            cohomology: 0,
            singular_values,
            noise_floor,
            cutoff,
            commutation_residual: residual,
        });
    }
    for i in 0..degrees.len() {
        let below = if i == 0 { 0 } else { degrees[i - 1].rank };
        degrees[i].cohomology = degrees[i].dim as i64 - degrees[i].rank as i64 - below as i64;
    }
    Ok(InstantonComplex { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_known_matrices() {
        let sv = singular_values(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        assert!((sv[0] - 4.0).abs() < 1e-15 && (sv[1] - 3.0).abs() < 1e-15);
        // Rank one, 2x3.
        let sv = singular_values(2, 3, &[1.0, 2.0, 2.0, 2.0, 4.0, 4.0]);
        assert!((sv[0] - 45f64.sqrt()).abs() < 1e-13);
        assert!(sv[1] < 1e-15);
        let sv = singular_values(3, 1, &[1.0, 1e-30, 0.0]);
        assert_eq!(sv.len(), 1);
    }

    #[test]
    fn tiny_singular_value_kept_relative() {
        let sv = singular_values(2, 2, &[1.0, 0.0, 0.0, 1e-25]);
        assert!((sv[1] - 1e-25).abs() < 1e-38);
    }
}
