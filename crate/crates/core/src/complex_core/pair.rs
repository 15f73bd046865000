use num::Zero;
use serde::Serialize;

use super::graded::{sign, GradedComplex};
use super::rational::{image_basis, kernel_basis, rank_q, rat, Rational, RationalMatrix};
use super::ComplexError;

/// A cochain complex `(C, ∂)` concentrated in degrees `0..=m` together with
/// a degree-`ℓ` map `𝒞` satisfying `∂𝒞 = (−1)^ℓ 𝒞∂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMapPair {
    ell: usize,
    dims: Vec<usize>,
    partial: Vec<RationalMatrix>,
    cone_map: Vec<RationalMatrix>,
}

impl ChainMapPair {
    /// `partial[k]` is `μ_{k+1} × μ_k` and `cone_map[k]` is `μ_{k+ℓ} × μ_k`,
    /// with the zero space beyond the top degree.
    pub fn new(
        dims: Vec<usize>,
        ell: usize,
        partial: Vec<RationalMatrix>,
        cone_map: Vec<RationalMatrix>,
    ) -> Result<Self, ComplexError> {
        let n = dims.len();
        if partial.len() != n || cone_map.len() != n {
            return Err(ComplexError::Grading(format!(
                "expected {n} boundary and cone matrices, got {} and {}",
                partial.len(),
                cone_map.len()
            )));
        }
        let dim = |k: usize| dims.get(k).copied().unwrap_or(0);
        for k in 0..n {
            let (p, c) = (&partial[k], &cone_map[k]);
            if (p.rows(), p.cols()) != (dim(k + 1), dim(k)) {
                return Err(ComplexError::Grading(format!(
                    "boundary at degree {k} is {}x{}, expected {}x{}",
                    p.rows(),
                    p.cols(),
                    dim(k + 1),
                    dim(k)
                )));
            }
            if (c.rows(), c.cols()) != (dim(k + ell), dim(k)) {
                return Err(ComplexError::Grading(format!(
                    "cone map at degree {k} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    dim(k + ell),
                    dim(k)
                )));
            }
        }
        let pair = Self {
            ell,
            dims,
            partial,
            cone_map,
        };
        for k in 0..n as i32 {
            let sq = pair.partial(k + 1).mul(&pair.partial(k));
            if let Some((row, col)) = sq.first_nonzero() {
                return Err(ComplexError::Nilpotency {
                    degree: k,
                    row,
                    col,
                });
            }
        }
        if let Some(k) = pair.anticommutation_failure() {
            return Err(ComplexError::InvalidCone { degree: k });
        }
        Ok(pair)
    }

    /// First degree `k` with `∂_{k+ℓ}𝒞_k ≠ (−1)^ℓ 𝒞_{k+1}∂_k`.
    fn anticommutation_failure(&self) -> Option<i32> {
        let s = rat(sign(self.ell as i32));
        (0..self.dims.len() as i32).find(|&k| {
            let lhs = self.partial(k + self.ell as i32).mul(&self.cone(k));
            let rhs = self.cone(k + 1).mul(&self.partial(k)).scaled(&s);
            lhs != rhs
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Top degree `m` of the underlying complex.
    pub fn top_degree(&self) -> i32 {
        self.dims.len() as i32 - 1
    }

    pub fn mu(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: i32) -> usize {
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// `∂_k`; zero matrix of the right shape outside `0..=m`.
    pub fn partial(&self, k: i32) -> RationalMatrix {
        if k >= 0 && (k as usize) < self.partial.len() {
            self.partial[k as usize].clone()
        } else {
            RationalMatrix::zeros(self.dim(k + 1), self.dim(k))
        }
    }

    /// `𝒞_k : C^k → C^{k+ℓ}`; zero outside `0..=m`.
    pub fn cone(&self, k: i32) -> RationalMatrix {
        if k >= 0 && (k as usize) < self.cone_map.len() {
            self.cone_map[k as usize].clone()
        } else {
            RationalMatrix::zeros(self.dim(k + self.ell as i32), self.dim(k))
        }
    }

    /// Same boundary with the cone map replaced by `c · 𝒞`.
    pub fn with_scaled_cone(&self, c: &Rational) -> Self {
        Self {
            cone_map: self.cone_map.iter().map(|m| m.scaled(c)).collect(),
            ..self.clone()
        }
    }

    /// Highest degree of the mapping cone: `max(m, m + ℓ − 1)`.
    pub fn cone_top_degree(&self) -> i32 {
        let m = self.top_degree();
        m.max(m + self.ell as i32 - 1)
    }

    /// `(C, ∂)` as a graded complex in degrees `0..=m`.
    pub fn base_complex(&self) -> GradedComplex {
        GradedComplex::new(0, self.dims.clone(), self.partial.clone())
            .expect("pair invariants imply a valid complex")
    }
}

/// The mapping cone: degree `k` is `C^k ⊕ C^{k−ℓ+1}` with differential
/// `[[∂, 𝒞], [0, (−1)^{ℓ−1}∂]]`, in degrees `−1..=max(m, m+ℓ−1)`.
pub fn mapping_cone(pair: &ChainMapPair) -> Result<GradedComplex, ComplexError> {
    let shift = pair.ell as i32 - 1;
    let s = rat(sign(shift));
    let degrees = -1..=pair.cone_top_degree();
    let dims: Vec<usize> = degrees
        .clone()
        .map(|k| pair.dim(k) + pair.dim(k - shift))
        .collect();
    let diffs = degrees
        .map(|k| {
            let lower = pair.partial(k - shift).scaled(&s);
            let zero = RationalMatrix::zeros(lower.rows(), pair.dim(k));
            RationalMatrix::block(&pair.partial(k), &pair.cone(k - shift), &zero, &lower)
        })
        .collect();
    GradedComplex::new(-1, dims, diffs)
}

/// A basis of `H^k(C)`: representatives `reps` completing a basis
/// `image` of `im ∂_{k−1}` to a basis of `ker ∂_k`.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    pub image: Vec<Vec<Rational>>,
    pub reps: Vec<Vec<Rational>>,
    dim: usize,
}

impl CohomologyBasis {
    /// Representatives are the kernel basis vectors (free-column order)
    /// that are independent of the image and of the earlier picks.
    pub fn new(pair: &ChainMapPair, k: i32) -> Self {
        let dim = pair.dim(k);
        let image = image_basis(&pair.partial(k - 1));
        let mut chosen = image.clone();
        let mut reps = Vec::new();
        for v in kernel_basis(&pair.partial(k)) {
            chosen.push(v.clone());
            if rank_q(&RationalMatrix::from_columns(dim, &chosen)) == chosen.len() {
                reps.push(v);
            } else {
                chosen.pop();
            }
        }
        Self { image, reps, dim }
    }

    /// Coordinates of a cocycle in the representative basis, or `None` when
    /// `y` is not a cocycle.
    pub fn coordinates(&self, y: &[Rational]) -> Option<Vec<Rational>> {
        let mut cols = self.image.clone();
        cols.extend(self.reps.iter().cloned());
        let a = RationalMatrix::from_columns(self.dim, &cols);
        a.solve_unique(y)
            .map(|c| c[self.image.len()..].to_vec())
    }
}

/// Matrix of `𝒞 : H^k → H^{k+ℓ}` in the representative bases.
pub fn induced_cohomology_map(pair: &ChainMapPair, k: i32) -> Result<RationalMatrix, ComplexError> {
    let target_degree = k + pair.ell as i32;
    let source = CohomologyBasis::new(pair, k);
    let target = CohomologyBasis::new(pair, target_degree);
    let cone = pair.cone(k);
    let mut columns = Vec::with_capacity(source.reps.len());
    for rep in &source.reps {
        let y = cone.mul_vec(rep);
        let closed = pair
            .partial(target_degree)
            .mul_vec(&y)
            .iter()
            .all(Zero::is_zero);
        let coords = closed
            .then(|| target.coordinates(&y))
            .flatten()
            .ok_or(ComplexError::NotACocycleImage { degree: k })?;
        columns.push(coords);
    }
    Ok(RationalMatrix::from_columns(target.reps.len(), &columns))
}

/// `dim coker(𝒞: H^{k−ℓ} → H^k)` and `dim ker(𝒞: H^{k−ℓ+1} → H^{k+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecompositionEntry {
    pub degree: i32,
    pub coker: usize,
    pub ker: usize,
    pub cone_betti: usize,
}

pub fn decompose_cohomology(pair: &ChainMapPair) -> Result<Vec<DecompositionEntry>, ComplexError> {
    let ell = pair.ell as i32;
    let betti = pair.base_complex();
    let b = |k: i32| {
        if k < 0 {
            0
        } else {
            betti.cohomology_dims().get(k as usize).copied().unwrap_or(0)
        }
    };
    let induced_rank = |k: i32| induced_cohomology_map(pair, k).map(|m| rank_q(&m));
    let cone = mapping_cone(pair)?;
    let cone_betti = cone.cohomology_dims();
    let mut out = Vec::new();
    for (i, k) in cone.degrees().enumerate() {
        let coker = b(k) - induced_rank(k - ell)?;
        let ker = b(k - ell + 1) - induced_rank(k - ell + 1)?;
        if coker + ker != cone_betti[i] {
            return Err(ComplexError::DecompositionMismatch {
                degree: k,
                coker,
                ker,
                betti: cone_betti[i],
            });
        }
        out.push(DecompositionEntry {
            degree: k,
            coker,
            ker,
            cone_betti: cone_betti[i],
        });
    }
    Ok(out)
}

/// One degree of the exact Morse equality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityRow {
    pub degree: i32,
    pub rank: usize,
    pub betti_alternating: i64,
    pub mu_alternating: i64,
    pub residue: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityReport {
    pub rows: Vec<EqualityRow>,
    pub pass: bool,
}

/// One degree of the Morse inequality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub degree: i32,
    pub cone_rank: usize,
    pub betti_alternating: i64,
    pub bound: i64,
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub rows: Vec<InequalityRow>,
    pub pass: bool,
}

fn mu_at(mu: &[usize], k: i32) -> i64 {
    if k < 0 {
        0
    } else {
        mu.get(k as usize).copied().unwrap_or(0) as i64
    }
}

fn check_mu(pair: &ChainMapPair, mu: &[usize]) -> Result<(), ComplexError> {
    if mu != pair.mu() {
        return Err(ComplexError::Grading(format!(
            "critical point counts {mu:?} do not match complex dimensions {:?}",
            pair.mu()
        )));
    }
    Ok(())
}

/// Alternating partial sums `Σ_{j ≤ k} (−1)^{k−j} x_j` over the given degrees.
pub fn alternating_sums(degrees: impl Iterator<Item = i32>, x: impl Fn(i32) -> i64) -> Vec<i64> {
    let mut acc = 0;
    degrees
        .map(|k| {
            acc = x(k) - acc;
            acc
        })
        .collect()
}

/// `R_k + Σ (−1)^{k−j} b^ω_j = Σ (−1)^{k−j} (μ_j + μ_{j−ℓ+1})` for every
/// degree of the mapping cone.
pub fn morse_equalities(pair: &ChainMapPair, mu: &[usize]) -> Result<EqualityReport, ComplexError> {
    check_mu(pair, mu)?;
    let cone = mapping_cone(pair)?;
    let shift = pair.ell as i32 - 1;
    let betti = cone.cohomology_dims();
    let min = cone.min_degree();
    let b_alt = alternating_sums(cone.degrees(), |k| betti[(k - min) as usize] as i64);
    let mu_alt = alternating_sums(cone.degrees(), |k| mu_at(mu, k) + mu_at(mu, k - shift));
    let rows: Vec<EqualityRow> = cone
        .degrees()
        .enumerate()
        .map(|(i, k)| {
            let rank = cone.rank(k);
            EqualityRow {
                degree: k,
                rank,
                betti_alternating: b_alt[i],
                mu_alternating: mu_alt[i],
                residue: rank as i64 + b_alt[i] - mu_alt[i],
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.residue == 0);
    Ok(EqualityReport { rows, pass })
}

/// `Σ (−1)^{k−j} b^ω_j ≤ Σ (−1)^{k−j} (μ_j − v_{j−ℓ} + μ_{j−ℓ+1} − v_{j−ℓ+1})`
/// with `v_k = rank 𝒞_k`.
pub fn morse_inequalities(
    pair: &ChainMapPair,
    mu: &[usize],
) -> Result<InequalityReport, ComplexError> {
    check_mu(pair, mu)?;
    let cone = mapping_cone(pair)?;
    let ell = pair.ell as i32;
    let v = |k: i32| rank_q(&pair.cone(k)) as i64;
    let betti = cone.cohomology_dims();
    let min = cone.min_degree();
    let b_alt = alternating_sums(cone.degrees(), |k| betti[(k - min) as usize] as i64);
    let bound = alternating_sums(cone.degrees(), |j| {
        mu_at(mu, j) - v(j - ell) + mu_at(mu, j - ell + 1) - v(j - ell + 1)
    });
    let rows: Vec<InequalityRow> = cone
        .degrees()
        .enumerate()
        .map(|(i, k)| InequalityRow {
            degree: k,
            cone_rank: v(k) as usize,
            betti_alternating: b_alt[i],
            bound: bound[i],
            slack: bound[i] - b_alt[i],
        })
        .collect();
    let pass = rows.iter().all(|r| !r.slack.is_negative());
    Ok(InequalityReport { rows, pass })
}
