use super::rational::{rank_q, RationalMatrix};
use super::ComplexError;

/// Finite cochain complex over ℚ. Degree `k` lives at offset
/// `k - min_degree`; every degree outside the stored range is the zero space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    min_degree: i32,
    dims: Vec<usize>,
    differentials: Vec<RationalMatrix>,
}

impl GradedComplex {
    /// `differentials[i]` maps degree `min_degree + i` to the next one. The
    /// last differential must map into the zero space (0 rows).
    pub fn new(
        min_degree: i32,
        dims: Vec<usize>,
        differentials: Vec<RationalMatrix>,
    ) -> Result<Self, ComplexError> {
        if differentials.len() != dims.len() {
            return Err(ComplexError::Grading(format!(
                "{} differentials for {} degrees",
                differentials.len(),
                dims.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            let k = min_degree + i as i32;
            let target = dims.get(i + 1).copied().unwrap_or(0);
            if d.cols() != dims[i] || d.rows() != target {
                return Err(ComplexError::Grading(format!(
                    "d_{k} is {}x{}, expected {target}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i]
                )));
            }
        }
        for (i, pair) in differentials.windows(2).enumerate() {
            let prod = pair[1].mul(&pair[0]);
            if let Some((row, col)) = prod.first_nonzero() {
                return Err(ComplexError::Nilpotency {
                    degree: min_degree + i as i32,
                    row,
                    col,
                });
            }
        }
        Ok(Self {
            min_degree,
            dims,
            differentials,
        })
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.min_degree..=self.max_degree()
    }

    fn offset(&self, k: i32) -> Option<usize> {
        let i = k - self.min_degree;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn dim(&self, k: i32) -> usize {
        self.offset(k).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k`, or a correctly shaped zero matrix outside the stored range.
    pub fn differential(&self, k: i32) -> RationalMatrix {
        match self.offset(k) {
            Some(i) => self.differentials[i].clone(),
            None => RationalMatrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn rank(&self, k: i32) -> usize {
        self.offset(k).map_or(0, |i| rank_q(&self.differentials[i]))
    }

    /// `dim ker d_k − rank d_{k−1}` for each stored degree.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.degrees().map(|k| self.rank(k)).collect();
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &dim)| {
                let below = if i == 0 { 0 } else { ranks[i - 1] };
                dim - ranks[i] - below
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| sign(k) * self.dim(k) as i64)
            .sum()
    }
}

/// `(−1)^k` for any integer `k`.
pub fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Free function form of [`GradedComplex::cohomology_dims`].
pub fn cohomology_dims(c: &GradedComplex) -> Vec<usize> {
    c.cohomology_dims()
}
