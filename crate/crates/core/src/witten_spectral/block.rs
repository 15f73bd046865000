use crate::dec_grid::{mass_weights, Cochain, PeriodicGrid};

/// Degree-`q` space of the discrete mapping cone: `Ω^q ⊕ Ω^{q−ℓ+1}`,
/// stored as `[first | second]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpace {
    pub degree: i32,
    pub first: Option<usize>,
    pub second: Option<usize>,
    pub n_first: usize,
    pub n_second: usize,
}

fn in_range(grid: &PeriodicGrid, k: i32) -> Option<usize> {
    (0..=grid.dim() as i32).contains(&k).then_some(k as usize)
}

impl BlockSpace {
    pub fn new(grid: &PeriodicGrid, ell: usize, q: i32) -> Self {
        let first = in_range(grid, q);
        let second = in_range(grid, q - ell as i32 + 1);
        Self {
            degree: q,
            first,
            second,
            n_first: first.map_or(0, |k| grid.num_cells(k)),
            n_second: second.map_or(0, |k| grid.num_cells(k)),
        }
    }

    pub fn dim(&self) -> usize {
        self.n_first + self.n_second
    }

    pub fn is_second(&self, i: usize) -> bool {
        i >= self.n_first
    }

    pub fn mass(&self, grid: &PeriodicGrid) -> Vec<f64> {
        let mut m = self.first.map_or_else(Vec::new, |k| mass_weights(grid, k));
        if let Some(k) = self.second {
            m.extend(mass_weights(grid, k));
        }
        m
    }

    /// `f` at the anchor vertex of each cell.
    pub fn base_values(&self, grid: &PeriodicGrid, f: &Cochain) -> Vec<f64> {
        let part = |n: usize| (0..n).map(|c| f.values[grid.anchor(c)]);
        part(self.n_first).chain(part(self.n_second)).collect()
    }
}

/// Element of one [`BlockSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCochain {
    pub degree: i32,
    pub values: Vec<f64>,
}

impl BlockCochain {
    pub fn norm(&self, mass: &[f64]) -> f64 {
        self.values
            .iter()
            .zip(mass)
            .map(|(x, m)| m * x * x)
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &Self, mass: &[f64]) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .zip(mass)
            .map(|((x, y), m)| m * x * y)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_range_for_dx_on_torus() {
        let g = PeriodicGrid::new(2, 4).unwrap();
        let dims: Vec<usize> = (-1..=2).map(|q| BlockSpace::new(&g, 1, q).dim()).collect();
        assert_eq!(dims, vec![0, 32, 64, 32]);
        let s = BlockSpace::new(&g, 2, 3);
        assert_eq!((s.first, s.second), (None, Some(2)));
    }
}
