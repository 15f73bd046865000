//! Cubical cochains on the flat torus `T^m = [0,1)^m`, `m ∈ {1, 2}`.
//!
//! A `k`-cell is a pair `(v, D)`: anchor vertex `v` and a sorted set `D` of
//! `k` axis directions, spanning `v + Σ_{i∈D} t_i e_i`. Cells are oriented
//! by increasing axis order. Within a degree, cells are numbered by the
//! lexicographic rank of `D`, then by the anchor index `Σ v_i n^i`.

mod ops;
mod sparse;

use thiserror::Error;

pub use ops::{
    adjoint, adjoint_weighted, cup_with, d_op, inner, mass_inner, mass_weights, norm,
    sample_form, sample_zero_form, ConstantForm,
};
pub use sparse::GridOperator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecError {
    #[error("grid dimension {0} not supported (expected 1 or 2)")]
    Dimension(usize),
    #[error("grid needs at least 4 cells per axis, got {0}")]
    TooCoarse(usize),
    #[error("degree {degree} out of range [0, {max}]")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("form of degree {degree} on T^{m} needs {expected} coefficients, got {found}")]
    FormShape {
        m: usize,
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("not closed: max |dω| = {defect:e}")]
    NotClosed { defect: f64 },
    #[error("cup product fails the Leibniz rule: defect {defect:e}")]
    Leibniz { defect: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodicGrid {
    m: usize,
    n: usize,
}

impl PeriodicGrid {
    pub fn new(m: usize, n: usize) -> Result<Self, DecError> {
        if !(1..=2).contains(&m) {
            return Err(DecError::Dimension(m));
        }
        if n < 4 {
            return Err(DecError::TooCoarse(n));
        }
        Ok(Self { m, n })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn num_vertices(&self) -> usize {
        self.n.pow(self.m as u32)
    }

    /// Direction sets of size `k`, in lexicographic order.
    pub fn direction_sets(&self, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..m {
                cur.push(i);
                rec(i + 1, m, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= self.m {
            rec(0, self.m, k, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn num_cells(&self, k: usize) -> usize {
        self.direction_sets(k).len() * self.num_vertices()
    }

    pub fn check_degree(&self, k: usize) -> Result<(), DecError> {
        if k > self.m {
            return Err(DecError::DegreeOutOfRange {
                degree: k,
                max: self.m,
            });
        }
        Ok(())
    }

    pub fn vertex_coords(&self, v: usize) -> Vec<usize> {
        (0..self.m).map(|i| (v / self.n.pow(i as u32)) % self.n).collect()
    }

    pub fn vertex_position(&self, v: usize) -> Vec<f64> {
        self.vertex_coords(v)
            .into_iter()
            .map(|c| c as f64 * self.h())
            .collect()
    }

    /// `v + e_axis` with periodic wrap.
    pub fn shift(&self, v: usize, axis: usize) -> usize {
        let stride = self.n.pow(axis as u32);
        let c = (v / stride) % self.n;
        if c + 1 == self.n {
            v + stride - self.n * stride
        } else {
            v + stride
        }
    }

    /// `v + Σ_{i∈axes} e_i`.
    pub fn shift_by(&self, v: usize, axes: &[usize]) -> usize {
        axes.iter().fold(v, |w, &a| self.shift(w, a))
    }

    pub fn cell_index(&self, set_rank: usize, anchor: usize) -> usize {
        set_rank * self.num_vertices() + anchor
    }

    /// Anchor vertex of cell `c` of degree `k`.
    pub fn anchor(&self, c: usize) -> usize {
        c % self.num_vertices()
    }

    /// Iterates `(cell index, anchor, direction set)` over the `k`-cells.
    pub fn cells(&self, k: usize) -> impl Iterator<Item = (usize, usize, Vec<usize>)> + '_ {
        let nv = self.num_vertices();
        self.direction_sets(k)
            .into_iter()
            .enumerate()
            .flat_map(move |(r, set)| (0..nv).map(move |v| (r * nv + v, v, set.clone())))
    }

    fn set_rank(&self, set: &[usize]) -> usize {
        self.direction_sets(set.len())
            .iter()
            .position(|s| s == set)
            .expect("valid direction set")
    }

    /// Index of cell `(v, D)`.
    pub fn cell(&self, anchor: usize, set: &[usize]) -> usize {
        self.cell_index(self.set_rank(set), anchor)
    }
}

/// One value per oriented `k`-cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub grid: PeriodicGrid,
    pub degree: usize,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn zeros(grid: PeriodicGrid, degree: usize) -> Self {
        Self {
            grid,
            degree,
            values: vec![0.0; grid.num_cells(degree)],
        }
    }

    pub fn from_values(grid: PeriodicGrid, degree: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.num_cells(degree), "cochain length");
        Self {
            grid,
            degree,
            values,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }
}
