/// Sparse real matrix in compressed row form.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOperator {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<f64>,
}

impl GridOperator {
    /// Sums duplicate `(row, col)` pairs; exact zeros are kept out.
    pub fn from_triplets(nrows: usize, ncols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "entry ({r}, {c}) outside {nrows}x{ncols}");
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|t| t.2 != 0.0);
        let mut row_ptr = vec![0; nrows + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        let col_idx = merged.iter().map(|t| t.1).collect();
        let vals = merged.iter().map(|t| t.2).collect();
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self::from_triplets(nrows, ncols, Vec::new())
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self::from_triplets(
            d.len(),
            d.len(),
            d.iter().enumerate().map(|(i, &v)| (i, i, v)).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// `(col, value)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.vals[range].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols, "operand length");
        (0..self.nrows)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.ncols,
            self.nrows,
            self.triplets().map(|(i, j, v)| (j, i, v)).collect(),
        )
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "composition shape");
        let mut out = Vec::new();
        for i in 0..self.nrows {
            for (k, a) in self.row(i) {
                out.extend(rhs.row(k).map(|(j, b)| (i, j, a * b)));
            }
        }
        Self::from_triplets(self.nrows, rhs.ncols, out)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            vals: self.vals.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// `diag(left) · self · diag(right)`.
    pub fn scale_rows_cols(&self, left: &[f64], right: &[f64]) -> Self {
        assert_eq!(left.len(), self.nrows);
        assert_eq!(right.len(), self.ncols);
        let mut out = self.clone();
        for i in 0..self.nrows {
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                out.vals[p] *= left[i] * right[self.col_idx[p]];
            }
        }
        out
    }

    /// `[[a, b], [c, d]]`; any block may be given as `None` for zero.
    pub fn block(
        rows: (usize, usize),
        cols: (usize, usize),
        blocks: [Option<&Self>; 4],
    ) -> Self {
        let mut t = Vec::new();
        let offsets = [(0, 0), (0, cols.0), (rows.0, 0), (rows.0, cols.0)];
        let shapes = [(rows.0, cols.0), (rows.0, cols.1), (rows.1, cols.0), (rows.1, cols.1)];
        for ((b, (ro, co)), shape) in blocks.iter().zip(offsets).zip(shapes) {
            if let Some(b) = b {
                assert_eq!((b.nrows, b.ncols), shape, "block shape");
                t.extend(b.triplets().map(|(i, j, v)| (i + ro, j + co, v)));
            }
        }
        Self::from_triplets(rows.0 + rows.1, cols.0 + cols.1, t)
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.nrows * self.ncols];
        for (i, j, v) in self.triplets() {
            d[i * self.ncols + j] = v;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_sum_and_zeros_drop() {
        let op = GridOperator::from_triplets(2, 2, vec![(0, 1, 1.0), (0, 1, 2.0), (1, 0, 1.0), (1, 0, -1.0)]);
        assert_eq!(op.nnz(), 1);
        assert_eq!(op.get(0, 1), 3.0);
        assert_eq!(op.apply(&[0.0, 0.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn compose_and_transpose() {
        let a = GridOperator::from_triplets(2, 3, vec![(0, 0, 1.0), (0, 2, 2.0), (1, 1, -1.0)]);
        let b = a.transpose();
        let ab = a.compose(&b);
        assert_eq!(ab.to_dense(), vec![5.0, 0.0, 0.0, 1.0]);
        assert_eq!(b.transpose(), a);
    }

    #[test]
    fn block_layout() {
        let i = GridOperator::identity(1);
        let b = GridOperator::block((1, 1), (1, 1), [Some(&i), None, None, Some(&i.scaled(2.0))]);
        assert_eq!(b.to_dense(), vec![1.0, 0.0, 0.0, 2.0]);
    }
}
