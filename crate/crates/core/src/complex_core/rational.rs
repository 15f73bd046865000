use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar. `BigRational` keeps every value in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Integer matrix from nested rows. All rows must share one length.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j]))
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|x| !x.is_zero())
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&rat(-1))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// 2×2 block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        Self::from_fn(rows, cols, |i, j| {
            let (src, ii, jj) = match (i < a.rows, j < a.cols) {
                (true, true) => (a, i, j),
                (true, false) => (b, i, j - a.cols),
                (false, true) => (c, i - a.rows, j),
                (false, false) => (d, i - a.rows, j - a.cols),
            };
            src.get(ii, jj).clone()
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = &factor * m.get(r, j);
                    if !sub.is_zero() {
                        let v = m.get(i, j) - sub;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse, or `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::block(
            self,
            &Self::identity(n),
            &Self::zeros(0, n),
            &Self::zeros(0, n),
        );
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    /// Solves `self · x = b` when `b` lies in the column space and the
    /// columns are independent; `None` otherwise.
    pub fn solve_unique(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Self::from_columns(self.rows, &[b.to_vec()]);
        let aug = Self::block(self, &rhs, &Self::zeros(0, self.cols), &Self::zeros(0, 1));
        let (red, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.contains(&self.cols) {
            return None;
        }
        Some((0..self.cols).map(|i| red.get(i, self.cols).clone()).collect())
    }

    /// Largest absolute entry, useful for reporting.
    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Rank over the rationals.
pub fn rank_q(m: &RationalMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    m.rref().1.len()
}

/// Basis of the null space, one vector per free column of the reduced row
/// echelon form (in increasing column order).
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = m.rref();
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let mut free = Vec::new();
    for c in 0..m.cols() {
        if pivot_iter.peek() == Some(&&c) {
            pivot_iter.next();
        } else {
            free.push(c);
        }
    }
    for &f in &free {
        let mut v = vec![Rational::zero(); m.cols()];
        v[f] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, f).clone();
        }
        basis.push(v);
    }
    basis
}

/// Basis of the column space: the original columns at pivot positions.
pub fn image_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|c| m.column(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity_and_proportional() {
        assert_eq!(rank_q(&RationalMatrix::identity(3)), 3);
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank_q(&m), 1);
    }

    #[test]
    fn empty_matrices_have_rank_zero() {
        assert_eq!(rank_q(&RationalMatrix::zeros(0, 4)), 0);
        assert_eq!(rank_q(&RationalMatrix::zeros(3, 0)), 0);
        assert_eq!(kernel_basis(&RationalMatrix::zeros(0, 2)).len(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&RationalMatrix::zeros(2, 3)).len(), 3);
        let m = RationalMatrix::from_i64_rows(&[vec![1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]])
            .inverse()
            .is_none());
    }

    #[test]
    fn solve_unique_detects_inconsistency() {
        let a = RationalMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(
            a.solve_unique(&[rat(2), rat(3), rat(5)]),
            Some(vec![rat(2), rat(3)])
        );
        assert_eq!(a.solve_unique(&[rat(2), rat(3), rat(4)]), None);
    }

    #[test]
    fn entries_stay_in_lowest_terms() {
        let m = RationalMatrix::from_fn(1, 1, |_, _| ratio(2, -4));
        assert_eq!(m.get(0, 0).numer(), &BigInt::from(-1));
        assert_eq!(m.get(0, 0).denom(), &BigInt::from(2));
    }
}
