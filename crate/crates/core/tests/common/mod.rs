//! Floating-point linear algebra oracles for small integer complexes,
//! independent of the exact rational elimination in the library.

#![allow(dead_code)]

use cone_morse::complex_core::{ChainMapPair, RationalMatrix};
use nalgebra::DMatrix;
use num::ToPrimitive;

const RANK_TOL: f64 = 1e-9;

pub fn to_dense(m: &RationalMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_f64().unwrap())
}

pub fn rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max().max(1.0);
    sv.iter().filter(|&&s| s > RANK_TOL * top).count()
}

/// Orthonormal kernel basis as columns, from the eigenvectors of `mᵀm`.
pub fn kernel(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols();
    if m.nrows() == 0 || n == 0 {
        return DMatrix::identity(n, n);
    }
    let eig = (m.transpose() * m).symmetric_eigen();
    let cols: Vec<_> = (0..n)
        .filter(|&j| eig.eigenvalues[j].abs() < RANK_TOL)
        .map(|j| eig.eigenvectors.column(j).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

fn sign(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Cone differential from degree `k`, built directly from the blocks
/// `[[∂_k, 𝒞_{k−ℓ+1}], [0, (−1)^{ℓ−1} ∂_{k−ℓ+1}]]`.
pub fn cone_block(pair: &ChainMapPair, k: i32) -> DMatrix<f64> {
    let s = k - pair.ell() as i32 + 1;
    let (a, b) = (pair.dim(k), pair.dim(s));
    let (c, d) = (pair.dim(k + 1), pair.dim(s + 1));
    let mut out = DMatrix::zeros(c + d, a + b);
    out.view_mut((0, 0), (c, a)).copy_from(&to_dense(&pair.partial(k)));
    out.view_mut((0, a), (c, b)).copy_from(&to_dense(&pair.cone(s)));
    let lower = to_dense(&pair.partial(s)) * sign(pair.ell() as i32 - 1);
    out.view_mut((c, a), (d, b)).copy_from(&lower);
    out
}

pub fn cone_degrees(pair: &ChainMapPair) -> std::ops::RangeInclusive<i32> {
    let m = pair.top_degree();
    -1..=m.max(m + pair.ell() as i32 - 1)
}

/// `dim H^k` of the cone.
pub fn cone_betti(pair: &ChainMapPair) -> Vec<usize> {
    cone_degrees(pair)
        .map(|k| {
            let out = cone_block(pair, k);
            let dim = out.ncols();
            dim - rank(&out) - rank(&cone_block(pair, k - 1))
        })
        .collect()
}

/// Classical `b_k`, zero outside `0..=m`.
pub fn betti(pair: &ChainMapPair, k: i32) -> usize {
    if k < 0 || k > pair.top_degree() {
        return 0;
    }
    let dk = to_dense(&pair.partial(k));
    pair.dim(k) - rank(&dk) - rank(&to_dense(&pair.partial(k - 1)))
}

/// Rank of `𝒞` on cohomology from degree `j`: `rank[𝒞 Z_j | B_{j+ℓ}] − rank B_{j+ℓ}`.
pub fn induced_rank(pair: &ChainMapPair, j: i32) -> usize {
    if j < 0 || j > pair.top_degree() {
        return 0;
    }
    let z = kernel(&to_dense(&pair.partial(j)));
    let cz = to_dense(&pair.cone(j)) * z;
    let b = to_dense(&pair.partial(j + pair.ell() as i32 - 1));
    let joined = DMatrix::from_fn(cz.nrows(), cz.ncols() + b.ncols(), |i, c| {
        if c < cz.ncols() {
            cz[(i, c)]
        } else {
            b[(i, c - cz.ncols())]
        }
    });
    rank(&joined) - rank(&b)
}

/// `(coker, ker)` of the cone-map decomposition per cone degree.
pub fn decomposition(pair: &ChainMapPair) -> Vec<(usize, usize)> {
    let ell = pair.ell() as i32;
    cone_degrees(pair)
        .map(|k| {
            let coker = betti(pair, k) - induced_rank(pair, k - ell);
            let ker = betti(pair, k - ell + 1) - induced_rank(pair, k - ell + 1);
            (coker, ker)
        })
        .collect()
}
