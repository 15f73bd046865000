use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use rand_chacha::ChaCha8Rng;

use super::{Cochain, DecError, GridOperator, PeriodicGrid};

/// Cubical coboundary `d_k`:
/// `(dβ)(v, D) = Σ_{i∈D} (−1)^{pos(i)} [β(v + e_i, D∖i) − β(v, D∖i)]`.
pub fn d_op(grid: &PeriodicGrid, k: usize) -> Result<GridOperator, DecError> {
    if k >= grid.dim() {
        return Err(DecError::DegreeOutOfRange {
            degree: k,
            max: grid.dim().saturating_sub(1),
        });
    }
    let mut t = Vec::new();
    for (row, v, set) in grid.cells(k + 1) {
        for (pos, &axis) in set.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            let face: Vec<usize> = set.iter().copied().filter(|&a| a != axis).collect();
            t.push((row, grid.cell(grid.shift(v, axis), &face), sign));
            t.push((row, grid.cell(v, &face), -sign));
        }
    }
    Ok(GridOperator::from_triplets(
        grid.num_cells(k + 1),
        grid.num_cells(k),
        t,
    ))
}

/// Diagonal mass `h^{m−2k}` per `k`-cell: a cell value `c·h^k` of a unit
/// constant form then has unit squared norm over the torus.
pub fn mass_weights(grid: &PeriodicGrid, k: usize) -> Vec<f64> {
    let w = grid.h().powi(grid.dim() as i32 - 2 * k as i32);
    vec![w; grid.num_cells(k)]
}

pub fn mass_inner(grid: &PeriodicGrid, k: usize) -> GridOperator {
    GridOperator::diagonal(&mass_weights(grid, k))
}

pub fn inner(grid: &PeriodicGrid, k: usize, a: &[f64], b: &[f64]) -> f64 {
    let w = grid.h().powi(grid.dim() as i32 - 2 * k as i32);
    w * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
}

pub fn norm(grid: &PeriodicGrid, k: usize, a: &[f64]) -> f64 {
    inner(grid, k, a, a).sqrt()
}

/// Vertex values `f(v)` at positions `v_i · h`.
pub fn sample_zero_form(grid: &PeriodicGrid, f: impl Fn(&[f64]) -> f64) -> Cochain {
    let values = (0..grid.num_vertices())
        .map(|v| f(&grid.vertex_position(v)))
        .collect();
    Cochain::from_values(*grid, 0, values)
}

/// Constant-coefficient form `Σ_D c_D dx_D`, coefficients listed in the
/// lexicographic order of the direction sets `D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantForm {
    pub m: usize,
    pub degree: usize,
    pub coeffs: Vec<f64>,
}

impl ConstantForm {
    pub fn new(m: usize, degree: usize, coeffs: Vec<f64>) -> Self {
        Self { m, degree, coeffs }
    }

    pub fn scalar(m: usize, c: f64) -> Self {
        Self::new(m, 0, vec![c])
    }

    /// `c · dx_axis`.
    pub fn axis(m: usize, axis: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; m];
        coeffs[axis] = c;
        Self::new(m, 1, coeffs)
    }

    /// `c · dx_0 ∧ … ∧ dx_{m−1}`.
    pub fn volume(m: usize, c: f64) -> Self {
        Self::new(m, m, vec![c])
    }

    pub fn zero(m: usize, degree: usize) -> Self {
        let count = binomial(m, degree);
        Self::new(m, degree, vec![0.0; count])
    }

    /// Pointwise norm `√g(ω, ω)` for the flat metric.
    pub fn pointwise_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Integral of a constant form over each cell: `c_D · h^k`.
pub fn sample_form(grid: &PeriodicGrid, form: &ConstantForm) -> Result<Cochain, DecError> {
    grid.check_degree(form.degree)?;
    let expected = binomial(grid.dim(), form.degree);
    if form.m != grid.dim() || form.coeffs.len() != expected {
        return Err(DecError::FormShape {
            m: grid.dim(),
            degree: form.degree,
            expected,
            found: form.coeffs.len(),
        });
    }
    let scale = grid.h().powi(form.degree as i32);
    let nv = grid.num_vertices();
    let values = form
        .coeffs
        .iter()
        .flat_map(|c| std::iter::repeat(c * scale).take(nv))
        .collect();
    Ok(Cochain::from_values(*grid, form.degree, values))
}

/// Sign of the shuffle putting `h` followed by `k` into increasing order.
fn shuffle_sign(h: &[usize], k: &[usize]) -> f64 {
    let inversions = h
        .iter()
        .map(|a| k.iter().filter(|&&b| b < *a).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Subsets of `set` with `size` elements, in lexicographic order.
fn subsets(set: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if set.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in set.iter().enumerate() {
        for mut rest in subsets(&set[i + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `β ↦ ω ∪ β` on `k`-cochains, without checks:
/// `(ω∪β)(v, D) = Σ_{H⊔K=D} ε(H,K) ω(v, H) β(v + e_H, K)`.
fn cup_matrix(grid: &PeriodicGrid, omega: &Cochain, k: usize) -> GridOperator {
    let ell = omega.degree;
    let rows = grid.num_cells(k + ell);
    let mut t = Vec::new();
    for (row, v, set) in grid.cells(k + ell) {
        for h in subsets(&set, ell) {
            let rest: Vec<usize> = set.iter().copied().filter(|a| !h.contains(a)).collect();
            let w = omega.values[grid.cell(v, &h)];
            if w != 0.0 {
                let col = grid.cell(grid.shift_by(v, &h), &rest);
                t.push((row, col, shuffle_sign(&h, &rest) * w));
            }
        }
    }
    GridOperator::from_triplets(rows, grid.num_cells(k), t)
}

const LEIBNIZ_SAMPLES: usize = 3;
const LEIBNIZ_TOL: f64 = 1e-12;

/// Cup product with a closed cochain `ω`, acting on `k`-cochains. The
/// Leibniz identity `d(ω∪β) = (−1)^ℓ ω∪dβ` is checked on random `β`.
pub fn cup_with(grid: &PeriodicGrid, omega: &Cochain, k: usize) -> Result<GridOperator, DecError> {
    grid.check_degree(k)?;
    grid.check_degree(omega.degree)?;
    let ell = omega.degree;
    let scale = omega.max_abs().max(f64::MIN_POSITIVE);
    if ell < grid.dim() {
        let defect = d_op(grid, ell)?
            .apply(&omega.values)
            .iter()
            .fold(0.0_f64, |a, x| a.max(x.abs()));
        if defect > 1e-12 * scale {
            return Err(DecError::NotClosed { defect });
        }
    }
    let op = cup_matrix(grid, omega, k);
    if k + ell < grid.dim() {
        let d_top = d_op(grid, k + ell)?;
        let next = cup_matrix(grid, omega, k + 1);
        let d_k = d_op(grid, k)?;
        let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..LEIBNIZ_SAMPLES {
            let beta: Vec<f64> = (0..op.ncols()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let lhs = d_top.apply(&op.apply(&beta));
            let rhs = next.apply(&d_k.apply(&beta));
            let defect = lhs
                .iter()
                .zip(&rhs)
                .map(|(a, b)| (a - sign * b).powi(2))
                .sum::<f64>()
                .sqrt();
            let size = beta.iter().map(|x| x * x).sum::<f64>().sqrt();
            if defect > LEIBNIZ_TOL * size * scale.max(1.0) {
                return Err(DecError::Leibniz { defect });
            }
        }
    }
    Ok(op)
}

/// `M_dom^{-1} · opᵀ · M_cod` for diagonal masses.
pub fn adjoint_weighted(op: &GridOperator, dom_mass: &[f64], cod_mass: &[f64]) -> GridOperator {
    let inv: Vec<f64> = dom_mass.iter().map(|m| 1.0 / m).collect();
    op.transpose().scale_rows_cols(&inv, cod_mass)
}

/// Mass adjoint of an operator from `k_dom`-cochains to `k_cod`-cochains.
pub fn adjoint(grid: &PeriodicGrid, op: &GridOperator, k_dom: usize, k_cod: usize) -> GridOperator {
    adjoint_weighted(op, &mass_weights(grid, k_dom), &mass_weights(grid, k_cod))
}
