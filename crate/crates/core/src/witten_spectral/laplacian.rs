use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::ConeOperator;
use super::eigen::SymMatrix;
use crate::dec_grid::{adjoint_weighted, GridOperator};

/// `𝔻²_ST` on degree `q`, held in the symmetric frame `u = M^{1/2} v`:
/// `A = BᵀB + CCᵀ` with `B = M_{q+1}^{1/2} d_q M_q^{-1/2}` and
/// `C = M_q^{1/2} d_{q−1} M_{q−1}^{-1/2}`.
#[derive(Debug, Clone)]
pub struct DiracLaplacian {
    pub degree: i32,
    pub sqrt_mass: Vec<f64>,
    /// `B`, degree `q` to `q + 1`.
    pub up: GridOperator,
    /// `Cᵀ`, degree `q` to `q − 1`.
    pub down: GridOperator,
    up_t: GridOperator,
    down_t: GridOperator,
    pub matrix: SymMatrix,
    /// Mass-frame operators kept for the adjoint-based symmetry check.
    d_up: GridOperator,
    d_down: GridOperator,
    mass: Vec<f64>,
    mass_below: Vec<f64>,
    mass_above: Vec<f64>,
}

fn symmetric_frame(op: &GridOperator, dom_mass: &[f64], cod_mass: &[f64]) -> GridOperator {
    let left: Vec<f64> = cod_mass.iter().map(|m| m.sqrt()).collect();
    let right: Vec<f64> = dom_mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    op.scale_rows_cols(&left, &right)
}

/// Adds `opᵀ op` into `a`.
fn add_gram(a: &mut SymMatrix, op: &GridOperator) {
    for r in 0..op.nrows() {
        let row: Vec<(usize, f64)> = op.row(r).collect();
        for &(i, x) in &row {
            for &(j, y) in &row {
                a.add(i, j, x * y);
            }
        }
    }
}

pub fn dirac_laplacian(cone: &ConeOperator, q: i32) -> DiracLaplacian {
    let mass = cone.mass(q);
    let mass_below = cone.mass(q - 1);
    let mass_above = cone.mass(q + 1);
    let d_up = cone.op(q);
    let d_down = cone.op(q - 1);
    let up = symmetric_frame(&d_up, &mass, &mass_above);
    let down = symmetric_frame(&d_down, &mass_below, &mass).transpose();
    let mut matrix = SymMatrix::zeros(mass.len());
    add_gram(&mut matrix, &up);
    add_gram(&mut matrix, &down);
    DiracLaplacian {
        degree: q,
        sqrt_mass: mass.iter().map(|m| m.sqrt()).collect(),
        up_t: up.transpose(),
        down_t: down.transpose(),
        up,
        down,
        matrix,
        d_up,
        d_down,
        mass,
        mass_below,
        mass_above,
    }
}

impl DiracLaplacian {
    pub fn dim(&self) -> usize {
        self.sqrt_mass.len()
    }

    /// `A u` through the sparse factors.
    pub fn apply_sym(&self, u: &[f64]) -> Vec<f64> {
        let a = self.up_t.apply(&self.up.apply(u));
        let b = self.down_t.apply(&self.down.apply(u));
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }

    /// `‖B u‖² + ‖Cᵀ u‖²`, the Rayleigh quotient of a unit `u` without
    /// forming `A`.
    pub fn factored_quadratic(&self, u: &[f64]) -> f64 {
        let sq = |v: Vec<f64>| v.iter().map(|x| x * x).sum::<f64>();
        sq(self.up.apply(u)) + sq(self.down.apply(u))
    }

    /// `𝔻² v = d*d v + d d* v` in the mass frame, built from mass adjoints.
    pub fn apply_mass_frame(&self, v: &[f64]) -> Vec<f64> {
        let up_adj = adjoint_weighted(&self.d_up, &self.mass, &self.mass_above);
        let down_adj = adjoint_weighted(&self.d_down, &self.mass_below, &self.mass);
        let a = up_adj.apply(&self.d_up.apply(v));
        let b = self.d_down.apply(&down_adj.apply(v));
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }

    /// `max |⟨𝔻²x, y⟩_M − ⟨x, 𝔻²y⟩_M| / (‖𝔻²x‖‖y‖ + ‖x‖‖𝔻²y‖)` over a few
    /// seeded random pairs.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let ip = |a: &[f64], b: &[f64]| -> f64 {
            a.iter().zip(b).zip(&self.mass).map(|((x, y), m)| m * x * y).sum()
        };
        let mut worst = 0.0_f64;
        for _ in 0..3 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (lx, ly) = (self.apply_mass_frame(&x), self.apply_mass_frame(&y));
            let scale = ip(&lx, &lx).sqrt() * ip(&y, &y).sqrt() + ip(&x, &x).sqrt() * ip(&ly, &ly).sqrt();
            if scale > 0.0 {
                worst = worst.max((ip(&lx, &y) - ip(&x, &ly)).abs() / scale);
            }
        }
        worst
    }
}
