use super::block::{BlockCochain, BlockSpace};
use super::dd::Dd;
use super::params::{scaling_map, DeformParams, ScalingMap, ScalingMode};
use super::SpectralError;
use crate::dec_grid::{cup_with, d_op, Cochain, GridOperator, PeriodicGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConeOptions {
    /// Force a scaling mode instead of choosing from `T · max|f|`.
    pub mode: Option<ScalingMode>,
    /// Drop the `ω` block, the `S → ∞` limit.
    pub drop_cup: bool,
}

/// Deformed mapping cone differential `ϱ_ST^{-1} d^ω ϱ_ST` on the discrete
/// mapping cone, in degrees `−1..=max(m, m+ℓ−1)`.
#[derive(Debug, Clone)]
pub struct ConeOperator {
    pub grid: PeriodicGrid,
    pub ell: usize,
    pub f: Cochain,
    pub omega: Cochain,
    pub params: DeformParams,
    pub mode: ScalingMode,
    spaces: Vec<BlockSpace>,
    undeformed: Vec<GridOperator>,
    deformed: Vec<GridOperator>,
    base: Vec<Vec<f64>>,
    drop_cup: bool,
}

pub fn cone_operator(
    grid: &PeriodicGrid,
    f: &Cochain,
    omega: &Cochain,
    params: &DeformParams,
) -> Result<ConeOperator, SpectralError> {
    cone_operator_with(grid, f, omega, params, ConeOptions::default())
}

/// Undeformed block `[[d, ω∪], [0, (−1)^{ℓ−1} d]]` from degree `q` to `q+1`.
fn undeformed_block(
    grid: &PeriodicGrid,
    omega: &Cochain,
    src: &BlockSpace,
    dst: &BlockSpace,
    drop_cup: bool,
) -> Result<GridOperator, SpectralError> {
    let ell = omega.degree;
    let top_left = match (src.first, dst.first) {
        (Some(k), Some(_)) => Some(d_op(grid, k)?),
        _ => None,
    };
    let top_right = match (src.second, dst.first) {
        (Some(k), Some(_)) if !drop_cup => Some(cup_with(grid, omega, k)?),
        _ => None,
    };
    let sign = if (ell + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let bottom_right = match (src.second, dst.second) {
        (Some(k), Some(_)) => Some(d_op(grid, k)?.scaled(sign)),
        _ => None,
    };
    Ok(GridOperator::block(
        (dst.n_first, dst.n_second),
        (src.n_first, src.n_second),
        [top_left.as_ref(), top_right.as_ref(), None, bottom_right.as_ref()],
    ))
}

pub fn cone_operator_with(
    grid: &PeriodicGrid,
    f: &Cochain,
    omega: &Cochain,
    params: &DeformParams,
    options: ConeOptions,
) -> Result<ConeOperator, SpectralError> {
    if f.degree != 0 {
        return Err(SpectralError::InvalidParams("f must be a 0-cochain".into()));
    }
    let ell = omega.degree;
    let top = grid.dim() as i32 + (ell as i32 - 1).max(0);
    let mode = options
        .mode
        .unwrap_or_else(|| ScalingMode::auto(params.t, f.max_abs()));
    let spaces: Vec<BlockSpace> = (-1..=top + 1).map(|q| BlockSpace::new(grid, ell, q)).collect();
    let maps = spaces
        .iter()
        .map(|s| scaling_map(grid, f, params, s, mode))
        .collect::<Result<Vec<ScalingMap>, _>>()?;
    let mut undeformed = Vec::new();
    let mut deformed = Vec::new();
    for q in 0..spaces.len() - 1 {
        let op = undeformed_block(grid, omega, &spaces[q], &spaces[q + 1], options.drop_cup)?;
        let conj = op
            .triplets()
            .map(|(i, j, v)| (i, j, v * maps[q].transfer(j, &maps[q + 1], i)))
            .collect();
        deformed.push(GridOperator::from_triplets(op.nrows(), op.ncols(), conj));
        undeformed.push(op);
    }
    let base = spaces.iter().map(|s| s.base_values(grid, f)).collect();
    Ok(ConeOperator {
        grid: *grid,
        ell,
        f: f.clone(),
        omega: omega.clone(),
        params: *params,
        mode,
        spaces,
        undeformed,
        deformed,
        base,
        drop_cup: options.drop_cup,
    })
}

impl ConeOperator {
    pub fn min_degree(&self) -> i32 {
        -1
    }

    pub fn max_degree(&self) -> i32 {
        self.spaces.len() as i32 - 3
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.min_degree()..=self.max_degree()
    }

    fn slot(&self, q: i32) -> Option<usize> {
        let i = q + 1;
        (i >= 0 && (i as usize) < self.spaces.len()).then_some(i as usize)
    }

    pub fn space(&self, q: i32) -> BlockSpace {
        self.slot(q)
            .map_or_else(|| BlockSpace::new(&self.grid, self.ell, q), |i| self.spaces[i])
    }

    pub fn dim(&self, q: i32) -> usize {
        self.space(q).dim()
    }

    pub fn mass(&self, q: i32) -> Vec<f64> {
        self.space(q).mass(&self.grid)
    }

    /// `d^ω_ST` from degree `q` to `q + 1`.
    pub fn op(&self, q: i32) -> GridOperator {
        match self.slot(q).filter(|&i| i < self.deformed.len()) {
            Some(i) => self.deformed[i].clone(),
            None => GridOperator::zeros(self.dim(q + 1), self.dim(q)),
        }
    }

    /// The undeformed block operator at degree `q`.
    pub fn undeformed(&self, q: i32) -> GridOperator {
        match self.slot(q).filter(|&i| i < self.undeformed.len()) {
            Some(i) => self.undeformed[i].clone(),
            None => GridOperator::zeros(self.dim(q + 1), self.dim(q)),
        }
    }

    pub fn cup_dropped(&self) -> bool {
        self.drop_cup
    }

    pub fn apply(&self, x: &BlockCochain) -> BlockCochain {
        BlockCochain {
            degree: x.degree + 1,
            values: self.op(x.degree).apply(&x.values),
        }
    }

    /// `d^ω_ST x` with every entry `c · exp(T(f_src − f_dst) − [ω block] ln S)`
    /// evaluated and accumulated in double-double.
    pub fn apply_dd(&self, q: i32, x: &[f64]) -> Vec<Dd> {
        let Some(i) = self.slot(q).filter(|&i| i < self.undeformed.len()) else {
            return vec![Dd::ZERO; self.dim(q + 1)];
        };
        let (src, dst) = (&self.spaces[i], &self.spaces[i + 1]);
        let (fs, fd) = (&self.base[i], &self.base[i + 1]);
        let op = &self.undeformed[i];
        (0..op.nrows())
            .map(|r| {
                op.row(r).fold(Dd::ZERO, |acc, (c, v)| {
                    let mut expo = Dd::diff(fs[c], fd[r]).mul_f64(self.params.t);
                    if src.is_second(c) && !dst.is_second(r) {
                        expo = expo - Dd::from_f64(self.params.log_s);
                    }
                    acc + (expo.exp().mul_f64(v) * Dd::from_f64(x[c]))
                })
            })
            .collect()
    }

    /// `‖d_{q+1} d_q x‖_M / ‖ |d_{q+1}| |d_q| |x| ‖_M`, the defect relative
    /// to the size of the terms that cancel in exact arithmetic.
    pub fn nilpotency_defect(&self, x: &BlockCochain) -> f64 {
        let twice = self.apply(&self.apply(x));
        let abs = |op: GridOperator| {
            let t = op.triplets().map(|(i, j, v)| (i, j, v.abs())).collect();
            GridOperator::from_triplets(op.nrows(), op.ncols(), t)
        };
        let magnitude: Vec<f64> = x.values.iter().map(|v| v.abs()).collect();
        let scale = BlockCochain {
            degree: x.degree + 2,
            values: abs(self.op(x.degree + 1)).apply(&abs(self.op(x.degree)).apply(&magnitude)),
        };
        let mass = self.mass(x.degree + 2);
        let denom = scale.norm(&mass);
        if denom == 0.0 {
            return 0.0;
        }
        twice.norm(&mass) / denom
    }
}
