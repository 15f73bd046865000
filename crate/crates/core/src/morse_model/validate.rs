use std::collections::{HashMap, HashSet};

use super::{MapKind, MorseData, SparseEntry, ValidationError};
use crate::complex_core::{rat, sign, ChainMapPair, RationalMatrix};

/// A dataset that passed validation, with its assembled matrices.
#[derive(Debug, Clone)]
pub struct ValidatedMorse {
    pub pair: ChainMapPair,
    pub mu: Vec<usize>,
    /// Point ids per index, in basis order.
    pub basis: Vec<Vec<String>>,
}

struct Layout<'a> {
    index: HashMap<&'a str, usize>,
    slot: HashMap<&'a str, usize>,
    basis: Vec<Vec<String>>,
}

impl Layout<'_> {
    fn dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }
}

fn layout(data: &MorseData) -> Result<Layout<'_>, ValidationError> {
    let mut seen = HashSet::new();
    let mut index = HashMap::new();
    let mut slot = HashMap::new();
    let mut basis = vec![Vec::new(); data.manifold_dim + 1];
    for p in &data.points {
        if !seen.insert(p.id.as_str()) {
            return Err(ValidationError::DuplicateId(p.id.clone()));
        }
        if p.index > data.manifold_dim {
            return Err(ValidationError::IndexOutOfRange {
                id: p.id.clone(),
                index: p.index,
                manifold_dim: data.manifold_dim,
            });
        }
        index.insert(p.id.as_str(), p.index);
        slot.insert(p.id.as_str(), basis[p.index].len());
        basis[p.index].push(p.id.clone());
    }
    Ok(Layout { index, slot, basis })
}

/// Per-degree matrices of one sparse map of degree `gap`.
fn assemble(
    entries: &[SparseEntry],
    kind: MapKind,
    gap: usize,
    layout: &Layout<'_>,
    top: usize,
) -> Result<Vec<RationalMatrix>, ValidationError> {
    let mut mats: Vec<RationalMatrix> = (0..=top)
        .map(|k| RationalMatrix::zeros(layout.dim(k + gap), layout.dim(k)))
        .collect();
    let mut seen = HashSet::new();
    for e in entries {
        let lookup = |id: &str| {
            layout
                .index
                .get(id)
                .copied()
                .ok_or_else(|| ValidationError::UnknownPoint {
                    map: kind,
                    to: e.to.clone(),
                    from: e.from.clone(),
                    missing: id.to_string(),
                })
        };
        let (ti, fi) = (lookup(&e.to)?, lookup(&e.from)?);
        if ti != fi + gap {
            return Err(ValidationError::GradingViolation {
                map: kind,
                to: e.to.clone(),
                from: e.from.clone(),
                to_index: ti,
                from_index: fi,
                expected: gap,
            });
        }
        if !seen.insert((e.to.as_str(), e.from.as_str())) {
            return Err(ValidationError::DuplicateEntry {
                map: kind,
                to: e.to.clone(),
                from: e.from.clone(),
            });
        }
        mats[fi].set(layout.slot[e.to.as_str()], layout.slot[e.from.as_str()], e.coeff.clone());
    }
    Ok(mats)
}

/// Assembles `∂` and `𝒞` in declaration order and checks `∂² = 0` and
/// `∂𝒞 = (−1)^ℓ 𝒞∂` exactly.
pub fn validate(data: &MorseData) -> Result<ValidatedMorse, ValidationError> {
    let layout = layout(data)?;
    let m = data.manifold_dim;
    let partial = assemble(&data.boundary, MapKind::Boundary, 1, &layout, m)?;
    let cone = assemble(&data.cup, MapKind::Cup, data.ell, &layout, m)?;

    let zero = |r, c| RationalMatrix::zeros(r, c);
    let partial_at = |k: usize| {
        partial
            .get(k)
            .cloned()
            .unwrap_or_else(|| zero(layout.dim(k + 1), layout.dim(k)))
    };
    for k in 0..m {
        let sq = partial_at(k + 1).mul(&partial_at(k));
        if let Some((r, c)) = sq.first_nonzero() {
            return Err(ValidationError::NilpotencyViolation {
                to: layout.basis[k + 2][r].clone(),
                from: layout.basis[k][c].clone(),
            });
        }
    }
    let s = rat(sign(data.ell as i32));
    for k in 0..=m {
        let lhs = partial_at(k + data.ell).mul(&cone[k]);
        let next = cone
            .get(k + 1)
            .cloned()
            .unwrap_or_else(|| zero(layout.dim(k + 1 + data.ell), layout.dim(k + 1)));
        let rhs = next.mul(&partial_at(k)).scaled(&s);
        if !lhs.sub(&rhs).is_zero() {
            return Err(ValidationError::AnticommutationViolation { degree: k as i32 });
        }
    }

    let mu: Vec<usize> = (0..=m).map(|k| layout.dim(k)).collect();
    let pair = ChainMapPair::new(mu.clone(), data.ell, partial, cone)
        .expect("checked identities imply a valid pair");
    Ok(ValidatedMorse {
        pair,
        mu,
        basis: layout.basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::ratio;
    use crate::morse_model::{builtin, CriticalPoint, BUILTIN_NAMES};

    fn point(id: &str, index: usize) -> CriticalPoint {
        CriticalPoint {
            id: id.into(),
            index,
            value: None,
        }
    }

    fn entry(to: &str, from: &str, c: i64) -> SparseEntry {
        SparseEntry {
            to: to.into(),
            from: from.into(),
            coeff: ratio(c, 1),
        }
    }

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            validate(&builtin(name).unwrap()).unwrap();
        }
        assert_eq!(validate(&builtin("s2_height_area").unwrap()).unwrap().mu, vec![1, 0, 1]);
        assert_eq!(validate(&builtin("t2_cos_dx").unwrap()).unwrap().mu, vec![1, 2, 1]);
    }

    #[test]
    fn equal_index_boundary_is_grading_violation() {
        let mut data = builtin("t2_cos_zero").unwrap();
        data.boundary.push(entry("s_x", "s_y", 1));
        assert!(matches!(
            validate(&data),
            Err(ValidationError::GradingViolation {
                map: MapKind::Boundary,
                ..
            })
        ));
    }

    #[test]
    fn nilpotency_names_pair() {
        let data = MorseData {
            name: "chain".into(),
            manifold_dim: 2,
            ell: 0,
            points: vec![point("a", 0), point("b", 1), point("c", 2)],
            boundary: vec![entry("b", "a", 1), entry("c", "b", 1)],
            cup: vec![],
        };
        assert_eq!(
            validate(&data).unwrap_err(),
            ValidationError::NilpotencyViolation {
                to: "c".into(),
                from: "a".into()
            }
        );
    }

    #[test]
    fn anticommutation_reports_degree() {
        let data = MorseData {
            name: "twist".into(),
            manifold_dim: 1,
            ell: 0,
            points: vec![point("a", 0), point("b", 1)],
            boundary: vec![entry("b", "a", 1)],
            cup: vec![entry("a", "a", 1), entry("b", "b", 2)],
        };
        assert_eq!(
            validate(&data).unwrap_err(),
            ValidationError::AnticommutationViolation { degree: 0 }
        );
    }

    #[test]
    fn unknown_and_duplicate_references() {
        let mut data = builtin("t2_cos_zero").unwrap();
        data.cup.push(entry("s_x", "nowhere", 1));
        assert!(matches!(validate(&data), Err(ValidationError::UnknownPoint { .. })));

        let mut data = builtin("t2_cos_dx").unwrap();
        data.cup.push(entry("s_x", "m", 3));
        assert!(matches!(validate(&data), Err(ValidationError::DuplicateEntry { .. })));

        let mut data = builtin("t2_cos_dx").unwrap();
        data.points.push(point("m", 0));
        assert_eq!(validate(&data).unwrap_err(), ValidationError::DuplicateId("m".into()));

        let mut data = builtin("t2_cos_dx").unwrap();
        data.points.push(point("z", 3));
        assert!(matches!(validate(&data), Err(ValidationError::IndexOutOfRange { .. })));
    }
}
