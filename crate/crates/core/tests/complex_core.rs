mod common;

use cone_morse::complex_core::{
    decompose_cohomology, mapping_cone, morse_equalities, morse_inequalities, random_pair,
    ratio, ChainMapPair, ComplexError, RandomPairConfig, RationalMatrix,
};
use cone_morse::morse_model::{builtin, validate};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair_of(name: &str) -> ChainMapPair {
    validate(&builtin(name).unwrap()).unwrap().pair
}

fn seeded(seed: u64) -> ChainMapPair {
    random_pair(&mut ChaCha8Rng::seed_from_u64(seed), &RandomPairConfig::default())
}

#[test]
fn sphere_cone_cohomology() {
    let pair = pair_of("s2_height_area");
    let cone = mapping_cone(&pair).unwrap();
    assert_eq!(cone.degrees().collect::<Vec<_>>(), vec![-1, 0, 1, 2, 3]);
    assert_eq!(cone.cohomology_dims(), vec![0, 1, 0, 0, 1]);
    assert_eq!(common::cone_betti(&pair), vec![0, 1, 0, 0, 1]);
    let split: Vec<(usize, usize)> = decompose_cohomology(&pair)
        .unwrap()
        .iter()
        .filter(|e| e.degree >= 0)
        .map(|e| (e.coker, e.ker))
        .collect();
    assert_eq!(split, vec![(1, 0), (0, 0), (0, 0), (0, 1)]);
}

#[test]
fn torus_variants() {
    let dx = pair_of("t2_cos_dx");
    assert_eq!(mapping_cone(&dx).unwrap().cohomology_dims(), vec![0, 1, 2, 1]);
    let zero = pair_of("t2_cos_zero");
    assert_eq!(mapping_cone(&zero).unwrap().cohomology_dims(), vec![0, 2, 4, 2]);
}

#[test]
fn scaling_the_cone_map_keeps_cohomology() {
    let pair = pair_of("t2_cos_dx");
    let scaled = pair.with_scaled_cone(&ratio(-7, 3));
    assert_eq!(
        mapping_cone(&scaled).unwrap().cohomology_dims(),
        mapping_cone(&pair).unwrap().cohomology_dims()
    );
}

#[test]
fn broken_anticommutation_is_rejected() {
    // ℓ = 0 with 𝒞 = diag(1, 2) does not commute with ∂ = [1].
    let err = ChainMapPair::new(
        vec![1, 1],
        0,
        vec![RationalMatrix::from_i64_rows(&[vec![1]]), RationalMatrix::zeros(0, 1)],
        vec![
            RationalMatrix::from_i64_rows(&[vec![1]]),
            RationalMatrix::from_i64_rows(&[vec![2]]),
        ],
    )
    .unwrap_err();
    assert!(matches!(err, ComplexError::InvalidCone { .. }));
}

#[test]
fn nonnilpotent_boundary_is_rejected() {
    let err = ChainMapPair::new(
        vec![1, 1, 1],
        0,
        vec![
            RationalMatrix::from_i64_rows(&[vec![1]]),
            RationalMatrix::from_i64_rows(&[vec![2]]),
            RationalMatrix::zeros(0, 1),
        ],
        vec![
            RationalMatrix::zeros(1, 1),
            RationalMatrix::zeros(1, 1),
            RationalMatrix::zeros(1, 1),
        ],
    )
    .unwrap_err();
    assert_eq!(err, ComplexError::Nilpotency { degree: 0, row: 0, col: 0 });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_betti_matches_oracle(seed in 0u64..1_000_000) {
        let pair = seeded(seed);
        let cone = mapping_cone(&pair).unwrap();
        prop_assert_eq!(cone.cohomology_dims(), common::cone_betti(&pair));
    }

    #[test]
    fn decomposition_matches_oracle(seed in 0u64..1_000_000) {
        let pair = seeded(seed);
        let lib: Vec<(usize, usize)> = decompose_cohomology(&pair)
            .unwrap()
            .iter()
            .map(|e| (e.coker, e.ker))
            .collect();
        prop_assert_eq!(lib, common::decomposition(&pair));
    }

    #[test]
    fn rank_identities_hold(seed in 0u64..1_000_000) {
        let pair = seeded(seed);
        let mu = pair.mu().to_vec();
        prop_assert!(morse_equalities(&pair, &mu).unwrap().pass);
        prop_assert!(morse_inequalities(&pair, &mu).unwrap().pass);
    }

    #[test]
    fn euler_characteristic_of_cone(seed in 0u64..1_000_000) {
        let pair = seeded(seed);
        let cone = mapping_cone(&pair).unwrap();
        let shift = pair.ell() as i32 - 1;
        // χ(cone) = Σ (−1)^k (μ_k + μ_{k−ℓ+1}).
        let expected: i64 = cone
            .degrees()
            .map(|k| {
                let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                s * (pair.dim(k) + pair.dim(k - shift)) as i64
            })
            .sum();
        prop_assert_eq!(cone.euler_characteristic(), expected);
    }
}

#[test]
fn mismatched_mu_is_a_grading_error() {
    let pair = pair_of("t2_cos_dx");
    assert!(matches!(
        morse_equalities(&pair, &[1, 1, 1]),
        Err(ComplexError::Grading(_))
    ));
}
