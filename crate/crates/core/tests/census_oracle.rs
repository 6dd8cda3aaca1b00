use maxclass_core::census::{census_adjoint, census_scalar, stable_quotient_dim, truncation_oracle};
use maxclass_core::cochain::{cohomology_dim, BlockSpec};
use maxclass_core::{AlgebraSpec, Mode};

fn assert_adjoint_grid(alg: AlgebraSpec, degree: usize, grades: std::ops::RangeInclusive<i64>, cap: u32) {
    for k in grades {
        let census = census_adjoint(&alg, degree, k, cap).unwrap();
        let oracle = truncation_oracle(&alg, degree, k, cap, 3).unwrap();
        let labels: Vec<String> = census.labels.iter().map(ToString::to_string).collect();
        assert_eq!(census.dimension, oracle, "{alg} H^{degree}_{k} at cap {cap}: census {labels:?}");
    }
}

#[test]
fn scalar_census_matches_block_ranks() {
    for alg in [AlgebraSpec::M0, AlgebraSpec::M2] {
        for degree in 1..=4 {
            for weight in 0..=24 {
                let census = census_scalar(&alg, degree, weight).unwrap();
                let oracle = cohomology_dim(&BlockSpec::trivial(alg, degree, weight)).unwrap().dimension;
                assert_eq!(census.dimension, oracle, "{alg} H^{degree}_{weight}");
                assert_eq!(census.labels.len(), oracle);
            }
        }
    }
}

#[test]
fn m0_adjoint_census_matches_oracle() {
    for degree in 0..=3 {
        assert_adjoint_grid(AlgebraSpec::M0, degree, -14..=4, 14);
    }
}

#[test]
fn m2_adjoint_census_matches_oracle() {
    for degree in 0..=3 {
        assert_adjoint_grid(AlgebraSpec::M2, degree, -16..=4, 14);
    }
}

#[test]
fn m2_degree_four_equality_cases() {
    // grades where the equality clause at the top target decides membership
    assert_adjoint_grid(AlgebraSpec::M2, 4, -16..=-8, 12);
}

#[test]
fn quotients_stabilize_to_the_census() {
    for degree in 1..=3 {
        for weight in 0..=8 {
            let census = census_scalar(&AlgebraSpec::M0, degree, weight).unwrap().dimension;
            let stable = stable_quotient_dim(&AlgebraSpec::M0, Mode::Trivial, degree, weight, 12).unwrap();
            assert_eq!(Some(census), stable, "H^{degree}_{weight}");
        }
    }
}
