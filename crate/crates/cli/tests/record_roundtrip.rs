use maxclass_cli::record::{coeff_string, BasisEntry, Dimension, ResultRecord, Term};
use maxclass_core::rational::q_frac;
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    (
        proptest::option::of(1u32..40),
        proptest::collection::btree_set(1u32..40, 0..5),
        (-50i64..50).prop_filter("nonzero", |n| *n != 0),
        1i64..30,
    )
        .prop_map(|(l, idx, n, d)| Term {
            module_index: l,
            indices: idx.into_iter().collect(),
            coeff: coeff_string(&q_frac(n, d)),
        })
}

fn record() -> impl Strategy<Value = ResultRecord> {
    (
        proptest::collection::vec(("[a-zA-Z]{1,6}", proptest::collection::vec(term(), 0..6)), 0..4),
        0usize..6,
        -30i64..30,
        proptest::option::of(1u32..60),
        proptest::option::of(0usize..100),
    )
        .prop_map(|(basis, degree, grade, cap, dim)| ResultRecord {
            algebra: "m2".into(),
            mode: "adjoint".into(),
            degree,
            grade,
            cap,
            dimension: dim.map_or_else(Dimension::infinite, Dimension::Finite),
            basis: basis.into_iter().map(|(label, terms)| BasisEntry { label, terms }).collect(),
        })
}

proptest! {
    #[test]
    fn json_roundtrip_is_lossless(r in record()) {
        let text = r.to_json();
        let back = ResultRecord::from_json(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn unreduced_coefficients_are_rejected() {
    let r = ResultRecord {
        algebra: "m0".into(),
        mode: "trivial".into(),
        degree: 1,
        grade: 1,
        cap: None,
        dimension: Dimension::Finite(1),
        basis: vec![BasisEntry {
            label: "e[1]".into(),
            terms: vec![Term {
                module_index: None,
                indices: vec![1],
                coeff: "2/4".into(),
            }],
        }],
    };
    assert!(ResultRecord::from_json(&r.to_json()).unwrap_err().contains("lowest terms"));
}
