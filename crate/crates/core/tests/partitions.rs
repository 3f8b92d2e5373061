//! Colored partition counts: domination under added parts and the
//! relation reports.

use num_bigint::BigInt;
use proptest::prelude::*;
use qrr::partitions::{ColorClass, PartSpec, PartitionData};

fn spec() -> impl Strategy<Value = PartSpec> {
    (3u32..13).prop_flat_map(|m| {
        prop::collection::vec((1..m, 1u32..3), 1..4).prop_map(move |cls| {
            let classes = cls
                .into_iter()
                .map(|(residue, colors)| ColorClass { residue, colors })
                .collect();
            PartSpec::new("random", m, classes).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adding_a_class_dominates(s in spec(), extra in 1u32..13, colors in 1u32..3) {
        let residue = 1 + (extra - 1) % (s.modulus - 1);
        let mut classes = s.classes.clone();
        classes.push(ColorClass { residue, colors });
        let bigger = PartSpec::new("bigger", s.modulus, classes).unwrap();
        let (small, large) = (s.gf_counts(40), bigger.gf_counts(40));
        for (a, b) in small.iter().zip(&large) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn adding_a_color_dominates(s in spec()) {
        let mut classes = s.classes.clone();
        classes[0].colors += 1;
        let bigger = PartSpec::new("bigger", s.modulus, classes).unwrap();
        for (a, b) in s.gf_counts(40).iter().zip(&bigger.gf_counts(40)) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn enumeration_matches_generating_function(s in spec(), n in 0u64..40) {
        prop_assert_eq!(s.enum_count(n).unwrap(), s.gf_count(n));
    }
}

#[test]
fn relations_hold_to_one_hundred() {
    let data = PartitionData::builtin().unwrap();
    for (id, judged) in [("7.1", 100), ("7.2", 99), ("7.3", 99)] {
        let r = data.verify_theorem(id, 100).unwrap();
        assert!(r.passed(), "{id}: {:?}", r.failures());
        assert_eq!(r.judged(), judged);
        assert_eq!(r.rows.len(), 100);
    }
}

#[test]
fn counts_grow_past_machine_integers() {
    let data = PartitionData::builtin().unwrap();
    let c = data.spec("p7").unwrap().gf_count(1500);
    assert!(c > BigInt::from(u64::MAX));
}
