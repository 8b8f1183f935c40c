use latpair::classification::{classify, make_type, type_invariants, Kind, TypeDescriptor};
use latpair::invariants::{betts_group, fixed_points_direct, separation_group};
use latpair::oracle::random_unimodular;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn descriptor(bound: u64) -> impl Strategy<Value = TypeDescriptor> {
    (0..Kind::ALL.len(), 1..=bound, 1..=bound).prop_filter_map("valid parameters", |(k, n, m)| {
        let kind = Kind::ALL[k];
        TypeDescriptor::new(kind, n, kind.has_two_params().then_some(m)).ok()
    })
}

#[test]
fn classify_inverts_make_type_up_to_six() {
    for kind in Kind::ALL {
        for t in TypeDescriptor::enumerate(kind, 6) {
            assert_eq!(classify(&make_type(&t)).unwrap(), t);
        }
    }
}

#[test]
fn type_table_cells() {
    for kind in Kind::ALL {
        for t in TypeDescriptor::enumerate(kind, 4) {
            let pair = make_type(&t);
            let d = pair.d_matrix();
            let want = type_invariants(&t);
            assert_eq!(separation_group(&pair.lambda, &d).unwrap().abstract_group(), want.separation, "{t}");
            assert_eq!(betts_group(&pair).unwrap().abstract_group(), want.betts, "{t}");
            assert_eq!(fixed_points_direct(&pair, &BigInt::from(1), 1).unwrap(), want.c, "{t}");
        }
    }
}

#[test]
fn descriptors_parse_and_print() {
    for s in ["1:3", "2:2", "1.1:2,4", "1.2A:3,2", "1.2B:4,2", "2.2:1,3", "3.3:5", "4.4:1", "6.6:2"] {
        assert_eq!(s.parse::<TypeDescriptor>().unwrap().to_string(), s);
    }
    assert_eq!("1.1:4,6".parse::<TypeDescriptor>().unwrap().to_string(), "1.1:2,12");
    assert!("1.2B:2,1".parse::<TypeDescriptor>().is_err());
    assert!("7.7:1".parse::<TypeDescriptor>().is_err());
    assert!("3.3:0".parse::<TypeDescriptor>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn classify_ignores_change_of_basis(t in descriptor(5), seed in any::<u64>()) {
        let pair = make_type(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_unimodular(&mut rng, pair.dim(), 3);
        prop_assert_eq!(classify(&pair.conjugated(&g)).unwrap(), t);
    }

    #[test]
    fn scaling_the_sublattice_scales_parameters(t in descriptor(4), e in 1u64..=5) {
        let pair = make_type(&t).scaled(&BigInt::from(e));
        prop_assert_eq!(classify(&pair).unwrap(), t.scaled(e));
    }
}
