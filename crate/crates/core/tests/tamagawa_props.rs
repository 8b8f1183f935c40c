mod common;

use common::generated;
use latpair::classification::{classify, make_type, Kind, TypeDescriptor};
use latpair::exact_linalg::arith::{is_square, squarefree_part};
use latpair::invariants::{betts_group, separation_group};
use latpair::tamagawa::{
    base_change, c_up_to_squares, elliptic_data, elliptic_reference, tamagawa_number, tamagawa_via_bram,
    tamagawa_via_gcd_split, tower_stabilize, type_base_change, AbVarLocalData, ExtensionSpec, TowerResult,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn ext(e: u64, f: u64) -> ExtensionSpec {
    ExtensionSpec::new(e, f).unwrap()
}

fn templates(bound: u64) -> Vec<TypeDescriptor> {
    Kind::ALL.iter().flat_map(|&k| TypeDescriptor::enumerate(k, bound)).collect()
}

fn data(t: &TypeDescriptor) -> AbVarLocalData {
    AbVarLocalData::new(make_type(t)).unwrap()
}

#[test]
fn base_change_commutes_with_the_type_table() {
    for t in templates(4).into_iter().filter(|t| t.rank() == 2) {
        let d = data(&t);
        for e in 1..=3 {
            for f in [1, 2, 3, 4, 6] {
                let got = classify(&base_change(&d, ext(e, f)).unwrap().pair).unwrap();
                assert_eq!(got, type_base_change(&t, ext(e, f)), "{t} over (e, f) = ({e}, {f})");
            }
        }
    }
}

#[test]
fn gcd_split_and_bram_match_direct_counts() {
    for t in templates(3) {
        let d = data(&t);
        for e in 1..=4 {
            for f in 1..=6 {
                let direct = tamagawa_number(&base_change(&d, ext(e, f)).unwrap()).unwrap();
                assert_eq!(tamagawa_via_gcd_split(&d, ext(e, f)).unwrap(), direct, "{t}, ({e}, {f})");
                if f.gcd(&(d.n as u64)) == 1 {
                    assert_eq!(tamagawa_via_bram(&d, ext(e, f)).unwrap(), direct, "{t}, ({e}, {f})");
                } else {
                    assert!(tamagawa_via_bram(&d, ext(e, f)).is_err());
                }
            }
        }
    }
}

#[test]
fn up_to_squares_from_base_data() {
    for t in templates(3) {
        let d = data(&t);
        for e in 1..=4 {
            for f in [1, 2, 3, 4, 6] {
                let direct = tamagawa_number(&base_change(&d, ext(e, f)).unwrap()).unwrap();
                assert_eq!(c_up_to_squares(&d, ext(e, f)).unwrap(), squarefree_part(&direct), "{t}, ({e}, {f})");
            }
        }
    }
}

#[test]
fn betts_square_criterion() {
    for t in templates(3) {
        let d = data(&t);
        let base_square = is_square(&d.betts().unwrap().order());
        for e in 1..=4 {
            for f in 1..=4 {
                let over = base_change(&d, ext(e, f)).unwrap();
                let square = is_square(&over.betts().unwrap().order());
                assert_eq!(square, base_square || (e * f) % 2 == 0, "{t}, ({e}, {f})");
            }
        }
    }
}

#[test]
fn coprime_residue_degree_keeps_p_and_separation() {
    for t in templates(3) {
        let d = data(&t);
        let dm = d.pair.d_matrix();
        let sep = separation_group(&d.pair.lambda, &dm).unwrap().abstract_group();
        for e in 1..=3 {
            for f in (1..=7u64).filter(|f| f.gcd(&(d.n as u64)) == 1) {
                let over = base_change(&d, ext(e, f)).unwrap();
                assert_eq!(over.p_value(), d.p_value(), "{t}, ({e}, {f})");
                let dm2 = over.pair.d_matrix();
                assert_eq!(separation_group(&over.pair.lambda, &dm2).unwrap().abstract_group(), sep, "{t}, ({e}, {f})");
            }
        }
    }
}

#[test]
fn elliptic_tables() {
    for n in 1..=8 {
        for split in [true, false] {
            let d = elliptic_data(n, split);
            let b = betts_group(&d.pair).unwrap().order();
            assert_eq!(b == BigInt::from(2), !split && n % 2 == 1, "I_{n}, split = {split}");
            for e in 1..=4 {
                for f in 1..=4 {
                    let over = base_change(&d, ext(e, f)).unwrap();
                    assert_eq!(tamagawa_number(&over).unwrap(), elliptic_reference(n, split, ext(e, f)));
                    let kind = if split || f % 2 == 0 { Kind::One } else { Kind::Two };
                    assert_eq!(classify(&over.pair).unwrap(), TypeDescriptor::one(kind, e * n));
                }
            }
        }
    }
}

#[test]
fn towers_stabilize() {
    for t in templates(3) {
        let d = data(&t);
        for q in [2u64, 3] {
            for f in [1u64, 2] {
                let tower: Vec<ExtensionSpec> = (0..5).map(|k| ext(q.pow(k), f)).collect();
                match tower_stabilize(&d, &tower).unwrap() {
                    TowerResult::Stabilized { c, r_inf, k0 } => {
                        for (k, level) in tower.iter().enumerate().skip(k0) {
                            let direct = tamagawa_number(&base_change(&d, *level).unwrap()).unwrap();
                            let predicted =
                                &c * BigRational::from_integer(num_traits::pow(BigInt::from(level.e), r_inf));
                            assert_eq!(BigRational::from_integer(direct), predicted, "{t}, level {k}");
                        }
                    }
                    other => panic!("{t}: tower over q = {q}, f = {f} did not stabilize: {other:?}"),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_pairs_obey_up_to_squares_and_gcd_split(seed in any::<u64>(), e in 1u64..=4, f in 1u64..=6) {
        let d = AbVarLocalData::new(generated(seed).pair).unwrap();
        let direct = tamagawa_number(&base_change(&d, ext(e, f)).unwrap()).unwrap();
        prop_assert_eq!(c_up_to_squares(&d, ext(e, f)).unwrap(), squarefree_part(&direct));
        prop_assert_eq!(tamagawa_via_gcd_split(&d, ext(e, f)).unwrap(), direct);
    }
}
