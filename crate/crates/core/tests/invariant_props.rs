mod common;

use common::generated;
use latpair::exact_linalg::arith::{is_square, squarefree_part};
use latpair::exact_linalg::{column_space, inverse, rational_kernel, solve, RatMat};
use latpair::invariants::{
    betts_group, betts_group_alt, betts_pairing, d_charpoly_data, fixed_points_direct, fixed_points_formula,
    image_subspace, kernel_subspace, pairing_data, separation_group,
};
use latpair::mixed_module::MixedModule;
use latpair::oracle::separation_descriptions;
use latpair::pair::{Lattice, LatticePair};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// `(Λ₀, Λ₀^∨, F₀, G₀)` on `V₀ = DV` in coordinates of a basis of `DV`.
fn restrict_to_image(pair: &LatticePair) -> Option<LatticePair> {
    let d = pair.d_matrix();
    let b = column_space(&d);
    if b.cols() == 0 {
        return None;
    }
    let k = rational_kernel(&d);
    let full = b.hcat(&k);
    let coords = inverse(&full).expect("DV ⊕ V[D] = V");
    let to_b = coords.select_rows(&(0..b.cols()).collect::<Vec<_>>());
    let lambda0 = MixedModule::from_generators(b.cols(), &RatMat::zeros(b.cols(), 0), &(&to_b * pair.lambda.basis()));
    let dual0 = pair.lambda_prime.module().intersect(&image_subspace(&d)).unwrap();
    let dual0 = MixedModule::from_generators(b.cols(), &RatMat::zeros(b.cols(), 0), &(&to_b * dual0.lattice_gens()));
    let f0 = solve(&b, &(&pair.frobenius * &b)).expect("DV is F-stable");
    let g0 = &(&b.transpose() * pair.gram.as_ref().unwrap()) * &b;
    let pair0 = LatticePair::new(
        Lattice::new(lambda0.lattice_gens().clone()).unwrap(),
        Lattice::new(dual0.lattice_gens().clone()).unwrap(),
        f0,
        Some(g0),
    )
    .expect("restriction is a dual pair");
    Some(pair0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_equals_direct_count(seed in any::<u64>()) {
        let g = generated(seed);
        for e in 1..=6u64 {
            let direct = fixed_points_direct(&g.pair, &big(e), 1).unwrap();
            prop_assert_eq!(fixed_points_formula(&g.pair, &big(e)).unwrap().value, direct, "e = {}", e);
        }
    }

    #[test]
    fn betts_times_separation_divides_p0(seed in any::<u64>()) {
        let p = generated(seed).pair;
        let d = p.d_matrix();
        let (_, p0) = d_charpoly_data(&d).unwrap();
        let prod = betts_group(&p).unwrap().order() * separation_group(&p.lambda_prime, &d).unwrap().order();
        prop_assert!(p0.is_multiple_of(&prod));
    }

    #[test]
    fn separation_groups_of_dual_lattices_agree(seed in any::<u64>()) {
        let p = generated(seed).pair;
        let d = p.d_matrix();
        prop_assert_eq!(
            separation_group(&p.lambda, &d).unwrap().abstract_group(),
            separation_group(&p.lambda_prime, &d).unwrap().abstract_group()
        );
    }

    #[test]
    fn frobenius_acts_trivially(seed in any::<u64>()) {
        let p = generated(seed).pair;
        let d = p.d_matrix();
        prop_assert!(p.lambda_prime.is_stable(&p.frobenius));
        prop_assert_eq!(separation_group(&p.lambda, &d).unwrap().endo_is_zero(), Some(true));
        prop_assert_eq!(betts_group(&p).unwrap().endo_is_identity(), Some(true));
        prop_assert_eq!(betts_group_alt(&p).unwrap().group().endo_is_identity(), Some(true));
    }

    #[test]
    fn both_models_of_betts_agree(seed in any::<u64>()) {
        let p = generated(seed).pair;
        prop_assert_eq!(betts_group(&p).unwrap().abstract_group(), betts_group_alt(&p).unwrap().group().abstract_group());
    }

    #[test]
    fn betts_survives_restriction_to_image(seed in any::<u64>()) {
        let p = generated(seed).pair;
        if let Some(p0) = restrict_to_image(&p) {
            prop_assert_eq!(betts_group(&p0).unwrap().abstract_group(), betts_group(&p).unwrap().abstract_group());
        } else {
            prop_assert!(betts_group(&p).unwrap().is_trivial());
        }
    }

    #[test]
    fn betts_order_is_square_or_twice_square(seed in any::<u64>()) {
        let p = generated(seed).pair;
        let b = betts_group(&p).unwrap();
        let n = b.order();
        prop_assert!(is_square(&n) || (n.is_even() && is_square(&(&n / 2))));
        for e in 1..=6u64 {
            let t = squarefree_part(&b.torsion_order(&big(e)));
            let want = if e % 2 == 0 { squarefree_part(&n) } else { BigInt::from(1) };
            prop_assert_eq!(t, want, "e = {}", e);
        }
    }

    #[test]
    fn pairing_is_perfect_and_antisymmetric(seed in any::<u64>()) {
        let p = generated(seed).pair;
        prop_assume!(betts_group(&p).unwrap().order() <= BigInt::from(64));
        let data = pairing_data(&p).unwrap();
        prop_assert!(data.is_antisymmetric());
        prop_assert!(data.is_perfect());
        let elements: Vec<_> = data.elements().iter().map(|c| data.group.element(c)).collect();
        for x in &elements {
            let fx = p.frobenius.mul_vec(x);
            for y in &elements {
                let s = betts_pairing(&p, x, y).unwrap() + betts_pairing(&p, y, &fx).unwrap();
                prop_assert!(s.is_integer());
            }
        }
    }

    #[test]
    fn duals_of_image_and_kernel(seed in any::<u64>()) {
        let p = generated(seed).pair;
        let d = p.d_matrix();
        let g = p.gram.as_ref().unwrap();
        prop_assert_eq!(image_subspace(&d).dual(g).unwrap(), kernel_subspace(&d));
        let lhs = p.lambda.module().image(&d).dual(g).unwrap();
        let rhs = p.lambda_prime.module().preimage(&d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fixed_points_up_to_squares(seed in any::<u64>()) {
        let p = generated(seed).pair;
        for e in 1..=3u64 {
            let e = big(e);
            let base = squarefree_part(&fixed_points_direct(&p, &e, 1).unwrap());
            let whole = squarefree_part(&p.lambda.index(&p.lambda_prime.scaled(&e)));
            for f in 1..=6u64 {
                let got = squarefree_part(&fixed_points_direct(&p, &e, f).unwrap());
                prop_assert_eq!(&got, if f % 2 == 1 { &base } else { &whole }, "e = {}, f = {}", e, f);
            }
        }
    }

    #[test]
    fn four_descriptions_of_separation_agree(seed in any::<u64>()) {
        let p = generated(seed).pair;
        let d = p.d_matrix();
        let orders = separation_descriptions(&p.lambda, &d).unwrap();
        let t = separation_group(&p.lambda, &d).unwrap().order();
        for o in orders {
            prop_assert_eq!(&o, &t);
        }
    }
}
