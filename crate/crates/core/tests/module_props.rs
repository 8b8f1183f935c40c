mod common;

use common::{int_mat, rat_mat};
use latpair::exact_linalg::{det, inverse, RatMat};
use latpair::mixed_module::MixedModule;
use latpair::pair::Lattice;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const DIM: usize = 3;

fn entries(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-4i64..=4, 1i64..=3), n)
}

/// `span_ℚ(sub) + span_ℤ(lat)` with 0–1 subspace and 0–3 lattice generators in ℚ³.
fn module() -> impl Strategy<Value = MixedModule> {
    (0usize..=1, 0usize..=3).prop_flat_map(|(s, l)| {
        (entries(DIM * s), entries(DIM * l))
            .prop_map(move |(a, b)| MixedModule::from_generators(DIM, &rat_mat(DIM, s, &a), &rat_mat(DIM, l, &b)))
    })
}

fn gram() -> impl Strategy<Value = RatMat> {
    entries(DIM * DIM)
        .prop_map(|e| {
            let m = rat_mat(DIM, DIM, &e);
            &m + &m.transpose()
        })
        .prop_filter("nondegenerate", |g| !det(g).is_zero())
}

fn full_lattice() -> impl Strategy<Value = RatMat> {
    entries(DIM * DIM).prop_map(|e| rat_mat(DIM, DIM, &e)).prop_filter("full rank", |b| !det(b).is_zero())
}

fn same(a: &MixedModule, b: &MixedModule) -> bool {
    a.contains(b).unwrap() && b.contains(a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_turns_sums_into_intersections(m in module(), n in module(), g in gram()) {
        let lhs = m.sum(&n).unwrap().dual(&g).unwrap();
        let rhs = m.dual(&g).unwrap().intersect(&n.dual(&g).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_turns_intersections_into_sums(m in module(), n in module(), g in gram()) {
        let lhs = m.intersect(&n).unwrap().dual(&g).unwrap();
        let rhs = m.dual(&g).unwrap().sum(&n.dual(&g).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn dual_swaps_dimensions(m in module(), g in gram()) {
        let d = m.dual(&g).unwrap();
        prop_assert_eq!(d.dim_plus(), m.codim_minus());
        prop_assert_eq!(d.dim_minus(), m.codim_plus());
        prop_assert!(same(&d.dual(&g).unwrap(), &m));
    }

    #[test]
    fn finite_quotients_have_dual_order(m in module(), l in full_lattice(), g in gram()) {
        let w = MixedModule::subspace(m.subspace_basis());
        let n = m.intersect(&MixedModule::lattice(&l).sum(&w).unwrap()).unwrap();
        let q = m.finite_quotient(&n).unwrap();
        let qd = n.dual(&g).unwrap().finite_quotient(&m.dual(&g).unwrap()).unwrap();
        prop_assert_eq!(q.order(), qd.order());
    }

    #[test]
    fn preimage_of_lattice_has_index_det(b in full_lattice(), a in proptest::collection::vec(-3i64..=3, DIM * DIM)) {
        let a = int_mat(DIM, DIM, &a).to_rat();
        prop_assume!(!det(&a).is_zero());
        let d = &(&b * &a) * &inverse(&b).unwrap();
        let lambda = Lattice::new(b).unwrap().module();
        let pre = lambda.preimage(&d).unwrap();
        prop_assert!(pre.contains(&lambda).unwrap());
        prop_assert_eq!(pre.finite_quotient(&lambda).unwrap().order(), det(&a).abs().to_integer());
    }
}
