use std::collections::{BTreeSet, HashMap, HashSet};

use proptest::prelude::*;

use dcdlab::energy::{
    corner_set_size, dyadic_popular_set, energy, energy_pair_identity, popularity_graph,
};
use dcdlab::search::{anneal_min, exhaustive_min, set_from_gaps, AnnealSchedule};
use dcdlab::sets::{
    consecutive_differences, difference_set, dilate_translate,
    has_distinct_consecutive_differences, is_convex, sumset, GroundSet,
};

fn ground_set(max_len: usize, span: i64) -> impl Strategy<Value = GroundSet> {
    sized_set(1, max_len, span)
}

fn sized_set(min_len: usize, max_len: usize, span: i64) -> impl Strategy<Value = GroundSet> {
    prop::collection::btree_set(-span..=span, min_len..=max_len)
        .prop_map(|s| GroundSet::new(s.into_iter().collect::<Vec<_>>()).unwrap())
}

fn naive_sums(a: &GroundSet, b: &GroundSet, sign: i64) -> BTreeSet<i64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + sign * y))
        .collect()
}

fn naive_energy(a: &GroundSet, b: &GroundSet, order: u32) -> u128 {
    let mut r: HashMap<i64, u128> = HashMap::new();
    for x in a.iter() {
        for y in b.iter() {
            *r.entry(x - y).or_default() += 1;
        }
    }
    r.values().map(|c| c.pow(order)).sum()
}

proptest! {
    #[test]
    fn sumset_matches_enumeration_and_bounds(a in ground_set(20, 200), b in ground_set(20, 200)) {
        let s = sumset(&a, &b).unwrap();
        let oracle = naive_sums(&a, &b, 1);
        let oracle: Vec<i64> = oracle.into_iter().collect();
        prop_assert_eq!(s.elements(), oracle.as_slice());
        prop_assert!(s.len() >= a.len() + b.len() - 1);
        prop_assert!(s.len() <= a.len() * b.len());
    }

    #[test]
    fn difference_set_symmetric_with_zero(a in ground_set(20, 200)) {
        let d = difference_set(&a, &a).unwrap();
        prop_assert!(d.contains(0));
        prop_assert!(d.iter().all(|x| d.contains(-x)));
        prop_assert_eq!(d.len(), naive_sums(&a, &a, -1).len());
    }

    #[test]
    fn sumset_size_affine_invariant(a in ground_set(15, 100), b in ground_set(15, 100),
                                    lambda in prop_oneof![-7i64..=-1, 1i64..=7], mu in -50i64..=50) {
        let a2 = dilate_translate(&a, lambda, mu).unwrap();
        let b2 = dilate_translate(&b, lambda, 0).unwrap();
        prop_assert_eq!(sumset(&a, &b).unwrap().len(), sumset(&a2, &b2).unwrap().len());
    }

    #[test]
    fn convex_implies_dcd(gaps in prop::collection::btree_set(1i64..=60, 1..=12)) {
        let a = set_from_gaps(&gaps.iter().copied().collect::<Vec<_>>()).unwrap();
        prop_assert!(is_convex(&a));
        prop_assert!(has_distinct_consecutive_differences(&a));
    }

    #[test]
    fn gaps_translation_invariant(a in ground_set(15, 100), mu in -1000i64..=1000) {
        prop_assume!(a.len() >= 2);
        let t = dilate_translate(&a, 1, mu).unwrap();
        prop_assert_eq!(consecutive_differences(&a).unwrap(), consecutive_differences(&t).unwrap());
    }

    #[test]
    fn energy_matches_enumeration(a in ground_set(15, 60), b in ground_set(15, 60), order in 1u32..=4) {
        prop_assert_eq!(energy(&a, &b, order).unwrap(), naive_energy(&a, &b, order));
    }

    #[test]
    fn energy_affine_invariant(a in ground_set(15, 60), lambda in prop_oneof![-5i64..=-1, 1i64..=5],
                               mu in -30i64..=30, order in 1u32..=4) {
        let t = dilate_translate(&a, lambda, mu).unwrap();
        prop_assert_eq!(energy(&a, &a, order).unwrap(), energy(&t, &t, order).unwrap());
    }

    #[test]
    fn energy_trivial_bounds(a in ground_set(25, 100)) {
        let k = a.len() as u128;
        prop_assert!(energy(&a, &a, 2).unwrap() >= k * k);
        prop_assert!(energy(&a, &a, 3).unwrap() >= k.pow(3));
        for order in 1..=4u32 {
            prop_assert!(energy(&a, &a, order).unwrap() <= k.pow(order + 1));
        }
    }

    #[test]
    fn pair_identity_holds(a in ground_set(25, 100)) {
        let (lhs, rhs) = energy_pair_identity(&a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn corner_set_matches_point_enumeration(a in sized_set(2, 14, 40)) {
        let (delta, p) = dyadic_popular_set(&a).unwrap();
        let g = popularity_graph(&a, delta, &p).unwrap();
        let e = a.elements();
        let pts: HashSet<(i64, i64)> = e
            .iter()
            .flat_map(|&c| g.edges().iter().map(move |&(i, j)| (c - e[i], c - e[j])))
            .collect();
        prop_assert_eq!(corner_set_size(&a, &g, u128::MAX).unwrap(), pts.len() as u128);
    }

    #[test]
    fn dyadic_mass_bound(a in sized_set(2, 30, 200)) {
        let (delta, p) = dyadic_popular_set(&a).unwrap();
        let k = a.len() as u128;
        let levels = u128::from((a.len() as u64).ilog2()) + 1;
        prop_assert!(u128::from(delta) * p.len() as u128 * 2 * levels >= k * k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_results_within_bounds(k in 2usize..=5, max_gap in 4i64..=7, seed in any::<u64>()) {
        let exact = exhaustive_min(k, max_gap, u128::MAX).unwrap();
        exact.validate().unwrap();
        prop_assert!(exact.objective >= 2 * k - 1);
        prop_assert!(exact.objective <= k * (k + 1) / 2);
        let sched = AnnealSchedule { iterations: 300, restarts: 1, chains: 2, ..Default::default() };
        let w = anneal_min(k, max_gap, seed, &sched).unwrap();
        w.validate().unwrap();
        prop_assert!(w.objective >= exact.objective);
        prop_assert!(w.gaps.iter().all(|&g| (1..=max_gap).contains(&g)));
    }
}
