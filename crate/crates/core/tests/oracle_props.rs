use polyresolve_core::oracles::{min_resolution_length, pruned_search, vertex_count, DEFAULT_STATE_CAP};
use polyresolve_core::perm::{check_resolution, Partition};
use polyresolve_core::resolve::{
    gen_lower_bound_instance, progress_lower_bound, resolution_length_bound, resolve,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STATES: usize = 20_000;

fn instance(shape: &[usize], seed: u64) -> (Partition, Partition) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<usize> = shape
        .iter()
        .enumerate()
        .flat_map(|(c, &k)| std::iter::repeat_n(c, k))
        .collect();
    let mut draw = || {
        let mut a = base.clone();
        a.shuffle(&mut r);
        Partition::new(shape.len(), a).unwrap()
    };
    (draw(), draw())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // progress bound <= exact optimum <= constructive length <= upper bound
    #[test]
    fn lengths_are_sandwiched(shape in prop::collection::vec(1usize..=3, 1..=4), seed in any::<u64>()) {
        prop_assume!(vertex_count(&shape).is_some_and(|v| v <= STATES as u128));
        let (p, q) = instance(&shape, seed);
        let exact = min_resolution_length(&p, &q, DEFAULT_STATE_CAP).unwrap();
        let res = resolve(&p, &q).unwrap();
        check_resolution(&p, &q, &res.taus).unwrap();
        prop_assert!(progress_lower_bound(&p, &q).unwrap() <= exact);
        prop_assert!(exact <= res.len());
        prop_assert!(res.len() <= resolution_length_bound(&shape));
    }

    // on lower-bound instances the pruned search agrees with breadth-first
    // search on both sides of the optimum, which meets the bound
    #[test]
    fn pruned_search_matches_bfs(shape in prop::collection::vec(1usize..=3, 4..=5)) {
        let mut shape = shape;
        shape.sort_unstable_by(|a, b| b.cmp(a));
        prop_assume!(vertex_count(&shape).is_some_and(|v| v <= STATES as u128));
        let lb = gen_lower_bound_instance(&shape).unwrap();
        let (p, q) = (&lb.p, &lb.q);
        let exact = min_resolution_length(p, q, DEFAULT_STATE_CAP).unwrap();
        prop_assert!(exact >= lb.bound);
        let hit = pruned_search(p, q, exact).unwrap();
        prop_assert!(!hit.no_short);
        let witness = hit.witness.unwrap();
        check_resolution(p, q, &witness).unwrap();
        prop_assert_eq!(witness.len(), exact);
        if exact > 0 {
            prop_assert!(pruned_search(p, q, exact - 1).unwrap().no_short);
        }
    }
}
