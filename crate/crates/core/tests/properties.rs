mod common;

use common::*;
use proptest::prelude::*;
use zeropath::duality::{max_packing, min_hitting_set};
use zeropath::graph::{Graph, VertexSet};
use zeropath::io::{from_dot, from_json, to_dot, to_json};
use zeropath::modpath::ResidueSpec;

fn instance(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (Just(n), Just(pairs), prop::collection::vec(any::<bool>(), m), prop::collection::btree_set(0..n, 2..=3))
            .prop_map(|(n, pairs, keep, a)| {
                let edges: Vec<_> = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
                (Graph::from_edges(n, &edges).unwrap(), a)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip((g, a) in instance(9)) {
        let (h, b) = from_json(&to_json(&g, Some(&a))).unwrap();
        prop_assert_eq!(h, g);
        prop_assert_eq!(b, a);
    }

    #[test]
    fn dot_round_trip((g, a) in instance(9)) {
        let (h, b) = from_dot(&to_dot(&g, &a)).unwrap();
        prop_assert_eq!(h.vertex_set(), g.vertex_set());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert_eq!(b, a);
    }

    #[test]
    fn solvers_match_oracles((g, a) in instance(8), d in 0u32..4) {
        let ps = a_paths(&g, &a, |l| l % 4 == d as usize);
        let (nu, pack) = max_packing(&g, &a, ResidueSpec::new(4, d).unwrap()).unwrap();
        let (tau, x) = min_hitting_set(&g, &a, ResidueSpec::new(4, d).unwrap()).unwrap();
        prop_assert_eq!(nu, packing(&ps));
        prop_assert_eq!(tau, hitting(&ps));
        prop_assert!(nu <= tau);
        prop_assert!(pack.iter().all(|p| is_path_in(&g, p) && p.length() % 4 == d as usize));
        let rest = g.without(&x);
        prop_assert!(a_paths(&rest, &(&a - &x), |l| l % 4 == d as usize).is_empty());
    }
}
