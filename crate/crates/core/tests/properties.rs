mod common;

use common::props;
use common::{graph_and_subset, random_graph};
use parabolic_core::VertexSet;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn graph_with_two_subsets(
) -> impl Strategy<Value = (parabolic_core::CoxeterGraph, VertexSet, VertexSet)> {
    graph_and_subset(6).prop_flat_map(|(g, x)| {
        let members: Vec<usize> = x.iter().collect();
        let len = members.len();
        (Just(g), Just(x), subsequence(members, 0..=len))
            .prop_map(|(g, x, sub)| (g, sub.into_iter().collect(), x))
    })
}

fn graph_subset_perm(
) -> impl Strategy<Value = (parabolic_core::CoxeterGraph, VertexSet, Vec<usize>)> {
    graph_and_subset(6).prop_flat_map(|(g, x)| {
        let n = g.len();
        (
            Just(g),
            Just(x),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn graph_structure((g, x) in graph_and_subset(6)) {
        props::graph_structure(&g, x)?;
    }

    #[test]
    fn orbit_consistency((g, x) in graph_and_subset(6)) {
        props::orbit_consistency(&g, x)?;
    }

    #[test]
    fn twist_involution((g, x) in graph_and_subset(6)) {
        props::twist_involution(&g, x)?;
    }

    #[test]
    fn ribbon_cases((g, x) in graph_and_subset(6)) {
        props::ribbon_cases(&g, x)?;
    }

    #[test]
    fn tuple_invariants((g, x1, x) in graph_with_two_subsets()) {
        props::tuple_invariants(&g, x1, x)?;
    }

    #[test]
    fn renaming_invariance((g, x, perm) in graph_subset_perm()) {
        props::renaming_invariance(&g, x, &perm)?;
    }

    #[test]
    fn deterministic_json((g, x) in graph_and_subset(6)) {
        props::deterministic_json(&g, x)?;
    }

    #[test]
    fn full_set_is_stable(g in random_graph(6)) {
        let v = parabolic_core::decide_stability(&g, g.all(), Default::default()).unwrap();
        prop_assert_eq!(v, parabolic_core::StabilityVerdict::Stable);
    }
}
