#![allow(dead_code)]

pub mod props;
pub mod sweep;

use parabolic_core::graph::graph_from_triples;
use parabolic_core::{CoxeterGraph, Label, VertexSet};
use proptest::prelude::*;

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn build(names: &[String], edges: &[(usize, usize, u32)]) -> CoxeterGraph {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let triples: Vec<(&str, &str, u32)> = edges
        .iter()
        .map(|&(a, b, m)| (refs[a], refs[b], m))
        .collect();
    graph_from_triples(&refs, &triples)
}

/// Path s1 – s2 – … – sn with all labels 3.
pub fn a(n: usize) -> CoxeterGraph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect();
    build(&names("s", n), &edges)
}

/// Prongs s1, s2 on the branch s3, tail s3 – s4 – … – sn.
pub fn d(n: usize) -> CoxeterGraph {
    let mut edges = vec![(0, 2, 3), (1, 2, 3)];
    edges.extend((2..n - 1).map(|i| (i, i + 1, 3)));
    build(&names("s", n), &edges)
}

/// Chain s2 – s3 – … – sn with s1 attached to s4.
pub fn e(n: usize) -> CoxeterGraph {
    let mut edges = vec![(0, 3, 3)];
    edges.extend((1..n - 1).map(|i| (i, i + 1, 3)));
    build(&names("s", n), &edges)
}

pub fn i2(m: u32) -> CoxeterGraph {
    graph_from_triples(&["a", "b"], &[("a", "b", m)])
}

pub fn abc() -> CoxeterGraph {
    graph_from_triples(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 3)])
}

pub fn set(g: &CoxeterGraph, names: &[&str]) -> VertexSet {
    g.subset_from_names(names).unwrap()
}

/// Label code used by generators: 0 is ∞, anything else is m.
pub fn label_code(l: Label) -> u32 {
    l.encode()
}

/// Random graph on `n` vertices named v0.. with labels in {2,3,4,5,∞}.
pub fn random_graph(max_vertices: usize) -> impl Strategy<Value = CoxeterGraph> {
    (1..=max_vertices).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(
            prop_oneof![4 => Just(2u32), 4 => Just(3u32), 1 => Just(4u32), 1 => Just(5u32), 1 => Just(0u32)],
            pairs,
        )
        .prop_map(move |labels| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if labels[k] != 2 {
                        edges.push((a, b, labels[k]));
                    }
                    k += 1;
                }
            }
            build(&names, &edges)
        })
    })
}

/// A graph together with a subset of its generators.
pub fn graph_and_subset(max_vertices: usize) -> impl Strategy<Value = (CoxeterGraph, VertexSet)> {
    random_graph(max_vertices).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), 0u64..(1u64 << n)).prop_map(|(g, bits)| (g, VertexSet::from_bits(bits)))
    })
}

/// Same graph with generators renamed through `perm` (old index i becomes
/// the name at position perm[i] of a fresh, differently ordered name list).
pub fn renamed(g: &CoxeterGraph, perm: &[usize]) -> (CoxeterGraph, Vec<usize>) {
    let n = g.len();
    let fresh: Vec<String> = (0..n)
        .map(|i| format!("w{}", (b'a' + i as u8) as char))
        .collect();
    let new_names: Vec<String> = (0..n).map(|i| fresh[perm[i]].clone()).collect();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let l = g.label(x, y);
            if l != Label::COMMUTING {
                edges.push((x, y, label_code(l)));
            }
        }
    }
    let h = build(&new_names, &edges);
    let map: Vec<usize> = (0..n).map(|i| h.index_of(&new_names[i]).unwrap()).collect();
    (h, map)
}

pub fn map_set(x: VertexSet, map: &[usize]) -> VertexSet {
    x.iter().map(|v| map[v]).collect()
}
