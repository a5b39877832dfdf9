//! Graphs used by the benchmarks.

use parabolic_core::graph::graph_from_triples;
use parabolic_core::CoxeterGraph;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> CoxeterGraph {
    let names = names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let triples: Vec<(&str, &str, u32)> =
        edges.iter().map(|&(a, b)| (refs[a], refs[b], 3)).collect();
    graph_from_triples(&refs, &triples)
}

/// Braid diagram s1 – s2 – … – sn.
pub fn braid(n: usize) -> CoxeterGraph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    from_edges(n, &edges)
}

/// E_n with s1 attached to s4 and the chain s2 – s3 – … – sn.
pub fn exceptional(n: usize) -> CoxeterGraph {
    let mut edges = vec![(0, 3)];
    edges.extend((1..n - 1).map(|i| (i, i + 1)));
    from_edges(n, &edges)
}

/// D_n with prongs s1, s2 on s3 and tail s3 – … – sn.
pub fn d_type(n: usize) -> CoxeterGraph {
    let mut edges = vec![(0, 2), (1, 2)];
    edges.extend((2..n - 1).map(|i| (i, i + 1)));
    from_edges(n, &edges)
}
