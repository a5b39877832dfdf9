//! Verdicts for every nonempty subset of the braid diagrams A_1 … A_6.

use std::path::PathBuf;

use parabolic_core::{decide_stability, CoxeterGraph, StabilityVerdict, VertexSet};

pub const MAX_RANK: usize = 6;

pub struct Row {
    pub rank: usize,
    pub subset: VertexSet,
    pub verdict: StabilityVerdict,
}

pub fn sweep() -> Vec<Row> {
    let mut rows = Vec::new();
    for rank in 1..=MAX_RANK {
        let g = super::a(rank);
        for bits in 1u64..(1 << rank) {
            let subset = VertexSet::from_bits(bits);
            let verdict = decide_stability(&g, subset, Default::default()).unwrap();
            rows.push(Row {
                rank,
                subset,
                verdict,
            });
        }
    }
    rows
}

pub fn render(rows: &[Row]) -> String {
    let mut out = String::new();
    let mut graphs: Vec<CoxeterGraph> = Vec::new();
    for row in rows {
        while graphs.len() < row.rank {
            graphs.push(super::a(graphs.len() + 1));
        }
        let g = &graphs[row.rank - 1];
        let kind = row.verdict.witness().map_or("-", |w| w.kind());
        out.push_str(&format!(
            "A{} {} {} {}\n",
            row.rank,
            g.set_names(row.subset).join(","),
            row.verdict.as_str(),
            kind
        ));
    }
    out
}

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/braid_sweep.txt")
}

/// Components of X as maximal runs of consecutive positions.
pub fn runs(x: VertexSet) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for v in x.iter() {
        match out.last_mut() {
            Some((_, end)) if *end + 1 == v => *end = v,
            _ => out.push((v, v)),
        }
    }
    out
}

/// {s_1..s_k} or {s_{n-k+1}..s_n}.
pub fn is_end_segment(rank: usize, x: VertexSet) -> bool {
    matches!(runs(x).as_slice(), [(start, end)] if *start == 0 || *end == rank - 1)
}

/// Two consecutive components with exactly one vertex between them.
pub fn has_one_vertex_gap(x: VertexSet) -> bool {
    runs(x).windows(2).any(|w| w[1].0 == w[0].1 + 2)
}
