//! Coxeter graphs of Artin groups and generator subsets.
//!
//! Generators are stored in lexicographic order of their names and referred
//! to by index into that order everywhere else in the crate. A [`VertexSet`]
//! is a bitmask over those indices, so iteration order is canonical for free.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest number of generators a graph may carry (one bit per generator).
pub const MAX_GENERATORS: usize = 64;

/// Coxeter label `m_{s,t}` of a pair of distinct generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub const COMMUTING: Label = Label::Finite(2);

    /// True when the pair is joined by an edge of the Coxeter graph (m ≥ 3 or ∞).
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(m) if m <= 2)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinity)
    }

    /// Integer encoding used in graph files: the label itself, or 0 for ∞.
    pub fn encode(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinity => 0,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("∞"),
        }
    }
}

/// A subset of the generators of some graph, as a bitmask over generator indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// The first `n` generators.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest generator index in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in ascending (canonical) order.
    pub fn iter(self) -> impl Iterator<Item = usize> + Clone {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        // Standard submask walk, emitted in increasing numeric order.
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VertexSet(cur))
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

/// Canonical order on subsets: larger sets first, then by the ascending
/// index lists compared lexicographically.
pub fn canonical_subset_cmp(a: &VertexSet, b: &VertexSet) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.iter().cmp(b.iter()))
}

/// The Coxeter graph of an Artin group: generators plus a symmetric label map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    names: Vec<String>,
    labels: Vec<Label>,
    adjacency: Vec<u64>,
}

impl CoxeterGraph {
    /// Builds a graph from names and explicit labels; every unlisted pair gets `default`.
    ///
    /// Names are sorted into canonical order. Relation entries must name
    /// distinct known generators; labels must be ≥ 2 or ∞.
    pub fn new<S: AsRef<str>>(
        names: &[S],
        relations: &[(S, S, Label)],
        default: Label,
    ) -> Result<Self, GraphError> {
        let mut sorted: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        if sorted.is_empty() {
            return Err(GraphError::NoGenerators);
        }
        for (index, name) in sorted.iter().enumerate() {
            if !is_identifier(name) {
                return Err(GraphError::InvalidName {
                    index,
                    name: name.clone(),
                });
            }
        }
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateGenerator(w[0].clone()));
        }
        if sorted.len() > MAX_GENERATORS {
            return Err(GraphError::TooManyGenerators(sorted.len()));
        }
        let n = sorted.len();
        let mut labels = vec![default; n * n];
        let mut explicit: Vec<Option<Label>> = vec![None; n * n];
        for (relation, (a, b, label)) in relations.iter().enumerate() {
            let (a, b) = (a.as_ref(), b.as_ref());
            let find = |name: &str| {
                sorted
                    .binary_search_by(|s| s.as_str().cmp(name))
                    .map_err(|_| GraphError::UnknownGenerator {
                        relation,
                        name: name.to_owned(),
                    })
            };
            let (i, j) = (find(a)?, find(b)?);
            if i == j {
                return Err(GraphError::SelfPair {
                    relation,
                    name: a.to_owned(),
                });
            }
            if let Label::Finite(m) = label {
                if *m < 2 {
                    return Err(GraphError::LabelTooSmall {
                        relation,
                        value: i64::from(*m),
                    });
                }
            }
            match explicit[i * n + j] {
                Some(prev) if prev != *label => {
                    return Err(GraphError::ConflictingLabels {
                        relation,
                        a: a.to_owned(),
                        b: b.to_owned(),
                    });
                }
                _ => {}
            }
            explicit[i * n + j] = Some(*label);
            explicit[j * n + i] = Some(*label);
            labels[i * n + j] = *label;
            labels[j * n + i] = *label;
        }
        for i in 0..n {
            labels[i * n + i] = Label::Finite(1);
        }
        let adjacency = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && labels[i * n + j].is_edge())
                    .fold(0u64, |acc, j| acc | (1 << j))
            })
            .collect();
        Ok(CoxeterGraph {
            names: sorted,
            labels,
            adjacency,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    /// The whole generating set S.
    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// Label of a pair; `label(v, v)` is 1 by convention.
    pub fn label(&self, a: usize, b: usize) -> Label {
        self.labels[a * self.len() + b]
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.labels[a * self.len() + b].is_edge()
    }

    /// Γ-neighbours of a single generator.
    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.adjacency[v])
    }

    pub fn contains_set(&self, x: VertexSet) -> bool {
        x.is_subset(self.all())
    }

    pub fn check_subset(&self, x: VertexSet) -> Result<(), GraphError> {
        if self.contains_set(x) {
            Ok(())
        } else {
            Err(GraphError::NotASubset)
        }
    }

    /// Parses a comma-separated list of generator names into a subset.
    /// Blank entries are ignored, so `""` is the empty set.
    pub fn parse_subset(&self, list: &str) -> Result<VertexSet, GraphError> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                self.index_of(s)
                    .ok_or_else(|| GraphError::UnknownName(s.to_owned()))
            })
            .collect()
    }

    pub fn subset_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| GraphError::UnknownName(s.as_ref().to_owned()))
            })
            .collect()
    }

    pub fn set_names(&self, x: VertexSet) -> Vec<String> {
        x.iter().map(|v| self.names[v].clone()).collect()
    }

    /// `{a,b,c}`-style rendering for diagnostics and text output.
    pub fn format_set(&self, x: VertexSet) -> String {
        format!("{{{}}}", self.set_names(x).join(","))
    }

    /// Sub-graph Γ_X with labels restricted from `self`.
    pub fn induced(&self, x: VertexSet) -> Result<CoxeterGraph, GraphError> {
        self.check_subset(x)?;
        let verts: Vec<usize> = x.iter().collect();
        let n = verts.len();
        let mut labels = vec![Label::Finite(1); n * n];
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate() {
                if i != j {
                    labels[i * n + j] = self.label(a, b);
                }
            }
        }
        let adjacency = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && labels[i * n + j].is_edge())
                    .fold(0u64, |acc, j| acc | (1 << j))
            })
            .collect();
        Ok(CoxeterGraph {
            names: verts.iter().map(|&v| self.names[v].clone()).collect(),
            labels,
            adjacency,
        })
    }

    /// Connected components of Γ_X, sorted by smallest generator.
    pub fn components(&self, x: VertexSet) -> Result<Vec<VertexSet>, GraphError> {
        self.check_subset(x)?;
        Ok(self.components_unchecked(x))
    }

    pub(crate) fn components_unchecked(&self, x: VertexSet) -> Vec<VertexSet> {
        let mut rest = x;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.component_containing(x, start);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// The connected component of Γ_X containing `v` (`v` must lie in `x`).
    pub fn component_containing(&self, x: VertexSet, v: usize) -> VertexSet {
        debug_assert!(x.contains(v));
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let reach = frontier.iter().fold(0u64, |acc, u| acc | self.adjacency[u]);
            frontier = VertexSet(reach).intersection(x).difference(comp);
            comp = comp.union(frontier);
        }
        comp
    }

    pub fn is_connected(&self, x: VertexSet) -> bool {
        match x.first() {
            None => false,
            Some(v) => self.component_containing(x, v) == x,
        }
    }

    /// Adj(X): generators outside X joined by an edge to some member of X.
    pub fn adjacent(&self, x: VertexSet) -> VertexSet {
        let reach = x.iter().fold(0u64, |acc, v| acc | self.adjacency[v]);
        VertexSet(reach).difference(x)
    }

    /// Graphviz rendering. Labels are printed only for m > 3.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph coxeter {\n");
        for name in &self.names {
            out.push_str(&format!("  \"{name}\";\n"));
        }
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                let label = self.label(a, b);
                if !label.is_edge() {
                    continue;
                }
                let (na, nb) = (&self.names[a], &self.names[b]);
                match label {
                    Label::Finite(3) => out.push_str(&format!("  \"{na}\" -- \"{nb}\";\n")),
                    other => {
                        out.push_str(&format!("  \"{na}\" -- \"{nb}\" [label=\"{other}\"];\n"))
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Parses the JSON graph file format.
    pub fn parse(text: &[u8]) -> Result<CoxeterGraph, GraphError> {
        let file: GraphFile = serde_json::from_slice(text).map_err(|e| GraphError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let default = if file.infinite_by_default {
            Label::Infinity
        } else {
            Label::COMMUTING
        };
        let mut relations = Vec::with_capacity(file.relations.len());
        for (relation, (a, b, raw)) in file.relations.into_iter().enumerate() {
            let label = match raw {
                RawLabel::Int(0) => Label::Infinity,
                RawLabel::Int(m) if m < 2 => {
                    return Err(GraphError::LabelTooSmall { relation, value: m });
                }
                RawLabel::Int(m) => Label::Finite(
                    u32::try_from(m).map_err(|_| GraphError::LabelTooLarge { relation })?,
                ),
                RawLabel::Text(s) if s == "inf" => Label::Infinity,
                RawLabel::Text(s) => return Err(GraphError::BadLabel { relation, text: s }),
            };
            relations.push((a, b, label));
        }
        CoxeterGraph::new(&file.generators, &relations, default)
    }

    /// Normalized file form: every pair with m ≠ 2 listed once, in canonical order.
    pub fn to_file(&self) -> GraphFile {
        let mut relations = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                let label = self.label(a, b);
                if label != Label::COMMUTING {
                    relations.push((
                        self.names[a].clone(),
                        self.names[b].clone(),
                        RawLabel::Int(i64::from(label.encode())),
                    ));
                }
            }
        }
        GraphFile {
            generators: self.names.clone(),
            relations,
            infinite_by_default: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph file serializes")
    }
}

/// On-disk graph description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String, RawLabel)>,
    #[serde(default)]
    pub infinite_by_default: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawLabel {
    Int(i64),
    Text(String),
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Convenience constructor used heavily in tests: names plus `(a, b, m)` triples,
/// with `m = 0` meaning ∞ and unlisted pairs commuting.
pub fn graph_from_triples(names: &[&str], triples: &[(&str, &str, u32)]) -> CoxeterGraph {
    let rel: Vec<(&str, &str, Label)> = triples
        .iter()
        .map(|&(a, b, m)| {
            (
                a,
                b,
                if m == 0 {
                    Label::Infinity
                } else {
                    Label::Finite(m)
                },
            )
        })
        .collect();
    CoxeterGraph::new(names, &rel, Label::COMMUTING).expect("valid graph")
}
