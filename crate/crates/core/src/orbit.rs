//! Conjugacy of standard parabolic subgroups by breadth-first search over
//! elementary twists.

use indexmap::IndexMap;
use serde_json::{json, Value};

use crate::graph::{CoxeterGraph, VertexSet};
use crate::twist::{elementary_twist, ConjugatorWord};

/// Every subset conjugate to the starting one, with a conjugating word.
/// Entries are kept in discovery order; the first entry is `(X, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    entries: IndexMap<VertexSet, ConjugatorWord>,
}

impl OrbitTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, y: VertexSet) -> bool {
        self.entries.contains_key(&y)
    }

    pub fn word(&self, y: VertexSet) -> Option<&ConjugatorWord> {
        self.entries.get(&y)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, &ConjugatorWord)> {
        self.entries.iter().map(|(k, w)| (*k, w))
    }

    pub fn keys(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.entries.keys().copied()
    }

    pub fn to_json(&self, g: &CoxeterGraph, expand: bool) -> Value {
        Value::Array(
            self.iter()
                .map(|(y, w)| json!({ "subset": g.set_names(y), "word": w.to_json(g, expand) }))
                .collect(),
        )
    }
}

/// Runs the search from `x`, stopping as soon as `stop` accepts a new subset.
fn search(
    g: &CoxeterGraph,
    x: VertexSet,
    mut stop: impl FnMut(VertexSet) -> bool,
) -> (OrbitTable, Option<VertexSet>) {
    debug_assert!(g.contains_set(x));
    let mut entries = IndexMap::new();
    entries.insert(x, ConjugatorWord::identity());
    let mut cursor = 0;
    while cursor < entries.len() {
        let (y, word) = {
            let (y, w) = entries.get_index(cursor).expect("cursor in range");
            (*y, w.clone())
        };
        cursor += 1;
        for t in g.adjacent(y).iter() {
            let Some((z, factor)) = elementary_twist(g, y, t).expect("t is adjacent to y") else {
                continue;
            };
            if !entries.contains_key(&z) {
                entries.insert(z, word.then(factor));
                if stop(z) {
                    return (OrbitTable { entries }, Some(z));
                }
            }
        }
    }
    (OrbitTable { entries }, None)
}

/// The full list of standard parabolic subgroups conjugate to A_X.
pub fn orbit(g: &CoxeterGraph, x: VertexSet) -> OrbitTable {
    search(g, x, |_| false).0
}

/// A word conjugating A_X onto A_{X′}, or `None` when they are not conjugate.
pub fn conjugator(g: &CoxeterGraph, x: VertexSet, target: VertexSet) -> Option<ConjugatorWord> {
    if x.len() != target.len() {
        return None;
    }
    if x == target {
        return Some(ConjugatorWord::identity());
    }
    let (table, hit) = search(g, x, |z| z == target);
    hit.and_then(|z| table.word(z).cloned())
}
