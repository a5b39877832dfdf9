//! Deciding whether a standard parabolic subgroup A_X is conjugacy stable.
//!
//! A_X fails to be stable exactly when one of three obstructions shows up:
//!
//! 1. some subset X₁ ⊆ X can be moved by twists in the whole graph onto a
//!    subset of X with its connected components landing in positions that
//!    twists inside X cannot reproduce;
//! 2. a `D_{2k}` (k > 2) component of some T ⊆ X extends at its tail to an odd
//!    `D` through a generator outside X, and no generator of X does the same;
//! 3. a `D_4` component of some T ⊆ X extends at a leaf to an odd `D` from
//!    outside X, and neither the same leaf nor both other leaves can be
//!    extended that way from inside X.
//!
//! Subsets are scanned largest first, so the witness reported is the one on
//! the largest subset where an obstruction occurs.

use indexmap::IndexMap;
use serde_json::{json, Value};

use crate::classify::{
    classify_group, is_spherical, recognize_connected, Applicability, GroupFamilyReport,
    IrreducibleType, TypedComponent,
};
use crate::error::{StabilityError, TwistError};
use crate::graph::{canonical_subset_cmp, CoxeterGraph, VertexSet};
use crate::twist::{apply_word, conjugate_with, delta_automorphism, ConjugatorWord, TwistFactor};

/// Default cap on |X| for [`decide_stability`].
pub const DEFAULT_MAX_SUBSET_SIZE: usize = 16;

/// Where each connected component of the starting subset currently sits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentTuple(pub Vec<VertexSet>);

impl ComponentTuple {
    /// Components of Γ_{X₁} ordered by smallest generator.
    pub fn initial(g: &CoxeterGraph, x1: VertexSet) -> Self {
        ComponentTuple(g.components_unchecked(x1))
    }

    pub fn union(&self) -> VertexSet {
        self.0.iter().fold(VertexSet::EMPTY, |acc, &p| acc.union(p))
    }

    pub fn positions(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position-by-position image under a word.
    pub fn apply_word(
        &self,
        g: &CoxeterGraph,
        w: &ConjugatorWord,
    ) -> Result<ComponentTuple, TwistError> {
        self.0
            .iter()
            .map(|&p| apply_word(g, p, w))
            .collect::<Result<_, _>>()
            .map(ComponentTuple)
    }

    pub fn to_json(&self, g: &CoxeterGraph) -> Value {
        Value::Array(self.0.iter().map(|&p| json!(g.set_names(p))).collect())
    }

    pub fn to_text(&self, g: &CoxeterGraph) -> String {
        let parts: Vec<String> = self.0.iter().map(|&p| g.format_set(p)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Twists every position of the tuple by Δ_{Y′}, Y′ the component of
/// Γ_{Y∪{t}} containing `t` with Y the union of the tuple. `Ok(None)` when
/// Y′ is not twistable.
pub fn tuple_twist(
    g: &CoxeterGraph,
    tuple: &ComponentTuple,
    t: usize,
) -> Result<Option<(ComponentTuple, TwistFactor)>, TwistError> {
    let y = tuple.union();
    g.check_subset(y)?;
    if !g.adjacent(y).contains(t) {
        return Err(TwistError::NotAdjacent(t));
    }
    let comp = g.component_containing(y.with(t), t);
    let Some(c) = recognize_connected(g, comp).filter(TypedComponent::is_twistable) else {
        return Ok(None);
    };
    let tau = delta_automorphism(&c);
    let moved = tuple
        .0
        .iter()
        .map(|&p| conjugate_with(g, comp, &tau, p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|generator| TwistError::DeltaActionUndefined { generator })?;
    Ok(Some((ComponentTuple(moved), TwistFactor::plus(comp))))
}

/// Reachable component tuples, each with the first word found for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleOrbit {
    entries: IndexMap<ComponentTuple, ConjugatorWord>,
}

impl TupleOrbit {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, t: &ComponentTuple) -> bool {
        self.entries.contains_key(t)
    }

    pub fn word(&self, t: &ComponentTuple) -> Option<&ConjugatorWord> {
        self.entries.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentTuple, &ConjugatorWord)> {
        self.entries.iter()
    }
}

fn tuple_search(
    g: &CoxeterGraph,
    x1: VertexSet,
    allowed: impl Fn(usize) -> bool,
    mut stop: impl FnMut(&ComponentTuple) -> bool,
) -> (TupleOrbit, Option<ComponentTuple>) {
    let mut entries = IndexMap::new();
    entries.insert(ComponentTuple::initial(g, x1), ConjugatorWord::identity());
    let mut cursor = 0;
    while cursor < entries.len() {
        let (tuple, word) = {
            let (t, w) = entries.get_index(cursor).expect("cursor in range");
            (t.clone(), w.clone())
        };
        cursor += 1;
        for t in g.adjacent(tuple.union()).iter().filter(|&t| allowed(t)) {
            let Some((next, factor)) =
                tuple_twist(g, &tuple, t).expect("positions are components of their union")
            else {
                continue;
            };
            if !entries.contains_key(&next) {
                let hit = stop(&next);
                entries.insert(next.clone(), word.then(factor));
                if hit {
                    return (TupleOrbit { entries }, Some(next));
                }
            }
        }
    }
    (TupleOrbit { entries }, None)
}

/// Closure of the initial tuple of X₁ under tuple twists at generators
/// accepted by `allowed`, in breadth-first order.
pub fn tuple_orbit(g: &CoxeterGraph, x1: VertexSet, allowed: impl Fn(usize) -> bool) -> TupleOrbit {
    debug_assert!(g.contains_set(x1));
    tuple_search(g, x1, allowed, |_| false).0
}

/// Location of a D-type obstruction: the vertex of the D component where the
/// outside generator attaches, and that generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DException {
    pub site: usize,
    pub external: usize,
}

fn check_d_preconditions(
    g: &CoxeterGraph,
    x: VertexSet,
    y: VertexSet,
    yp: &TypedComponent,
) -> Result<(), StabilityError> {
    g.check_subset(x)?;
    if !y.is_subset(x) {
        return Err(StabilityError::Precondition("Y must be a subset of X"));
    }
    let verts = yp.vertices();
    if verts.is_empty() || !verts.is_subset(y) || g.component_containing(y, yp.at(1)) != verts {
        return Err(StabilityError::Precondition(
            "component must be a connected component of Y",
        ));
    }
    Ok(())
}

/// Whether adding `t` to Y turns the component holding `anchor` into an odd D.
fn extends_to_odd_d(g: &CoxeterGraph, y: VertexSet, anchor: usize, t: usize) -> bool {
    let comp = g.component_containing(y.with(t), anchor);
    recognize_connected(g, comp).is_some_and(|c| c.ty.is_odd_d())
}

/// The `D_{2k}`, k > 2, obstruction at the tail vertex of `yp`.
pub fn check_d2k_exception(
    g: &CoxeterGraph,
    x: VertexSet,
    y: VertexSet,
    yp: &TypedComponent,
) -> Result<Option<DException>, StabilityError> {
    check_d_preconditions(g, x, y, yp)?;
    match yp.ty {
        IrreducibleType::D(n) if n % 2 == 0 && n > 4 => {}
        _ => {
            return Err(StabilityError::Precondition(
                "component must be of type D(2k), k > 2",
            ))
        }
    }
    let tail = yp.at(yp.rank());
    let near = g.neighbours(tail);
    let rescued = near
        .intersection(x)
        .iter()
        .any(|t| extends_to_odd_d(g, y, tail, t));
    if rescued {
        return Ok(None);
    }
    Ok(near
        .difference(x)
        .iter()
        .find(|&t| extends_to_odd_d(g, y, tail, t))
        .map(|external| DException {
            site: tail,
            external,
        }))
}

/// The `D_4` obstruction at one of the three leaves of `yp`.
pub fn check_d4_exception(
    g: &CoxeterGraph,
    x: VertexSet,
    y: VertexSet,
    yp: &TypedComponent,
) -> Result<Option<DException>, StabilityError> {
    check_d_preconditions(g, x, y, yp)?;
    if yp.ty != IrreducibleType::D(4) {
        return Err(StabilityError::Precondition("component must be of type D4"));
    }
    let leaves = [yp.at(1), yp.at(2), yp.at(4)];
    let inside_rescue = |leaf: usize| {
        g.neighbours(leaf)
            .intersection(x)
            .iter()
            .any(|t| extends_to_odd_d(g, y, leaf, t))
    };
    for (i, &leaf) in leaves.iter().enumerate() {
        let Some(external) = g
            .neighbours(leaf)
            .difference(x)
            .iter()
            .find(|&t| extends_to_odd_d(g, y, leaf, t))
        else {
            continue;
        };
        if inside_rescue(leaf) {
            continue;
        }
        let others: Vec<usize> = leaves
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &l)| l)
            .collect();
        if others.iter().all(|&l| inside_rescue(l)) {
            continue;
        }
        return Ok(Some(DException {
            site: leaf,
            external,
        }));
    }
    Ok(None)
}

/// Machine-checkable evidence that A_X is not conjugacy stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Twists in the whole graph carry the components of `subset` to
    /// `reached` (via `word`), which lies in X but is not reachable by
    /// twists inside X.
    Permutation {
        subset: VertexSet,
        initial: ComponentTuple,
        reached: ComponentTuple,
        word: ConjugatorWord,
    },
    D2kException {
        subset: VertexSet,
        component: TypedComponent,
        site: DException,
    },
    D4Exception {
        subset: VertexSet,
        component: TypedComponent,
        site: DException,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Permutation { .. } => "permutation",
            Witness::D2kException { .. } => "d2k_exception",
            Witness::D4Exception { .. } => "d4_exception",
        }
    }

    pub fn subset(&self) -> VertexSet {
        match self {
            Witness::Permutation { subset, .. }
            | Witness::D2kException { subset, .. }
            | Witness::D4Exception { subset, .. } => *subset,
        }
    }

    pub fn to_json(&self, g: &CoxeterGraph, expand: bool) -> Value {
        match self {
            Witness::Permutation {
                subset,
                initial,
                reached,
                word,
            } => json!({
                "kind": self.kind(),
                "subset": g.set_names(*subset),
                "initial": initial.to_json(g),
                "tuple": reached.to_json(g),
                "word": word.to_json(g, expand),
            }),
            Witness::D2kException {
                subset,
                component,
                site,
            }
            | Witness::D4Exception {
                subset,
                component,
                site,
            } => json!({
                "kind": self.kind(),
                "subset": g.set_names(*subset),
                "component": component.to_json(g),
                "site": g.name(site.site),
                "external": g.name(site.external),
            }),
        }
    }

    pub fn to_text(&self, g: &CoxeterGraph) -> String {
        match self {
            Witness::Permutation { subset, initial, reached, word } => format!(
                "components of {} move from {} to {} via {}, which twists inside X cannot do",
                g.format_set(*subset),
                initial.to_text(g),
                reached.to_text(g),
                word.to_text(g)
            ),
            Witness::D2kException { subset, component, site }
            | Witness::D4Exception { subset, component, site } => format!(
                "{} component {} of {} extends to an odd D at {} through {} outside X, without rescue inside X",
                component.ty,
                g.format_set(component.vertices()),
                g.format_set(*subset),
                g.name(site.site),
                g.name(site.external)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    NotStable(Witness),
    Inapplicable(String),
}

impl StabilityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            StabilityVerdict::Stable => "stable",
            StabilityVerdict::NotStable(_) => "not_stable",
            StabilityVerdict::Inapplicable(_) => "inapplicable",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            StabilityVerdict::NotStable(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityOptions {
    pub max_subset_size: usize,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions {
            max_subset_size: DEFAULT_MAX_SUBSET_SIZE,
        }
    }
}

fn d_exception(
    g: &CoxeterGraph,
    x: VertexSet,
    t: VertexSet,
) -> Result<Option<Witness>, StabilityError> {
    for comp in g.components_unchecked(t) {
        let Some(c) = recognize_connected(g, comp) else {
            continue;
        };
        match c.ty {
            IrreducibleType::D(4) => {
                if let Some(site) = check_d4_exception(g, x, t, &c)? {
                    return Ok(Some(Witness::D4Exception {
                        subset: t,
                        component: c,
                        site,
                    }));
                }
            }
            IrreducibleType::D(n) if n % 2 == 0 => {
                if let Some(site) = check_d2k_exception(g, x, t, &c)? {
                    return Ok(Some(Witness::D2kException {
                        subset: t,
                        component: c,
                        site,
                    }));
                }
            }
            _ => {}
        }
    }
    Ok(None)
}

fn permutation_obstruction(g: &CoxeterGraph, x: VertexSet, x1: VertexSet) -> Option<Witness> {
    let internal = tuple_orbit(g, x1, |t| x.contains(t));
    let (external, hit) = tuple_search(
        g,
        x1,
        |_| true,
        |tuple| tuple.union().is_subset(x) && !internal.contains(tuple),
    );
    let reached = hit?;
    let word = external.word(&reached).expect("hit is recorded").clone();
    Some(Witness::Permutation {
        subset: x1,
        initial: ComponentTuple::initial(g, x1),
        reached,
        word,
    })
}

/// Nonempty subsets of X, largest first, ties broken lexicographically.
fn scan_order(x: VertexSet) -> Vec<VertexSet> {
    let mut subsets: Vec<VertexSet> = x.subsets().filter(|s| !s.is_empty()).collect();
    subsets.sort_by(canonical_subset_cmp);
    subsets
}

/// Decides conjugacy stability of A_X in A_S, assuming the hypotheses hold.
pub fn decide_stability(
    g: &CoxeterGraph,
    x: VertexSet,
    opts: StabilityOptions,
) -> Result<StabilityVerdict, StabilityError> {
    g.check_subset(x)?;
    if x.len() > opts.max_subset_size {
        return Err(StabilityError::SubsetTooLarge {
            size: x.len(),
            cap: opts.max_subset_size,
        });
    }
    let subsets = scan_order(x);
    for &t in &subsets {
        if let Some(w) = d_exception(g, x, t)? {
            return Ok(StabilityVerdict::NotStable(w));
        }
    }
    for &x1 in &subsets {
        if let Some(w) = permutation_obstruction(g, x, x1) {
            return Ok(StabilityVerdict::NotStable(w));
        }
    }
    Ok(StabilityVerdict::Stable)
}

/// Re-derives a witness from scratch against (g, X).
pub fn verify_witness(g: &CoxeterGraph, x: VertexSet, w: &Witness) -> bool {
    match w {
        Witness::Permutation {
            subset,
            initial,
            reached,
            word,
        } => {
            subset.is_subset(x)
                && *initial == ComponentTuple::initial(g, *subset)
                && initial.apply_word(g, word).as_ref() == Ok(reached)
                && reached.union().is_subset(x)
                && !tuple_orbit(g, *subset, |t| x.contains(t)).contains(reached)
        }
        Witness::D2kException {
            subset,
            component,
            site,
        } => {
            subset.is_subset(x)
                && recognize_connected(g, component.vertices()).as_ref() == Some(component)
                && check_d2k_exception(g, x, *subset, component) == Ok(Some(*site))
        }
        Witness::D4Exception {
            subset,
            component,
            site,
        } => {
            subset.is_subset(x)
                && recognize_connected(g, component.vertices()).as_ref() == Some(component)
                && check_d4_exception(g, x, *subset, component) == Ok(Some(*site))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Force,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    Stability,
    QuasiStability,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Stability => "stability",
            Semantics::QuasiStability => "quasi_stability",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: StabilityVerdict,
    pub semantics: Semantics,
    /// The verdict also speaks about full conjugacy stability.
    pub full_stability: bool,
    /// False when the decision was forced on a family with unknown hypotheses.
    pub hypotheses_verified: bool,
    pub family: GroupFamilyReport,
}

impl StabilityReport {
    pub fn to_json(&self, g: &CoxeterGraph, expand: bool) -> Value {
        let reason = match &self.verdict {
            StabilityVerdict::Inapplicable(r) => Some(r.clone()),
            _ => None,
        };
        json!({
            "verdict": self.verdict.as_str(),
            "semantics": self.semantics.as_str(),
            "full_stability": self.full_stability,
            "hypotheses_verified": self.hypotheses_verified,
            "reason": reason,
            "witness": self.verdict.witness().map(|w| w.to_json(g, expand)),
            "family": self.family.to_json(g),
        })
    }
}

/// Runs the decision after checking which hypotheses are known for the group.
pub fn decide_with_applicability(
    g: &CoxeterGraph,
    x: VertexSet,
    mode: Mode,
    opts: StabilityOptions,
) -> Result<StabilityReport, StabilityError> {
    g.check_subset(x)?;
    let family = classify_group(g);
    let report = match family.applicability {
        Applicability::FullStability => StabilityReport {
            verdict: decide_stability(g, x, opts)?,
            semantics: Semantics::Stability,
            full_stability: true,
            hypotheses_verified: true,
            family,
        },
        Applicability::QuasiStability => StabilityReport {
            verdict: decide_stability(g, x, opts)?,
            semantics: Semantics::QuasiStability,
            full_stability: is_spherical(g, x),
            hypotheses_verified: true,
            family,
        },
        Applicability::Unknown if mode == Mode::Force => StabilityReport {
            verdict: decide_stability(g, x, opts)?,
            semantics: Semantics::Stability,
            full_stability: true,
            hypotheses_verified: false,
            family,
        },
        Applicability::Unknown => StabilityReport {
            verdict: StabilityVerdict::Inapplicable(family.justification.clone()),
            semantics: Semantics::Stability,
            full_stability: false,
            hypotheses_verified: false,
            family,
        },
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_triples;

    fn a3() -> CoxeterGraph {
        graph_from_triples(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 3)])
    }

    fn d(n: usize) -> CoxeterGraph {
        let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut triples = vec![(refs[0], refs[2], 3), (refs[1], refs[2], 3)];
        for i in 2..n - 1 {
            triples.push((refs[i], refs[i + 1], 3));
        }
        graph_from_triples(&refs, &triples)
    }

    fn set(g: &CoxeterGraph, names: &[&str]) -> VertexSet {
        g.subset_from_names(names).unwrap()
    }

    fn tuple(g: &CoxeterGraph, parts: &[&[&str]]) -> ComponentTuple {
        ComponentTuple(parts.iter().map(|p| set(g, p)).collect())
    }

    fn decide(g: &CoxeterGraph, x: VertexSet) -> StabilityVerdict {
        decide_stability(g, x, StabilityOptions::default()).unwrap()
    }

    #[test]
    fn tuple_twists_in_a3() {
        let g = a3();
        let (t, f) = tuple_twist(&g, &tuple(&g, &[&["a"], &["c"]]), 1)
            .unwrap()
            .unwrap();
        assert_eq!(t, tuple(&g, &[&["c"], &["a"]]));
        assert_eq!(f, TwistFactor::plus(g.all()));
        let (t, _) = tuple_twist(&g, &tuple(&g, &[&["a", "b"]]), 2)
            .unwrap()
            .unwrap();
        assert_eq!(t, tuple(&g, &[&["b", "c"]]));
        let b2 = graph_from_triples(&["a", "b"], &[("a", "b", 4)]);
        assert_eq!(tuple_twist(&b2, &tuple(&b2, &[&["a"]]), 1).unwrap(), None);
    }

    #[test]
    fn tuple_orbits_in_a3() {
        let g = a3();
        let ac = set(&g, &["a", "c"]);
        let internal = tuple_orbit(&g, ac, |t| ac.contains(t));
        assert_eq!(internal.len(), 1);
        let external = tuple_orbit(&g, ac, |_| true);
        let got: Vec<ComponentTuple> = external.iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(
            got,
            vec![tuple(&g, &[&["a"], &["c"]]), tuple(&g, &[&["c"], &["a"]])]
        );
        let a = set(&g, &["a"]);
        let singles: Vec<ComponentTuple> = tuple_orbit(&g, a, |_| true)
            .iter()
            .map(|(t, _)| t.clone())
            .collect();
        assert_eq!(
            singles,
            vec![
                tuple(&g, &[&["a"]]),
                tuple(&g, &[&["b"]]),
                tuple(&g, &[&["c"]])
            ]
        );
    }

    #[test]
    fn non_spherical_start_has_trivial_orbit() {
        let g = graph_from_triples(&["a", "b", "c"], &[("a", "b", 0), ("b", "c", 4)]);
        let ab = set(&g, &["a", "b"]);
        assert_eq!(tuple_orbit(&g, ab, |_| true).len(), 1);
    }

    #[test]
    fn d2k_exception_in_d7() {
        let g = d(7);
        let x = set(&g, &["s1", "s2", "s3", "s4", "s5", "s6"]);
        let c = recognize_connected(&g, x).unwrap();
        assert_eq!(c.ty, IrreducibleType::D(6));
        let hit = check_d2k_exception(&g, x, x, &c).unwrap().unwrap();
        assert_eq!((g.name(hit.site), g.name(hit.external)), ("s6", "s7"));

        let d6 = d(6);
        let c6 = recognize_connected(&d6, d6.all()).unwrap();
        assert_eq!(
            check_d2k_exception(&d6, d6.all(), d6.all(), &c6).unwrap(),
            None
        );
    }

    #[test]
    fn d2k_extension_to_e7_is_not_an_obstruction() {
        // D6 whose prong s1 gets an outside neighbour: Y ∪ {u} is E7-shaped.
        let mut triples = vec![("s1", "s3", 3), ("s2", "s3", 3), ("s1", "u", 3)];
        triples.extend([("s3", "s4", 3), ("s4", "s5", 3), ("s5", "s6", 3)]);
        let g = graph_from_triples(&["s1", "s2", "s3", "s4", "s5", "s6", "u"], &triples);
        let x = g.all().without(g.index_of("u").unwrap());
        let c = recognize_connected(&g, x).unwrap();
        assert_eq!(check_d2k_exception(&g, x, x, &c).unwrap(), None);
        assert_eq!(
            recognize_connected(&g, g.all()).map(|c| c.ty),
            Some(IrreducibleType::E(7))
        );
    }

    #[test]
    fn d4_exception_and_rescue() {
        let g = d(5);
        let x = set(&g, &["s1", "s2", "s3", "s4"]);
        let c = recognize_connected(&g, x).unwrap();
        let hit = check_d4_exception(&g, x, x, &c).unwrap().unwrap();
        assert_eq!((g.name(hit.site), g.name(hit.external)), ("s4", "s5"));

        let rescued = graph_from_triples(
            &["s1", "s2", "s3", "s4", "v", "w"],
            &[
                ("s1", "s3", 3),
                ("s2", "s3", 3),
                ("s3", "s4", 3),
                ("s4", "v", 3),
                ("s4", "w", 3),
            ],
        );
        let x = set(&rescued, &["s1", "s2", "s3", "s4", "w"]);
        let y = set(&rescued, &["s1", "s2", "s3", "s4"]);
        let c = recognize_connected(&rescued, y).unwrap();
        assert_eq!(check_d4_exception(&rescued, x, y, &c).unwrap(), None);

        let d4 = d(4);
        let c = recognize_connected(&d4, d4.all()).unwrap();
        assert_eq!(
            check_d4_exception(&d4, d4.all(), d4.all(), &c).unwrap(),
            None
        );
    }

    #[test]
    fn d4_rescue_through_both_other_leaves() {
        // Outside generator v at leaf s4; inside generators p, q at leaves s1, s2.
        let g = graph_from_triples(
            &["p", "q", "s1", "s2", "s3", "s4", "v"],
            &[
                ("s1", "s3", 3),
                ("s2", "s3", 3),
                ("s3", "s4", 3),
                ("s4", "v", 3),
                ("s1", "p", 3),
                ("s2", "q", 3),
            ],
        );
        let y = set(&g, &["s1", "s2", "s3", "s4"]);
        let c = recognize_connected(&g, y).unwrap();
        let both = set(&g, &["s1", "s2", "s3", "s4", "p", "q"]);
        assert_eq!(check_d4_exception(&g, both, y, &c).unwrap(), None);
        let only_p = set(&g, &["s1", "s2", "s3", "s4", "p"]);
        let hit = check_d4_exception(&g, only_p, y, &c).unwrap().unwrap();
        assert_eq!((g.name(hit.site), g.name(hit.external)), ("s2", "q"));
        let with_q = set(&g, &["s1", "s2", "s3", "s4", "q"]);
        let hit = check_d4_exception(&g, with_q, y, &c).unwrap().unwrap();
        assert_eq!((g.name(hit.site), g.name(hit.external)), ("s1", "p"));
    }

    #[test]
    fn d_check_preconditions() {
        let g = d(5);
        let x = set(&g, &["s1", "s2", "s3", "s4"]);
        let c = recognize_connected(&g, x).unwrap();
        assert!(matches!(
            check_d2k_exception(&g, x, x, &c),
            Err(StabilityError::Precondition(_))
        ));
        assert!(matches!(
            check_d4_exception(&g, set(&g, &["s1"]), x, &c),
            Err(StabilityError::Precondition(_))
        ));
    }

    #[test]
    fn a3_verdicts() {
        let g = a3();
        let ac = set(&g, &["a", "c"]);
        match decide(&g, ac) {
            StabilityVerdict::NotStable(w @ Witness::Permutation { .. }) => {
                let Witness::Permutation {
                    subset,
                    reached,
                    word,
                    ..
                } = &w
                else {
                    unreachable!()
                };
                assert_eq!(*subset, ac);
                assert_eq!(*reached, tuple(&g, &[&["c"], &["a"]]));
                assert_eq!(word.factors(), [TwistFactor::plus(g.all())]);
                assert!(verify_witness(&g, ac, &w));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(decide(&g, set(&g, &["a", "b"])), StabilityVerdict::Stable);
        assert_eq!(decide(&g, g.all()), StabilityVerdict::Stable);
    }

    #[test]
    fn d5_d4_witness() {
        let g = d(5);
        let x = set(&g, &["s1", "s2", "s3", "s4"]);
        let v = decide(&g, x);
        let w = v.witness().unwrap();
        assert_eq!(w.kind(), "d4_exception");
        assert!(verify_witness(&g, x, w));
    }

    #[test]
    fn i2_5_single_generator() {
        let g = graph_from_triples(&["a", "b"], &[("a", "b", 5)]);
        assert_eq!(decide(&g, set(&g, &["a"])), StabilityVerdict::Stable);
    }

    #[test]
    fn cap_is_enforced() {
        let g = a3();
        let opts = StabilityOptions { max_subset_size: 2 };
        assert_eq!(
            decide_stability(&g, g.all(), opts),
            Err(StabilityError::SubsetTooLarge { size: 3, cap: 2 })
        );
    }

    #[test]
    fn applicability_modes() {
        let fc = graph_from_triples(
            &["a", "b", "c", "d"],
            &[("a", "b", 3), ("b", "c", 3), ("c", "d", 3), ("a", "d", 0)],
        );
        let r =
            decide_with_applicability(&fc, set(&fc, &["a", "b"]), Mode::Auto, Default::default())
                .unwrap();
        assert_eq!(r.semantics, Semantics::QuasiStability);
        assert!(r.full_stability);
        assert!(r.hypotheses_verified);
        let r =
            decide_with_applicability(&fc, set(&fc, &["a", "d"]), Mode::Auto, Default::default())
                .unwrap();
        assert!(!r.full_stability);

        let unknown = graph_from_triples(
            &["a", "b", "c", "d"],
            &[("a", "b", 3), ("b", "c", 3), ("a", "c", 3), ("a", "d", 3)],
        );
        let r = decide_with_applicability(
            &unknown,
            set(&unknown, &["a", "b"]),
            Mode::Auto,
            Default::default(),
        )
        .unwrap();
        assert!(matches!(r.verdict, StabilityVerdict::Inapplicable(_)));
        let forced = decide_with_applicability(
            &unknown,
            set(&unknown, &["a", "b"]),
            Mode::Force,
            Default::default(),
        )
        .unwrap();
        assert!(!forced.hypotheses_verified);
        assert!(!matches!(forced.verdict, StabilityVerdict::Inapplicable(_)));
    }
}
