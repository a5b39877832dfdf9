//! Garside-element conjugation at the level of generator sets.
//!
//! Conjugating a standard generator by the Garside element Δ_V of a spherical
//! subset V either fixes it (when it lies outside V and commutes with V) or
//! moves it by the diagram involution of its component of V. Every algorithm
//! in the crate is phrased in terms of those set images, and conjugating
//! elements are kept symbolic as words of signed Δ factors.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::classify::{
    recognize_connected, spherical_decomposition, IrreducibleType, TypedComponent,
};
use crate::error::TwistError;
use crate::graph::{CoxeterGraph, VertexSet};
use crate::oracle;

/// A permutation of generator indices, defined on a finite domain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Involution {
    map: BTreeMap<usize, usize>,
}

impl Involution {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.map.get(&v).copied()
    }

    pub fn domain(&self) -> VertexSet {
        self.map.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    fn extend(&mut self, other: Involution) {
        self.map.extend(other.map);
    }

    /// Image of a subset of the domain.
    pub fn image(&self, x: VertexSet) -> VertexSet {
        x.iter().map(|v| self.map[&v]).collect()
    }
}

/// Position permutation (0-based) induced by conjugation by Δ on a component.
pub fn delta_position_map(ty: IrreducibleType) -> Vec<usize> {
    let n = ty.rank();
    let mut perm: Vec<usize> = (0..n).collect();
    if !ty.is_twistable() {
        return perm;
    }
    match ty {
        IrreducibleType::A(_) => perm.reverse(),
        IrreducibleType::D(_) | IrreducibleType::I2(_) => perm.swap(0, 1),
        IrreducibleType::E(6) => {
            perm.swap(1, 5);
            perm.swap(2, 4);
        }
        _ => unreachable!("twistable types are A, odd D, E6 and odd I2"),
    }
    perm
}

/// The diagram involution τ with Δ⁻¹ s Δ = τ(s) on a recognized component.
/// Identity for non-twistable types, where Δ is central.
pub fn delta_automorphism(c: &TypedComponent) -> Involution {
    let perm = delta_position_map(c.ty);
    Involution {
        map: perm
            .iter()
            .enumerate()
            .map(|(i, &j)| (c.positions[i], c.positions[j]))
            .collect(),
    }
}

/// Involution of Δ_V on all of V (componentwise), if V is spherical.
pub fn delta_map(g: &CoxeterGraph, v: VertexSet) -> Result<Involution, TwistError> {
    let comps = spherical_decomposition(g, v).ok_or(TwistError::NotSpherical)?;
    let mut inv = Involution::default();
    for c in &comps {
        inv.extend(delta_automorphism(c));
    }
    Ok(inv)
}

pub(crate) fn conjugate_with(
    g: &CoxeterGraph,
    v: VertexSet,
    tau: &Involution,
    x: VertexSet,
) -> Result<VertexSet, usize> {
    let mut out = VertexSet::EMPTY;
    for s in x.iter() {
        if v.contains(s) {
            out = out.with(tau.get(s).expect("involution covers V"));
        } else if !g.neighbours(s).is_disjoint(v) {
            return Err(s);
        } else {
            out = out.with(s);
        }
    }
    Ok(out)
}

/// Image of the generator set X under conjugation by Δ_V^{±1}.
///
/// The sign does not change the image since τ is an involution.
pub fn delta_conjugate_set(
    g: &CoxeterGraph,
    v: VertexSet,
    x: VertexSet,
    _sign: Sign,
) -> Result<VertexSet, TwistError> {
    g.check_subset(v)?;
    g.check_subset(x)?;
    let tau = delta_map(g, v)?;
    conjugate_with(g, v, &tau, x)
        .map_err(|generator| TwistError::DeltaActionUndefined { generator })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One signed Garside factor Δ_V^{±1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistFactor {
    pub subset: VertexSet,
    pub sign: Sign,
}

impl TwistFactor {
    pub fn plus(subset: VertexSet) -> Self {
        TwistFactor {
            subset,
            sign: Sign::Plus,
        }
    }

    pub fn minus(subset: VertexSet) -> Self {
        TwistFactor {
            subset,
            sign: Sign::Minus,
        }
    }
}

/// Formal product of signed Garside factors, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ConjugatorWord {
    factors: Vec<TwistFactor>,
}

impl ConjugatorWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: Vec<TwistFactor>) -> Self {
        ConjugatorWord { factors }
    }

    pub fn factors(&self) -> &[TwistFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, f: TwistFactor) {
        self.factors.push(f);
    }

    /// `self` followed by `f`.
    pub fn then(&self, f: TwistFactor) -> Self {
        let mut out = self.clone();
        out.push(f);
        out
    }

    /// JSON list of `{"delta_of": [...], "sign": ±1}`; with `expand`, each
    /// factor also carries `letters`, a positive word for Δ_V (null when the
    /// oracle cannot expand one of V's components).
    pub fn to_json(&self, g: &CoxeterGraph, expand: bool) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|f| {
                    let mut obj = json!({
                        "delta_of": g.set_names(f.subset),
                        "sign": f.sign.as_i8(),
                    });
                    if expand {
                        obj["letters"] = match expand_factor(g, f.subset) {
                            Some(letters) => json!(letters),
                            None => Value::Null,
                        };
                    }
                    obj
                })
                .collect(),
        )
    }

    pub fn to_text(&self, g: &CoxeterGraph) -> String {
        if self.factors.is_empty() {
            return "1".to_owned();
        }
        self.factors
            .iter()
            .map(|f| match f.sign {
                Sign::Plus => format!("Δ{}", g.format_set(f.subset)),
                Sign::Minus => format!("Δ{}^-1", g.format_set(f.subset)),
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }
}

/// Positive word for Δ_V as generator names: the concatenation of the
/// expansions of V's irreducible components, which pairwise commute.
pub fn expand_factor(g: &CoxeterGraph, v: VertexSet) -> Option<Vec<String>> {
    let comps = spherical_decomposition(g, v)?;
    let mut out = Vec::new();
    for c in &comps {
        out.extend(
            oracle::expand_delta(c)
                .ok()?
                .into_iter()
                .map(|s| g.name(s).to_owned()),
        );
    }
    Some(out)
}

/// One step of the standard-parabolic orbit search.
///
/// With Y′ the component of Γ_{Y∪{t}} containing `t`: when Y′ is twistable
/// returns Z = Δ_{Y′}⁻¹ Y Δ_{Y′} and the factor Δ_{Y′}; `Ok(None)` otherwise.
pub fn elementary_twist(
    g: &CoxeterGraph,
    y: VertexSet,
    t: usize,
) -> Result<Option<(VertexSet, TwistFactor)>, TwistError> {
    g.check_subset(y)?;
    if !g.adjacent(y).contains(t) {
        return Err(TwistError::NotAdjacent(t));
    }
    let yt = y.with(t);
    let comp = g.component_containing(yt, t);
    let Some(c) = recognize_connected(g, comp).filter(TypedComponent::is_twistable) else {
        return Ok(None);
    };
    let tau = delta_automorphism(&c);
    let moved = tau.get(t).expect("t lies in its own component");
    let z = y.difference(comp).union(comp.without(moved));
    Ok(Some((z, TwistFactor::plus(comp))))
}

/// Target of the elementary ribbon r_{T,s} = Δ_{U∖{s}}⁻¹ Δ_U, where U is the
/// component of Γ_{T∪{s}} containing `s`. `Ok(None)` when U is not spherical.
pub fn elementary_ribbon_target(
    g: &CoxeterGraph,
    t: VertexSet,
    s: usize,
) -> Result<Option<(VertexSet, ConjugatorWord)>, TwistError> {
    g.check_subset(t)?;
    if !g.adjacent(t).contains(s) {
        return Err(TwistError::NotAdjacent(s));
    }
    let u = g.component_containing(t.with(s), s);
    let Some(c) = recognize_connected(g, u) else {
        return Ok(None);
    };
    let tau = delta_automorphism(&c);
    let moved = tau.get(s).expect("s lies in U");
    let target = t.difference(u).union(u.without(moved));
    let word =
        ConjugatorWord::from_factors(vec![TwistFactor::minus(u.without(s)), TwistFactor::plus(u)]);
    Ok(Some((target, word)))
}

/// Applies the factors of `w` to X from left to right.
pub fn apply_word(
    g: &CoxeterGraph,
    x: VertexSet,
    w: &ConjugatorWord,
) -> Result<VertexSet, TwistError> {
    g.check_subset(x)?;
    let mut cur = x;
    for (index, f) in w.factors.iter().enumerate() {
        g.check_subset(f.subset)?;
        let tau = delta_map(g, f.subset)?;
        cur = conjugate_with(g, f.subset, &tau, cur)
            .map_err(|generator| TwistError::WordFactor { index, generator })?;
    }
    Ok(cur)
}

/// Pointwise image of each generator of X under `w`.
pub fn apply_word_pointwise(
    g: &CoxeterGraph,
    x: VertexSet,
    w: &ConjugatorWord,
) -> Result<BTreeMap<usize, usize>, TwistError> {
    x.iter()
        .map(|s| {
            let img = apply_word(g, VertexSet::singleton(s), w)?;
            Ok((s, img.first().expect("singletons map to singletons")))
        })
        .collect()
}
