//! Property checks shared by the property suite and the acceptance run.

use std::collections::BTreeSet;

use parabolic_core::twist::apply_word_pointwise;
use parabolic_core::{
    apply_word, classify_group, decide_stability, decide_with_applicability, delta_map,
    elementary_ribbon_target, elementary_twist, orbit, recognize_component, tuple_orbit,
    verify_witness, CoxeterGraph, IrreducibleType, Mode, StabilityOptions, StabilityVerdict,
    VertexSet,
};
use proptest::prelude::*;

use super::{map_set, renamed};

fn is_label_preserving(g: &CoxeterGraph, map: &[(usize, usize)]) -> bool {
    map.iter()
        .all(|&(a, fa)| map.iter().all(|&(b, fb)| g.label(a, b) == g.label(fa, fb)))
}

pub fn graph_structure(g: &CoxeterGraph, x: VertexSet) -> Result<(), TestCaseError> {
    let comps = g.components(x).unwrap();
    let mut union = VertexSet::EMPTY;
    for c in &comps {
        prop_assert!(c.is_disjoint(union));
        prop_assert!(g.is_connected(*c));
        union = union.union(*c);
    }
    prop_assert_eq!(union, x);
    prop_assert!(g.adjacent(x).is_disjoint(x));
    let again = CoxeterGraph::parse(g.to_json().as_bytes()).unwrap();
    prop_assert_eq!(&again, g);
    let h = g.induced(x).unwrap();
    let members: Vec<usize> = x.iter().collect();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            prop_assert_eq!(h.label(i, j), g.label(a, b));
        }
    }
    Ok(())
}

/// Every orbit key is reproduced by its word, has |X| elements, and has the
/// same orbit as X.
pub fn orbit_consistency(g: &CoxeterGraph, x: VertexSet) -> Result<(), TestCaseError> {
    let table = orbit(g, x);
    let keys: BTreeSet<u64> = table.keys().map(VertexSet::bits).collect();
    prop_assert!(table.contains(x));
    for (y, w) in table.iter() {
        prop_assert_eq!(apply_word(g, x, w).unwrap(), y);
        prop_assert_eq!(y.len(), x.len());
        let back: BTreeSet<u64> = orbit(g, y).keys().map(VertexSet::bits).collect();
        prop_assert_eq!(&back, &keys);
    }
    Ok(())
}

/// Twisting back at τ(t) undoes an elementary twist, and the twist is a
/// label-preserving relabelling of Y.
pub fn twist_involution(g: &CoxeterGraph, y: VertexSet) -> Result<(), TestCaseError> {
    for t in g.adjacent(y).iter() {
        let Some((z, factor)) = elementary_twist(g, y, t).unwrap() else {
            continue;
        };
        let comp = factor.subset;
        let tau = delta_map(g, comp).unwrap();
        prop_assert!(tau.iter().all(|(a, b)| tau.get(b) == Some(a)));
        let pairs: Vec<(usize, usize)> = tau.iter().collect();
        prop_assert!(is_label_preserving(g, &pairs));

        prop_assert_eq!(z.len(), y.len());
        let t_back = tau.get(t).unwrap();
        prop_assert!(g.adjacent(z).contains(t_back));
        prop_assert_eq!(g.component_containing(z.with(t_back), t_back), comp);
        let (back, back_factor) = elementary_twist(g, z, t_back).unwrap().unwrap();
        prop_assert_eq!(back, y);
        prop_assert_eq!(back_factor, factor);

        let word = parabolic_core::ConjugatorWord::from_factors(vec![factor]);
        let map: Vec<(usize, usize)> = apply_word_pointwise(g, y, &word)
            .unwrap()
            .into_iter()
            .collect();
        prop_assert!(is_label_preserving(g, &map));
        let image: VertexSet = map.iter().map(|&(_, b)| b).collect();
        prop_assert_eq!(image, z);
    }
    Ok(())
}

/// Ribbon targets are reproduced by the ribbon word, and each component of
/// T moves only in the ways a ribbon allows.
pub fn ribbon_cases(g: &CoxeterGraph, t: VertexSet) -> Result<(), TestCaseError> {
    use IrreducibleType::*;
    for s in g.adjacent(t).iter() {
        let Some((target, word)) = elementary_ribbon_target(g, t, s).unwrap() else {
            continue;
        };
        prop_assert_eq!(apply_word(g, t, &word).unwrap(), target);
        prop_assert!(target.is_subset(t.with(s)));
        for comp in g.components(t).unwrap() {
            let image = apply_word(g, comp, &word).unwrap();
            let pointwise = apply_word_pointwise(g, comp, &word).unwrap();
            let fixed = pointwise.iter().all(|(a, b)| a == b);
            match recognize_component(g, comp).unwrap() {
                None => prop_assert!(fixed),
                Some(c) => match c.ty {
                    A(_) | D(_) => prop_assert!(image.is_subset(t.with(s))),
                    E(6) | I2(_) => {
                        let own = parabolic_core::delta_automorphism(&c);
                        prop_assert!(
                            fixed || pointwise.iter().all(|(&a, &b)| own.get(a) == Some(b))
                        );
                    }
                    _ => prop_assert!(fixed),
                },
            }
        }
    }
    Ok(())
}

/// Tuple orbits keep length, disjointness and per-position shape, stay
/// inside the set orbit, and contain the internal orbit.
pub fn tuple_invariants(
    g: &CoxeterGraph,
    x1: VertexSet,
    x: VertexSet,
) -> Result<(), TestCaseError> {
    let external = tuple_orbit(g, x1, |_| true);
    let internal = tuple_orbit(g, x1, |t| x.contains(t));
    let set_orbit = orbit(g, x1);
    let initial = external.iter().next().unwrap().0.clone();
    for (tuple, word) in external.iter() {
        prop_assert_eq!(tuple.len(), initial.len());
        let mut seen = VertexSet::EMPTY;
        for (p, q) in tuple.positions().iter().zip(initial.positions()) {
            prop_assert!(p.is_disjoint(seen));
            seen = seen.union(*p);
            prop_assert_eq!(p.len(), q.len());
            let map: Vec<(usize, usize)> = apply_word_pointwise(g, *q, word)
                .unwrap()
                .into_iter()
                .collect();
            prop_assert!(is_label_preserving(g, &map));
            prop_assert_eq!(map.iter().map(|&(_, b)| b).collect::<VertexSet>(), *p);
        }
        prop_assert!(set_orbit.contains(tuple.union()));
    }
    for (tuple, _) in internal.iter() {
        prop_assert!(external.contains(tuple));
    }
    Ok(())
}

/// Verdicts survive renaming the generators; witnesses check out.
pub fn renaming_invariance(
    g: &CoxeterGraph,
    x: VertexSet,
    perm: &[usize],
) -> Result<(), TestCaseError> {
    let opts = StabilityOptions::default();
    let (h, map) = renamed(g, perm);
    let v = decide_stability(g, x, opts).unwrap();
    let w = decide_stability(&h, map_set(x, &map), opts).unwrap();
    prop_assert_eq!(v.as_str(), w.as_str());
    if let StabilityVerdict::NotStable(wit) = &v {
        prop_assert!(verify_witness(g, x, wit));
    }
    if let StabilityVerdict::NotStable(wit) = &w {
        prop_assert!(verify_witness(&h, map_set(x, &map), wit));
    }
    let a = classify_group(g);
    let b = classify_group(&h);
    prop_assert_eq!(a.applicability, b.applicability);
    prop_assert_eq!(
        (
            a.spherical,
            a.fc_type,
            a.free_product_of_spherical,
            a.large,
            a.two_dimensional
        ),
        (
            b.spherical,
            b.fc_type,
            b.free_product_of_spherical,
            b.large,
            b.two_dimensional
        )
    );
    prop_assert_eq!(a.martin_2dim_condition, b.martin_2dim_condition);
    prop_assert_eq!(a.affine_family, b.affine_family);
    Ok(())
}

/// The same inputs serialize to the same bytes.
pub fn deterministic_json(g: &CoxeterGraph, x: VertexSet) -> Result<(), TestCaseError> {
    let opts = StabilityOptions::default();
    let run = || {
        let report = decide_with_applicability(g, x, Mode::Force, opts).unwrap();
        let table = orbit(g, x);
        (
            serde_json::to_string(&report.to_json(g, true)).unwrap(),
            serde_json::to_string(&table.to_json(g, false)).unwrap(),
            g.to_json(),
        )
    };
    prop_assert_eq!(run(), run());
    Ok(())
}
