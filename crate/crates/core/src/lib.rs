//! Conjugacy stability of standard parabolic subgroups of Artin groups,
//! decided combinatorially on Coxeter graphs.
//!
//! The crate reads a Coxeter graph, recognizes spherical components, computes
//! twist and ribbon orbits of generating subsets, and decides whether a
//! standard parabolic subgroup A_X is conjugacy stable, producing a witness
//! when it is not. A small finite Coxeter group module cross-checks the Δ
//! involution tables.

pub mod classify;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod orbit;
pub mod stability;
pub mod twist;

pub use classify::{
    classify_group, is_spherical, is_twistable, recognize_component, spherical_decomposition,
    AffineFamily, Applicability, FreeFactor, GroupFamilyReport, IrreducibleType, TypedComponent,
};
pub use error::{ClassifyError, GraphError, OracleError, StabilityError, TwistError};
pub use graph::{canonical_subset_cmp, CoxeterGraph, Label, VertexSet, MAX_GENERATORS};
pub use orbit::{conjugator, orbit, OrbitTable};
pub use stability::{
    check_d2k_exception, check_d4_exception, decide_stability, decide_with_applicability,
    tuple_orbit, tuple_twist, verify_witness, ComponentTuple, DException, Mode, Semantics,
    StabilityOptions, StabilityReport, StabilityVerdict, TupleOrbit, Witness,
};
pub use twist::{
    apply_word, delta_automorphism, delta_conjugate_set, delta_map, elementary_ribbon_target,
    elementary_twist, ConjugatorWord, Involution, Sign, TwistFactor,
};
