//! Recognition of irreducible spherical types and family-level classification
//! of whole Coxeter graphs.
//!
//! Every recognized component carries a canonical position labeling. The
//! conventions (1-based positions as printed, 0-based in `positions`):
//!
//! * `A_n`: path, position 1 at the lexicographically smaller end.
//! * `B_n`, `H_n`: path with the 4 (resp. 5) edge between positions 1 and 2.
//! * `F_4`: path with the 4 edge between positions 2 and 3, position 1 at the
//!   lexicographically smaller end.
//! * `D_n`: prongs 1 and 2 (lexicographic) on the branch vertex 3, tail 4..n.
//!   For `D_4` the three leaves take positions 1, 2, 4 in lexicographic order.
//! * `E_n`: chain 2-3-4-5-6(-7(-8)) with 1 hanging off 4. For `E_6` the arm
//!   whose end vertex is lexicographically smallest becomes 3-2.
//! * `I_2(m)`: position 1 is the lexicographically smaller vertex.

use std::fmt;

use serde_json::{json, Value};

use crate::error::ClassifyError;
use crate::graph::{CoxeterGraph, Label, VertexSet};

/// Irreducible Coxeter types of finite type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl IrreducibleType {
    pub fn rank(self) -> usize {
        match self {
            IrreducibleType::A(n)
            | IrreducibleType::B(n)
            | IrreducibleType::D(n)
            | IrreducibleType::E(n)
            | IrreducibleType::H(n) => n,
            IrreducibleType::F4 => 4,
            IrreducibleType::I2(_) => 2,
        }
    }

    /// Conjugation by Δ induces a non-trivial diagram automorphism.
    pub fn is_twistable(self) -> bool {
        match self {
            IrreducibleType::A(n) => n >= 2,
            IrreducibleType::D(n) => n >= 5 && n % 2 == 1,
            IrreducibleType::E(n) => n == 6,
            IrreducibleType::I2(m) => m >= 5 && m % 2 == 1,
            _ => false,
        }
    }

    pub fn is_odd_d(self) -> bool {
        matches!(self, IrreducibleType::D(n) if n % 2 == 1)
    }

    /// Edges of the template diagram on 0-based positions, as `(i, j, m)`.
    pub fn template_edges(self) -> Vec<(usize, usize, u32)> {
        let path = |n: usize, first: u32| -> Vec<(usize, usize, u32)> {
            (0..n.saturating_sub(1))
                .map(|i| (i, i + 1, if i == 0 { first } else { 3 }))
                .collect()
        };
        match self {
            IrreducibleType::A(n) => path(n, 3),
            IrreducibleType::B(n) => path(n, 4),
            IrreducibleType::H(n) => path(n, 5),
            IrreducibleType::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            IrreducibleType::I2(m) => vec![(0, 1, m)],
            IrreducibleType::D(n) => {
                let mut e = vec![(0, 2, 3), (1, 2, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                e
            }
            IrreducibleType::E(n) => {
                let mut e = vec![(0, 3, 3)];
                e.extend((1..n - 1).map(|i| (i, i + 1, 3)));
                e
            }
        }
    }

    /// Full Coxeter matrix of the template on 0-based positions
    /// (1 on the diagonal, 2 for commuting pairs, 0 never occurs).
    pub fn coxeter_matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, j, l) in self.template_edges() {
            m[i][j] = l;
            m[j][i] = l;
        }
        m
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::A(n) => write!(f, "A{n}"),
            IrreducibleType::B(n) => write!(f, "B{n}"),
            IrreducibleType::D(n) => write!(f, "D{n}"),
            IrreducibleType::E(n) => write!(f, "E{n}"),
            IrreducibleType::F4 => write!(f, "F4"),
            IrreducibleType::H(n) => write!(f, "H{n}"),
            IrreducibleType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A recognized irreducible spherical component with its position labeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypedComponent {
    pub ty: IrreducibleType,
    /// `positions[k]` is the generator sitting at position `k + 1`.
    pub positions: Vec<usize>,
}

impl TypedComponent {
    /// The template itself: position k sits on generator index k.
    pub fn standard(ty: IrreducibleType) -> Self {
        TypedComponent {
            ty,
            positions: (0..ty.rank()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.positions.len()
    }

    pub fn vertices(&self) -> VertexSet {
        self.positions.iter().copied().collect()
    }

    /// Generator at 1-based position `p`.
    pub fn at(&self, p: usize) -> usize {
        self.positions[p - 1]
    }

    pub fn is_twistable(&self) -> bool {
        self.ty.is_twistable()
    }

    pub fn to_json(&self, g: &CoxeterGraph) -> Value {
        json!({
            "type": self.ty.to_string(),
            "positions": self.positions.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
        })
    }
}

/// `is_twistable` as a free function over recognized components.
pub fn is_twistable(c: &TypedComponent) -> bool {
    c.is_twistable()
}

/// Recognizes a connected subset as one of the finite irreducible types.
///
/// Returns `Ok(None)` when the component is not of spherical type.
pub fn recognize_component(
    g: &CoxeterGraph,
    y: VertexSet,
) -> Result<Option<TypedComponent>, ClassifyError> {
    g.check_subset(y)?;
    if !g.is_connected(y) {
        return Err(ClassifyError::NotConnected);
    }
    Ok(recognize_connected(g, y))
}

pub(crate) fn recognize_connected(g: &CoxeterGraph, y: VertexSet) -> Option<TypedComponent> {
    use IrreducibleType::*;

    let verts: Vec<usize> = y.iter().collect();
    let n = verts.len();
    if n == 1 {
        return Some(TypedComponent {
            ty: A(1),
            positions: verts,
        });
    }
    let mut edge_count = 0;
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            match g.label(a, b) {
                Label::Infinity => return None,
                l if l.is_edge() => edge_count += 1,
                _ => {}
            }
        }
    }
    if edge_count != n - 1 {
        return None;
    }
    let finite = |a: usize, b: usize| match g.label(a, b) {
        Label::Finite(m) => m,
        Label::Infinity => unreachable!("infinite labels rejected above"),
    };
    if n == 2 {
        let m = finite(verts[0], verts[1]);
        let ty = match m {
            3 => A(2),
            4 => B(2),
            _ => I2(m),
        };
        return Some(TypedComponent {
            ty,
            positions: verts,
        });
    }

    let degree = |v: usize| g.neighbours(v).intersection(y).len();
    if verts.iter().any(|&v| degree(v) > 3) {
        return None;
    }
    let branches: Vec<usize> = verts.iter().copied().filter(|&v| degree(v) == 3).collect();
    match branches.as_slice() {
        [] => {
            // A path: walk it from its lexicographically smaller end.
            let start = verts.iter().copied().find(|&v| degree(v) == 1)?;
            let order = walk(g, y, start, None);
            let labels: Vec<u32> = order.windows(2).map(|w| finite(w[0], w[1])).collect();
            let odd: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] != 3).collect();
            match odd.as_slice() {
                [] => Some(TypedComponent {
                    ty: A(n),
                    positions: order,
                }),
                [k] => {
                    let last = labels.len() - 1;
                    let oriented = |at_start: bool| -> Vec<usize> {
                        if at_start {
                            order.clone()
                        } else {
                            order.iter().rev().copied().collect()
                        }
                    };
                    match (labels[*k], *k) {
                        (4, k) if k == 0 || k == last => Some(TypedComponent {
                            ty: B(n),
                            positions: oriented(k == 0),
                        }),
                        (4, 1) if n == 4 => Some(TypedComponent {
                            ty: F4,
                            positions: order,
                        }),
                        (5, k) if (k == 0 || k == last) && (n == 3 || n == 4) => {
                            Some(TypedComponent {
                                ty: H(n),
                                positions: oriented(k == 0),
                            })
                        }
                        _ => None,
                    }
                }
                _ => None,
            }
        }
        [b] => {
            let b = *b;
            if verts
                .iter()
                .flat_map(|&u| verts.iter().map(move |&v| (u, v)))
                .any(|(u, v)| u < v && g.is_edge(u, v) && finite(u, v) != 3)
            {
                return None;
            }
            let mut arms: Vec<Vec<usize>> = g
                .neighbours(b)
                .intersection(y)
                .iter()
                .map(|first| walk(g, y, first, Some(b)))
                .collect();
            // Shorter arms first; among equal lengths, the one with the
            // lexicographically smaller end vertex first.
            arms.sort_by_key(|arm| (arm.len(), *arm.last().expect("arms are non-empty")));
            let lens = [arms[0].len(), arms[1].len(), arms[2].len()];
            match lens {
                [1, 1, _] if n == 4 => {
                    let mut leaves = [arms[0][0], arms[1][0], arms[2][0]];
                    leaves.sort_unstable();
                    Some(TypedComponent {
                        ty: D(4),
                        positions: vec![leaves[0], leaves[1], b, leaves[2]],
                    })
                }
                [1, 1, _] => {
                    let (p, q) = (arms[0][0].min(arms[1][0]), arms[0][0].max(arms[1][0]));
                    let mut positions = vec![p, q, b];
                    positions.extend(&arms[2]);
                    Some(TypedComponent {
                        ty: D(n),
                        positions,
                    })
                }
                [1, 2, 2..=4] => {
                    let mut positions = vec![arms[0][0], arms[1][1], arms[1][0], b];
                    positions.extend(&arms[2]);
                    Some(TypedComponent {
                        ty: E(n),
                        positions,
                    })
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Walks a path inside `y` starting at `start`, never stepping back to `from`.
fn walk(g: &CoxeterGraph, y: VertexSet, start: usize, from: Option<usize>) -> Vec<usize> {
    let mut out = vec![start];
    let mut prev = from;
    let mut cur = start;
    loop {
        let next = g
            .neighbours(cur)
            .intersection(y)
            .iter()
            .find(|&v| Some(v) != prev && !out.contains(&v));
        match next {
            Some(v) => {
                prev = Some(cur);
                out.push(v);
                cur = v;
            }
            None => return out,
        }
    }
}

/// Type decomposition of Γ_X, or `None` if some component is not spherical.
pub fn spherical_decomposition(g: &CoxeterGraph, x: VertexSet) -> Option<Vec<TypedComponent>> {
    g.components_unchecked(x)
        .into_iter()
        .map(|c| recognize_connected(g, c))
        .collect()
}

pub fn is_spherical(g: &CoxeterGraph, x: VertexSet) -> bool {
    spherical_decomposition(g, x).is_some()
}

/// Euclidean families for which the hypotheses are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineFamily {
    /// Cycle of n+1 vertices, all labels 3.
    ATilde(usize),
    /// Path of n+1 vertices, 4 on both end edges, 3 elsewhere.
    CTilde(usize),
}

impl fmt::Display for AffineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineFamily::ATilde(n) => write!(f, "A~{n}"),
            AffineFamily::CTilde(n) => write!(f, "C~{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    FullStability,
    QuasiStability,
    Unknown,
}

impl Applicability {
    pub fn as_str(self) -> &'static str {
        match self {
            Applicability::FullStability => "full_stability",
            Applicability::QuasiStability => "quasi_stability",
            Applicability::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeFactor {
    pub generators: VertexSet,
    pub types: Vec<TypedComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFamilyReport {
    pub spherical: bool,
    pub fc_type: bool,
    pub free_product_of_spherical: bool,
    /// Free factors, filled only when `free_product_of_spherical` holds.
    pub free_factors: Vec<FreeFactor>,
    pub large: bool,
    pub two_dimensional: bool,
    pub martin_2dim_condition: bool,
    pub affine_family: Option<AffineFamily>,
    pub applicability: Applicability,
    pub justification: String,
}

impl GroupFamilyReport {
    pub fn to_json(&self, g: &CoxeterGraph) -> Value {
        let factors: Vec<Value> = self
            .free_factors
            .iter()
            .map(|f| {
                json!({
                    "generators": g.set_names(f.generators),
                    "types": f.types.iter().map(|t| t.ty.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "spherical": self.spherical,
            "fc_type": self.fc_type,
            "free_product_of_spherical": self.free_product_of_spherical,
            "free_factors": factors,
            "large": self.large,
            "two_dimensional": self.two_dimensional,
            "martin_2dim_condition": self.martin_2dim_condition,
            "affine_family": self.affine_family.map(|a| a.to_string()),
            "applicability": self.applicability.as_str(),
            "justification": self.justification,
        })
    }
}

/// Maximal cliques of the graph on `0..n` with the given neighbour masks
/// (Bron–Kerbosch with pivoting).
fn maximal_cliques(n: usize, nbrs: &[u64]) -> Vec<VertexSet> {
    fn expand(r: u64, mut p: u64, mut x: u64, nbrs: &[u64], out: &mut Vec<VertexSet>) {
        if p == 0 && x == 0 {
            out.push(VertexSet::from_bits(r));
            return;
        }
        let pivot = VertexSet::from_bits(p | x)
            .iter()
            .max_by_key(|&u| (p & nbrs[u]).count_ones());
        let pivot_nbrs = pivot.map_or(0, |u| nbrs[u]);
        for v in VertexSet::from_bits(p & !pivot_nbrs).iter() {
            let bit = 1u64 << v;
            expand(r | bit, p & nbrs[v], x & nbrs[v], nbrs, out);
            p &= !bit;
            x |= bit;
        }
    }
    let mut out = Vec::new();
    expand(0, VertexSet::full(n).bits(), 0, nbrs, &mut out);
    out
}

/// 1/a + 1/b + 1/c ≤ 1 with 1/∞ = 0, i.e. the triangle group is infinite.
fn triangle_is_infinite(labels: [Label; 3]) -> bool {
    let finite: Vec<u128> = labels
        .iter()
        .filter_map(|l| match l {
            Label::Finite(m) => Some(u128::from(*m)),
            Label::Infinity => None,
        })
        .collect();
    match finite.as_slice() {
        [a, b, c] => b * c + a * c + a * b <= a * b * c,
        [a, b] => a + b <= a * b,
        _ => true,
    }
}

pub fn classify_group(g: &CoxeterGraph) -> GroupFamilyReport {
    let n = g.len();
    let all = g.all();
    let spherical = is_spherical(g, all);

    let finite_nbrs: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && !g.label(i, j).is_infinite())
                .fold(0u64, |acc, j| acc | (1 << j))
        })
        .collect();
    let fc_type = maximal_cliques(n, &finite_nbrs)
        .into_iter()
        .all(|c| is_spherical(g, c));

    // Components of the "m ≠ ∞" graph are the free factors.
    let mut factors_raw = Vec::new();
    let mut rest = all;
    while let Some(start) = rest.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let reach = frontier.iter().fold(0u64, |acc, u| acc | finite_nbrs[u]);
            frontier = VertexSet::from_bits(reach).difference(comp);
            comp = comp.union(frontier);
        }
        rest = rest.difference(comp);
        factors_raw.push(comp);
    }
    let decomposed: Option<Vec<FreeFactor>> = factors_raw
        .iter()
        .map(|&f| {
            spherical_decomposition(g, f).map(|types| FreeFactor {
                generators: f,
                types,
            })
        })
        .collect();
    let free_product_of_spherical = decomposed.is_some();
    let free_factors = decomposed.unwrap_or_default();

    let pairs = || (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)));
    let large = pairs().all(|(a, b)| g.is_edge(a, b));
    let two_dimensional = (0..n).all(|a| {
        (a + 1..n).all(|b| {
            (b + 1..n).all(|c| triangle_is_infinite([g.label(a, b), g.label(b, c), g.label(a, c)]))
        })
    });
    let martin_2dim_condition = two_dimensional
        && (0..n).all(|v| {
            (0..n)
                .filter(|&w| w != v && g.label(v, w) == Label::COMMUTING)
                .count()
                <= 1
        });
    let affine_family = affine_family(g);

    let (applicability, justification) = if spherical {
        (Applicability::FullStability, "spherical type".to_owned())
    } else if free_product_of_spherical {
        (
            Applicability::FullStability,
            "free product of spherical-type factors".to_owned(),
        )
    } else if let Some(a) = affine_family {
        (Applicability::FullStability, format!("Euclidean type {a}"))
    } else if martin_2dim_condition {
        (
            Applicability::FullStability,
            "two-dimensional, every generator commutes (m = 2) with at most one other; \
             reading of the vertex condition as m = 2 adjacency is a convention"
                .to_owned(),
        )
    } else if fc_type {
        (
            Applicability::QuasiStability,
            "FC type: decisions cover spherical-type parabolic subgroups".to_owned(),
        )
    } else {
        (
            Applicability::Unknown,
            "hypotheses unknown for this family".to_owned(),
        )
    };

    GroupFamilyReport {
        spherical,
        fc_type,
        free_product_of_spherical,
        free_factors,
        large,
        two_dimensional,
        martin_2dim_condition,
        affine_family,
        applicability,
        justification,
    }
}

fn affine_family(g: &CoxeterGraph) -> Option<AffineFamily> {
    let n = g.len();
    if n < 3 || !g.is_connected(g.all()) {
        return None;
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.is_edge(a, b) {
                edges.push(g.label(a, b));
            }
        }
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.neighbours(v).len()).collect();
    if edges.len() == n && degrees.iter().all(|&d| d == 2) {
        return edges
            .iter()
            .all(|&l| l == Label::Finite(3))
            .then_some(AffineFamily::ATilde(n - 1));
    }
    if edges.len() == n - 1 && degrees.iter().all(|&d| d <= 2) {
        let start = (0..n).find(|&v| degrees[v] == 1)?;
        let order = walk(g, g.all(), start, None);
        let labels: Vec<Label> = order.windows(2).map(|w| g.label(w[0], w[1])).collect();
        let last = labels.len() - 1;
        let ok = labels.iter().enumerate().all(|(i, &l)| {
            l == if i == 0 || i == last {
                Label::Finite(4)
            } else {
                Label::Finite(3)
            }
        });
        return ok.then_some(AffineFamily::CTilde(n - 1));
    }
    None
}
