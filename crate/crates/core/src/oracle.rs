//! Brute-force finite Coxeter groups, used to check the Δ involutions and to
//! spell Garside elements as words.
//!
//! Crystallographic types (A, B, D, E, F) are realized on the root lattice
//! with integer simple-root coordinates. Dihedral types I₂(m) use the group of
//! the regular m-gon directly. H₃ and H₄ are not supported.
//!
//! Cartan convention: `s_i(α_j) = α_j − c_ij α_i` with c_ii = 2, c_ij = 0 for
//! commuting pairs, c_ij = c_ji = −1 for m = 3, and for m = 4 the smaller
//! position gets c_ij = −2, the larger c_ji = −1.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::Mul;

use crate::classify::{IrreducibleType, TypedComponent};
use crate::error::OracleError;
use crate::twist::delta_position_map;

/// Integer coordinates in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }
}

/// Element of a Weyl group as an integer matrix on the root lattice, together
/// with the word (1-based positions) it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Column j is the image of α_j.
    matrix: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
            .collect();
        WeylElement {
            matrix,
            word: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == WeylElement::identity(self.rank()).matrix
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        RootVector(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Image of the simple root α_i (0-based).
    pub fn image_of_simple(&self, i: usize) -> RootVector {
        RootVector(self.matrix.iter().map(|row| row[i]).collect())
    }

    /// Product `self · other`, words concatenated.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let matrix = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| self.matrix[r][k] * other.matrix[k][c]).sum())
                    .collect()
            })
            .collect();
        let mut word = self.word.clone();
        word.extend(&other.word);
        WeylElement { matrix, word }
    }
}

/// ρ^rotation σ^flip in the dihedral group of order 2m, with s₁ = σ and s₂ = ρσ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    pub m: u32,
    pub rotation: u32,
    pub flip: bool,
}

impl DihedralElement {
    pub fn identity(m: u32) -> Self {
        DihedralElement {
            m,
            rotation: 0,
            flip: false,
        }
    }

    /// Simple reflection s₁ (`i = 0`) or s₂ (`i = 1`).
    pub fn generator(m: u32, i: usize) -> Self {
        DihedralElement {
            m,
            rotation: i as u32,
            flip: true,
        }
    }

    pub fn inverse(self) -> Self {
        if self.flip {
            self
        } else {
            DihedralElement {
                rotation: (self.m - self.rotation) % self.m,
                ..self
            }
        }
    }
}

impl Mul for DihedralElement {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        let m = self.m;
        let b = if self.flip {
            (m - other.rotation) % m
        } else {
            other.rotation
        };
        DihedralElement {
            m,
            rotation: (self.rotation + b) % m,
            flip: self.flip ^ other.flip,
        }
    }
}

/// Word lengths of all 2m dihedral elements, by breadth-first search on the
/// Cayley graph with respect to {s₁, s₂}.
fn dihedral_lengths(m: u32) -> HashMap<DihedralElement, usize> {
    let mut dist = HashMap::new();
    let start = DihedralElement::identity(m);
    dist.insert(start, 0);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for i in 0..2 {
            let next = w * DihedralElement::generator(m, i);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(next) {
                e.insert(d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

fn cartan(ty: IrreducibleType) -> Result<Vec<Vec<i64>>, OracleError> {
    match ty {
        IrreducibleType::A(_)
        | IrreducibleType::B(_)
        | IrreducibleType::D(_)
        | IrreducibleType::E(_)
        | IrreducibleType::F4 => {}
        other => return Err(OracleError::Unsupported(other.to_string())),
    }
    let m = ty.coxeter_matrix();
    let n = m.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = match m[i][j] {
                1 => 2,
                2 => 0,
                3 => -1,
                4 if i < j => -2,
                4 => -1,
                other => return Err(OracleError::Unsupported(format!("{ty} (label {other})"))),
            };
        }
    }
    Ok(c)
}

/// Reflection in the simple root at 0-based position `i`.
pub fn simple_reflection(c: &TypedComponent, i: usize) -> Result<WeylElement, OracleError> {
    let cm = cartan(c.ty)?;
    let n = cm.len();
    if i >= n {
        return Err(OracleError::BadPosition(i));
    }
    let mut e = WeylElement::identity(n);
    for (entry, c) in e.matrix[i].iter_mut().zip(&cm[i]) {
        *entry -= c;
    }
    e.word = vec![i + 1];
    Ok(e)
}

/// All positive roots, found as the closure of the simple roots under the
/// simple reflections.
pub fn positive_roots(c: &TypedComponent) -> Result<Vec<RootVector>, OracleError> {
    let n = c.ty.rank();
    let refl: Vec<WeylElement> = (0..n)
        .map(|i| simple_reflection(c, i))
        .collect::<Result<_, _>>()?;
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut queue: VecDeque<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    for r in &queue {
        seen.insert(r.clone());
    }
    while let Some(r) = queue.pop_front() {
        for s in &refl {
            let img = s.apply(&r);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut pos: Vec<RootVector> = seen.into_iter().filter(RootVector::is_positive).collect();
    pos.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(pos)
}

/// Longest element of a finite Coxeter group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LongestElement {
    Weyl(WeylElement),
    Dihedral {
        element: DihedralElement,
        word: Vec<usize>,
    },
}

impl LongestElement {
    /// Reduced word as 1-based positions.
    pub fn word(&self) -> &[usize] {
        match self {
            LongestElement::Weyl(w) => w.word(),
            LongestElement::Dihedral { word, .. } => word,
        }
    }
}

/// w₀ by greedy descent: keep right-multiplying by the smallest s_i that
/// lengthens the element until none does.
pub fn longest_element(c: &TypedComponent) -> Result<LongestElement, OracleError> {
    if let IrreducibleType::I2(m) = c.ty {
        let lengths = dihedral_lengths(m);
        let mut w = DihedralElement::identity(m);
        let mut word = Vec::new();
        while let Some(i) =
            (0..2).find(|&i| lengths[&(w * DihedralElement::generator(m, i))] > lengths[&w])
        {
            w = w * DihedralElement::generator(m, i);
            word.push(i + 1);
        }
        return Ok(LongestElement::Dihedral { element: w, word });
    }
    let n = c.ty.rank();
    let refl: Vec<WeylElement> = (0..n)
        .map(|i| simple_reflection(c, i))
        .collect::<Result<_, _>>()?;
    let mut w = WeylElement::identity(n);
    while let Some(i) = (0..n).find(|&i| w.image_of_simple(i).is_positive()) {
        w = w.mul(&refl[i]);
    }
    Ok(LongestElement::Weyl(w))
}

/// Position map i ↦ j with w₀ s_i w₀ = s_j (0-based).
pub fn w0_conjugation_permutation(c: &TypedComponent) -> Result<Vec<usize>, OracleError> {
    let n = c.ty.rank();
    match longest_element(c)? {
        LongestElement::Weyl(w) => (0..n)
            .map(|i| {
                let img = w.image_of_simple(i).neg();
                (0..n)
                    .find(|&j| img == RootVector::simple(n, j))
                    .ok_or_else(|| {
                        OracleError::Unsupported(format!("{}: w0 image not simple", c.ty))
                    })
            })
            .collect(),
        LongestElement::Dihedral { element, .. } => {
            let m = element.m;
            (0..2)
                .map(|i| {
                    let conj = element * DihedralElement::generator(m, i) * element.inverse();
                    (0..2)
                        .find(|&j| conj == DihedralElement::generator(m, j))
                        .ok_or_else(|| OracleError::Unsupported(format!("{}", c.ty)))
                })
                .collect()
        }
    }
}

/// A positive word for Δ of the component, as generator indices.
pub fn expand_delta(c: &TypedComponent) -> Result<Vec<usize>, OracleError> {
    let w0 = longest_element(c)?;
    Ok(w0.word().iter().map(|&p| c.positions[p - 1]).collect())
}

/// Outcome of comparing the root-system computation with the Δ table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub ty: IrreducibleType,
    pub oracle: Vec<usize>,
    pub table: Vec<usize>,
    pub longest_length: usize,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.oracle == self.table
    }
}

pub fn cross_check(ty: IrreducibleType) -> Result<CrossCheck, OracleError> {
    let c = TypedComponent::standard(ty);
    let oracle = w0_conjugation_permutation(&c)?;
    let longest_length = longest_element(&c)?.word().len();
    Ok(CrossCheck {
        ty,
        oracle,
        table: delta_position_map(ty),
        longest_length,
    })
}
