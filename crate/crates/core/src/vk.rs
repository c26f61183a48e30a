//! The simplicial 2-point configuration space and the van Kampen obstruction.
//!
//! The cocycle `νκ^n` is the one induced by placing the vertices on the
//! moment curve in a chosen order: a pair of disjoint simplices of
//! complementary dimension gets value 1 exactly when the two vertex sets
//! interleave ("meshed").

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::chains::find_z2_cycle;
use crate::gf2::{BitRow, Gf2Matrix};
use crate::polyjoin::{doubled_complex, octahedralization, validate_cycle, OctaComplex, PolyjoinError};
use crate::scomplex::{Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VkError {
    #[error("simplices {0} and {1} overlap")]
    Overlapping(String, String),
    #[error("degree mismatch: cochain has degree {cochain}, chain has degree {chain}")]
    DegreeMismatch { cochain: usize, chain: usize },
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),
    #[error("ordering is not a permutation of the {0} vertices")]
    BadOrdering(usize),
    #[error("Ω is not a cycle: its boundary contains the cell {0}")]
    OmegaNotACycle(String),
    #[error(transparent)]
    Polyjoin(#[from] PolyjoinError),
}

/// An unordered pair of disjoint nonempty simplices, stored with the
/// lexicographically smaller vertex set first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigCell {
    first: Simplex,
    second: Simplex,
}

impl ConfigCell {
    pub fn new(a: Simplex, b: Simplex) -> Result<Self, VkError> {
        if a.is_empty() || b.is_empty() || !a.is_disjoint(&b) {
            return Err(VkError::Overlapping(a.to_string(), b.to_string()));
        }
        Ok(if a <= b {
            ConfigCell { first: a, second: b }
        } else {
            ConfigCell { first: b, second: a }
        })
    }

    pub fn first(&self) -> &Simplex {
        &self.first
    }

    pub fn second(&self) -> &Simplex {
        &self.second
    }

    pub fn dim(&self) -> usize {
        self.first.len() + self.second.len() - 2
    }

    /// Codimension-one faces; terms where a factor would become empty are
    /// dropped.
    pub fn boundary(&self) -> Vec<ConfigCell> {
        let mut out = Vec::with_capacity(self.first.len() + self.second.len());
        for (_, f) in self.first.boundary_faces() {
            out.push(ConfigCell::new(f, self.second.clone()).expect("faces stay disjoint"));
        }
        for (_, f) in self.second.boundary_faces() {
            out.push(ConfigCell::new(self.first.clone(), f).expect("faces stay disjoint"));
        }
        out
    }

    /// Same cell with vertices renamed by `map`.
    pub fn map_vertices(&self, map: &[usize]) -> ConfigCell {
        let m = |s: &Simplex| Simplex::new(s.vertices().iter().map(|&v| map[v]).collect());
        ConfigCell::new(m(&self.first), m(&self.second)).expect("injective vertex map")
    }
}

impl std::fmt::Display for ConfigCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}, {}}}", self.first, self.second)
    }
}

/// The cells of the simplicial configuration space, grouped by dimension and
/// sorted within each dimension.
#[derive(Clone, Debug)]
pub struct ConfigComplex {
    cells: Vec<Vec<ConfigCell>>,
    index: Vec<HashMap<ConfigCell, usize>>,
}

impl ConfigComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let faces: Vec<&Simplex> = k.all_faces().collect();
        let mut cells: Vec<Vec<ConfigCell>> = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for b in &faces[i + 1..] {
                if a.is_disjoint(b) {
                    let c = ConfigCell::new((*a).clone(), (*b).clone()).expect("disjoint");
                    let d = c.dim();
                    if cells.len() <= d {
                        cells.resize_with(d + 1, Vec::new);
                    }
                    cells[d].push(c);
                }
            }
        }
        for cs in &mut cells {
            cs.sort();
        }
        let index = cells
            .iter()
            .map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        ConfigComplex { cells, index }
    }

    /// Highest cell dimension, or `None` if there are no cells.
    pub fn top_dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, n: usize) -> &[ConfigCell] {
        self.cells.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.cells(n).len()
    }

    pub fn cell_index(&self, c: &ConfigCell) -> Option<usize> {
        self.index.get(c.dim())?.get(c).copied()
    }

    /// `∂_n` over GF(2): rows are `(n-1)`-cells, columns `n`-cells.
    pub fn boundary_matrix(&self, n: usize) -> Gf2Matrix {
        let rows = if n == 0 { 0 } else { self.cell_count(n - 1) };
        let cols: Vec<Vec<usize>> = self
            .cells(n)
            .iter()
            .map(|c| {
                c.boundary()
                    .iter()
                    .map(|f| self.cell_index(f).expect("boundary cell present"))
                    .collect()
            })
            .collect();
        Gf2Matrix::from_sparse_columns(rows, &cols)
    }

    /// Coboundary `δ: C^{n-1} → C^n` (rows: `n`-cells).
    pub fn coboundary_matrix(&self, n: usize) -> Gf2Matrix {
        let cols = if n == 0 { 0 } else { self.cell_count(n - 1) };
        let rows = self
            .cells(n)
            .iter()
            .map(|c| {
                BitRow::from_ones(
                    cols,
                    c.boundary().iter().map(|f| self.cell_index(f).expect("boundary cell present")),
                )
            })
            .collect();
        Gf2Matrix::from_rows(cols, rows)
    }

    /// Betti numbers over GF(2) of the configuration space.
    pub fn betti_z2(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.cells.len())
            .map(|n| if n == 0 { 0 } else { self.boundary_matrix(n).rank() })
            .collect();
        (0..self.cells.len())
            .map(|n| self.cell_count(n) - ranks[n] - ranks[n + 1])
            .collect()
    }

    pub fn to_bits(&self, support: &BTreeSet<ConfigCell>, n: usize) -> BitRow {
        BitRow::from_ones(
            self.cell_count(n),
            support.iter().map(|c| self.cell_index(c).expect("cell of this complex")),
        )
    }

    pub fn from_bits(&self, bits: &BitRow, n: usize) -> BTreeSet<ConfigCell> {
        bits.ones().map(|i| self.cells(n)[i].clone()).collect()
    }
}

/// A total order on the vertices `0..n`, stored as ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    rank: Vec<usize>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            rank: (0..n).collect(),
        }
    }

    /// `sequence[i]` is the vertex placed at position `i`.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self, VkError> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in sequence.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(VkError::BadOrdering(n));
            }
            rank[v] = pos;
        }
        Ok(VertexOrdering { rank })
    }

    /// Orders the complex's vertices by the given label sequence.
    pub fn from_labels<S: AsRef<str>>(k: &SimplicialComplex, labels: &[S]) -> Result<Self, VkError> {
        let seq = labels
            .iter()
            .map(|l| k.index_of(l.as_ref()).map_err(|_| VkError::BadOrdering(k.vertex_count())))
            .collect::<Result<Vec<_>, _>>()?;
        if seq.len() != k.vertex_count() {
            return Err(VkError::BadOrdering(k.vertex_count()));
        }
        Self::from_sequence(&seq)
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            seq[r] = v;
        }
        seq
    }

    /// Restriction along a vertex map `sub → self` (injective), compressed to
    /// an ordering of `0..map.len()`.
    pub fn pull_back(&self, map: &[usize]) -> VertexOrdering {
        let mut idx: Vec<usize> = (0..map.len()).collect();
        idx.sort_by_key(|&i| self.rank[map[i]]);
        VertexOrdering::from_sequence(&idx).expect("injective map")
    }
}

/// Whether the two vertex sets strictly alternate in the given order.
pub fn meshed(sigma: &Simplex, tau: &Simplex, ordering: &VertexOrdering) -> Result<bool, VkError> {
    if !sigma.is_disjoint(tau) {
        return Err(VkError::Overlapping(sigma.to_string(), tau.to_string()));
    }
    Ok(meshed_unchecked(sigma, tau, ordering))
}

fn meshed_unchecked(sigma: &Simplex, tau: &Simplex, ordering: &VertexOrdering) -> bool {
    if sigma.len().abs_diff(tau.len()) > 1 {
        return false;
    }
    let mut merged: Vec<(usize, bool)> = sigma
        .vertices()
        .iter()
        .map(|&v| (ordering.rank(v), true))
        .chain(tau.vertices().iter().map(|&v| (ordering.rank(v), false)))
        .collect();
    merged.sort_unstable();
    merged.windows(2).all(|w| w[0].1 != w[1].1)
}

/// A mod-2 cochain on the cells of one dimension, stored by its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Cochain {
    pub degree: usize,
    pub support: BTreeSet<ConfigCell>,
}

/// A mod-2 chain on the cells of one dimension, stored by its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Chain {
    pub degree: usize,
    pub support: BTreeSet<ConfigCell>,
}

impl Gf2Cochain {
    pub fn zero(degree: usize) -> Self {
        Gf2Cochain {
            degree,
            support: BTreeSet::new(),
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Gf2Cochain) -> Gf2Cochain {
        assert_eq!(self.degree, other.degree);
        Gf2Cochain {
            degree: self.degree,
            support: self.support.symmetric_difference(&other.support).cloned().collect(),
        }
    }

    /// Whether the cochain vanishes on the boundary of every `(n+1)`-cell.
    pub fn is_cocycle(&self, cc: &ConfigComplex) -> bool {
        cc.cells(self.degree + 1).iter().all(|c| {
            c.boundary()
                .iter()
                .filter(|f| self.support.contains(f))
                .count()
                % 2
                == 0
        })
    }

    /// `δ` of this cochain.
    pub fn coboundary(&self, cc: &ConfigComplex) -> Gf2Cochain {
        let support = cc
            .cells(self.degree + 1)
            .iter()
            .filter(|c| c.boundary().iter().filter(|f| self.support.contains(f)).count() % 2 == 1)
            .cloned()
            .collect();
        Gf2Cochain {
            degree: self.degree + 1,
            support,
        }
    }
}

impl Gf2Chain {
    /// Mod-2 boundary as a multiset reduced to its odd part.
    pub fn boundary(&self) -> Gf2Chain {
        let mut odd: BTreeSet<ConfigCell> = BTreeSet::new();
        for c in &self.support {
            for f in c.boundary() {
                if !odd.remove(&f) {
                    odd.insert(f);
                }
            }
        }
        Gf2Chain {
            degree: self.degree.saturating_sub(1),
            support: odd,
        }
    }

    pub fn map_vertices(&self, map: &[usize]) -> Gf2Chain {
        Gf2Chain {
            degree: self.degree,
            support: self.support.iter().map(|c| c.map_vertices(map)).collect(),
        }
    }
}

/// The moment-curve cocycle in degree `n`: value 1 on the meshed `n`-cells.
/// Only cells whose factors differ in dimension by at most one can be meshed.
pub fn vk_cocycle(cc: &ConfigComplex, n: usize, ordering: &VertexOrdering) -> Gf2Cochain {
    let support = cc
        .cells(n)
        .iter()
        .filter(|c| c.first().len().abs_diff(c.second().len()) <= 1)
        .filter(|c| meshed_unchecked(c.first(), c.second(), ordering))
        .cloned()
        .collect();
    Gf2Cochain { degree: n, support }
}

/// Pairing of a cochain with a chain.
pub fn evaluate(cochain: &Gf2Cochain, chain: &Gf2Chain) -> Result<bool, VkError> {
    if cochain.degree != chain.degree && !chain.support.is_empty() {
        return Err(VkError::DegreeMismatch {
            cochain: cochain.degree,
            chain: chain.degree,
        });
    }
    Ok(chain.support.iter().filter(|c| cochain.support.contains(c)).count() % 2 == 1)
}

/// Solves `δx = cochain` over GF(2). Returns `Ok(None)` when no solution
/// exists.
pub fn coboundary_certificate(
    cc: &ConfigComplex,
    cochain: &Gf2Cochain,
) -> Result<Option<Gf2Cochain>, VkError> {
    if !cochain.is_cocycle(cc) {
        return Err(VkError::NotACocycle(cochain.degree));
    }
    let n = cochain.degree;
    if cochain.support.is_empty() {
        return Ok(Some(Gf2Cochain::zero(n.saturating_sub(1))));
    }
    if n == 0 {
        return Ok(None);
    }
    let delta = cc.coboundary_matrix(n);
    let b = cc.to_bits(&cochain.support, n);
    Ok(delta.solve(&b).map(|x| Gf2Cochain {
        degree: n - 1,
        support: cc.from_bits(&x, n - 1),
    }))
}

/// Cells of degree `(m+1)(k+1) - 2` in the configuration space of the doubled
/// complex whose projections jointly cover `Vert Δ`, for a `k`-cycle support
/// `cycle`. Indices refer to the vertices of `doubled`.
pub fn omega_chain(
    doubled: &OctaComplex,
    cycle: &[Simplex],
    delta: &Simplex,
) -> Result<Gf2Chain, VkError> {
    validate_cycle(&doubled.base, cycle, delta)?;
    let k = delta.len() - 1;
    let m = doubled.m;
    let degree = (m + 1) * (k + 1) - 2;
    let faces: Vec<&Simplex> = doubled.complex.all_faces().collect();
    let mut support = BTreeSet::new();
    for (i, a) in faces.iter().enumerate() {
        for b in &faces[i + 1..] {
            if a.len() + b.len() != degree + 2 || !a.is_disjoint(b) {
                continue;
            }
            let cover = doubled.project(a).union(&doubled.project(b));
            if delta.is_subset_of(&cover) {
                support.insert(ConfigCell::new((*a).clone(), (*b).clone()).expect("disjoint"));
            }
        }
    }
    let omega = Gf2Chain { degree, support };
    if let Some(bad) = omega.boundary().support.iter().next() {
        let label = |s: &Simplex| {
            format!("{{{}}}", doubled.complex.simplex_labels(s).join(","))
        };
        return Err(VkError::OmegaNotACycle(format!(
            "{{{}, {}}}",
            label(bad.first()),
            label(bad.second())
        )));
    }
    Ok(omega)
}

/// How the class `vk^n` was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VkClass {
    /// The cocycle pairs to 1 with the given cycle.
    NontrivialByPairing { cycle: Gf2Chain, ordering: VertexOrdering },
    /// `δx = νκ` has no solution; ranks of the coefficient and augmented
    /// systems are reported.
    NontrivialBySolver { rank: usize, augmented_rank: usize },
    /// The cocycle is the coboundary of the certificate.
    Trivial { certificate: Gf2Cochain },
}

impl VkClass {
    pub fn is_nontrivial(&self) -> bool {
        !matches!(self, VkClass::Trivial { .. })
    }
}

/// Decides whether `vk^n(K) ≠ 0`. A supplied cycle is tried first (pairing
/// with `νκ^n` under `ordering`); otherwise the coboundary equation is solved.
pub fn vk_nontrivial(
    k: &SimplicialComplex,
    n: usize,
    ordering: &VertexOrdering,
    witness: Option<&Gf2Chain>,
) -> Result<VkClass, VkError> {
    let cc = ConfigComplex::new(k);
    vk_nontrivial_in(&cc, n, ordering, witness)
}

pub fn vk_nontrivial_in(
    cc: &ConfigComplex,
    n: usize,
    ordering: &VertexOrdering,
    witness: Option<&Gf2Chain>,
) -> Result<VkClass, VkError> {
    let cocycle = vk_cocycle(cc, n, ordering);
    if let Some(w) = witness {
        if w.boundary().support.is_empty() && evaluate(&cocycle, w)? {
            return Ok(VkClass::NontrivialByPairing {
                cycle: w.clone(),
                ordering: ordering.clone(),
            });
        }
    }
    match coboundary_certificate(cc, &cocycle)? {
        Some(certificate) => Ok(VkClass::Trivial { certificate }),
        None => {
            let delta = cc.coboundary_matrix(n);
            let rank = delta.rank();
            let mut aug_rows: Vec<BitRow> = (0..delta.nrows())
                .map(|i| {
                    let mut r = BitRow::zeros(delta.ncols() + 1);
                    for j in delta.row(i).ones() {
                        r.set(j, true);
                    }
                    r
                })
                .collect();
            for c in &cocycle.support {
                aug_rows[cc.cell_index(c).expect("cell")].set(delta.ncols(), true);
            }
            let augmented_rank = Gf2Matrix::from_rows(delta.ncols() + 1, aug_rows).rank();
            Ok(VkClass::NontrivialBySolver {
                rank,
                augmented_rank,
            })
        }
    }
}

/// Ω for `O_m L` built from the first nonzero top-degree cycle of `L` and its
/// first simplex, pushed into the vertex indices of `O_m L`, together with the
/// canonical ordering of `O_m L`. `None` if `H_d(L; ℤ₂) = 0`.
pub fn octahedral_witness(
    octa: &OctaComplex,
) -> Result<Option<(Gf2Chain, VertexOrdering)>, VkError> {
    let l = &octa.base;
    if l.dim() < 0 {
        return Ok(None);
    }
    let d = l.dim() as usize;
    let Some(cycle) = find_z2_cycle(l, d) else {
        return Ok(None);
    };
    let delta = cycle[0].clone();
    let doubled = doubled_complex(octa, &cycle, &delta)?;
    let omega = omega_chain(&doubled, &cycle, &delta)?;
    let pushed = omega.map_vertices(&doubled.parent_index);
    Ok(Some((pushed, octa.canonical_ordering(&delta))))
}

/// Convenience: `O_m L` together with its Ω witness, if any.
pub fn octahedralize_with_witness(
    l: &SimplicialComplex,
    m: usize,
) -> Result<(OctaComplex, Option<(Gf2Chain, VertexOrdering)>), VkError> {
    let octa = octahedralization(l, m)?;
    let w = octahedral_witness(&octa)?;
    Ok((octa, w))
}

/// For all faces `σ, τ` of the subcomplex generated by the cycle support
/// whose vertex sets jointly contain `Vert Δ`: `σ ∩ τ ⊆ Δ`.
pub fn star_condition(
    l: &SimplicialComplex,
    cycle: &[Simplex],
    delta: &Simplex,
) -> Result<bool, VkError> {
    validate_cycle(l, cycle, delta)?;
    let mut faces: BTreeSet<Simplex> = BTreeSet::new();
    for s in cycle {
        faces.extend(s.nonempty_subsets());
    }
    let faces: Vec<Simplex> = faces.into_iter().collect();
    for (i, a) in faces.iter().enumerate() {
        for b in &faces[i..] {
            if delta.is_subset_of(&a.union(b)) && !a.intersection(b).is_subset_of(delta) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
