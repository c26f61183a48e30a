//! Polyhedral joins over a simplicial complex, the octahedralization `O_m L`
//! (a copy of `∂Δ^m` over every vertex) and the doubled complex over a top
//! simplex of a mod-2 cycle.

use std::collections::HashSet;

use thiserror::Error;

use crate::chains::is_z2_cycle;
use crate::scomplex::{ComplexError, Simplex, SimplicialComplex};
use crate::vk::VertexOrdering;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyjoinError {
    #[error("factor complex over vertex `{0}` is empty")]
    EmptyFactor(String),
    #[error("expected one factor per base vertex ({expected}), got {got}")]
    FactorCount { expected: usize, got: usize },
    #[error("sphere parameter m must be at least 1")]
    ZeroM,
    #[error("cycle support is empty")]
    EmptyCycle,
    #[error("cycle support mixes simplices of different dimensions")]
    MixedDimensions,
    #[error("cycle support is not a mod-2 cycle")]
    NotACycle,
    #[error("simplex {0} is not in the cycle support")]
    SimplexNotInCycle(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A vertex of `O_m L`: a base vertex of `L` together with a sphere label in
/// `0..=m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledVertex {
    pub base: usize,
    pub label: usize,
}

/// `O_m L`, or a full subcomplex of it, with its projection to `L`.
#[derive(Clone, Debug)]
pub struct OctaComplex {
    pub complex: SimplicialComplex,
    /// Labelled vertex for each vertex index of `complex`.
    pub vertices: Vec<LabeledVertex>,
    /// Index of each vertex of `complex` in the ambient `O_m L`.
    pub parent_index: Vec<usize>,
    pub base: SimplicialComplex,
    pub m: usize,
    /// `dim O_m L = m(d+1) - 1` with `d = dim L`.
    pub delta: usize,
}

impl OctaComplex {
    /// Base vertex of each vertex.
    pub fn projection(&self, v: usize) -> usize {
        self.vertices[v].base
    }

    /// Image of a simplex under the projection to `L`.
    pub fn project(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&v| self.projection(v)).collect())
    }

    /// Vertex indices lying over the base vertex `b`.
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].base == b)
            .collect()
    }

    /// Vertex ordering for the pairing argument: vertices over `delta` first
    /// (in base order), then the remaining base vertices, with the labels over
    /// each base vertex kept consecutive and increasing.
    pub fn canonical_ordering(&self, delta: &Simplex) -> VertexOrdering {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&v| {
            let lv = self.vertices[v];
            (!delta.contains(lv.base), lv.base, lv.label)
        });
        VertexOrdering::from_sequence(&order).expect("permutation of the vertex set")
    }

    /// Maps a simplex of this complex into `O_m L` vertex indices.
    pub fn to_parent(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&v| self.parent_index[v]).collect())
    }
}

/// Polyhedral join of the factors over `l`: the union over simplices `σ` of
/// `l` of the joins of the factors indexed by the vertices of `σ`. Vertex
/// labels are those of the factors, concatenated in base-vertex order.
pub fn polyhedral_join(
    l: &SimplicialComplex,
    factors: &[SimplicialComplex],
) -> Result<SimplicialComplex, PolyjoinError> {
    if factors.len() != l.vertex_count() {
        return Err(PolyjoinError::FactorCount {
            expected: l.vertex_count(),
            got: factors.len(),
        });
    }
    let mut labels = Vec::new();
    let mut offsets = Vec::with_capacity(factors.len());
    let mut seen = HashSet::new();
    for (v, f) in factors.iter().enumerate() {
        if f.vertex_count() == 0 {
            return Err(PolyjoinError::EmptyFactor(l.label(v).to_string()));
        }
        offsets.push(labels.len());
        for lab in f.labels() {
            if !seen.insert(lab.clone()) {
                return Err(ComplexError::LabelCollision(lab.clone()).into());
            }
            labels.push(lab.clone());
        }
    }
    let mut facets = Vec::new();
    for sigma in l.facets() {
        let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
        for &v in sigma.vertices() {
            let mut next = Vec::with_capacity(partial.len() * factors[v].facets().len());
            for p in &partial {
                for g in factors[v].facets() {
                    let mut q = p.clone();
                    q.extend(g.vertices().iter().map(|&x| x + offsets[v]));
                    next.push(q);
                }
            }
            partial = next;
        }
        facets.extend(partial.into_iter().map(Simplex::new));
    }
    Ok(SimplicialComplex::from_index_facets(labels, facets))
}

fn vertex_label(l: &SimplicialComplex, lv: LabeledVertex) -> String {
    format!("{}:{}", l.label(lv.base), lv.label)
}

/// `O_m L`: the polyhedral join over `l` of copies of `∂Δ^m` on labels
/// `0..=m`. Vertex `(b, j)` has index `b(m+1) + j` and label `"<b>:<j>"`.
pub fn octahedralization(l: &SimplicialComplex, m: usize) -> Result<OctaComplex, PolyjoinError> {
    if m == 0 {
        return Err(PolyjoinError::ZeroM);
    }
    let n = l.vertex_count();
    let vertices: Vec<LabeledVertex> = (0..n)
        .flat_map(|base| (0..=m).map(move |label| LabeledVertex { base, label }))
        .collect();
    let factors: Vec<SimplicialComplex> = (0..n)
        .map(|b| {
            let labels: Vec<String> = (0..=m)
                .map(|j| vertex_label(l, LabeledVertex { base: b, label: j }))
                .collect();
            SimplicialComplex::simplex_boundary(&labels)
        })
        .collect();
    let complex = polyhedral_join(l, &factors)?;
    let d = l.dim().max(0) as usize;
    Ok(OctaComplex {
        complex,
        parent_index: (0..vertices.len()).collect(),
        vertices,
        base: l.clone(),
        m,
        delta: m * (d + 1) - 1,
    })
}

/// The doubled complex `D_m^C(Δ)`: the full subcomplex of `O_m L` on the
/// vertices `Vert(C) × {0}` together with every label over `Vert(Δ)`.
///
/// `cycle` is the support of a mod-2 cycle of `L` (all simplices of one
/// dimension) and `delta` one of its simplices.
pub fn doubled_complex(
    octa: &OctaComplex,
    cycle: &[Simplex],
    delta: &Simplex,
) -> Result<OctaComplex, PolyjoinError> {
    validate_cycle(&octa.base, cycle, delta)?;
    let m = octa.m;
    let mut keep: Vec<usize> = Vec::new();
    let in_c: HashSet<usize> = cycle.iter().flat_map(|s| s.vertices().iter().copied()).collect();
    for (i, lv) in octa.vertices.iter().enumerate() {
        let chosen = if delta.contains(lv.base) {
            true
        } else {
            in_c.contains(&lv.base) && lv.label == 0
        };
        if chosen {
            keep.push(i);
        }
    }
    let complex = octa.complex.full_subcomplex(&keep);
    Ok(OctaComplex {
        complex,
        vertices: keep.iter().map(|&i| octa.vertices[i]).collect(),
        parent_index: keep.iter().map(|&i| octa.parent_index[i]).collect(),
        base: octa.base.clone(),
        m,
        delta: octa.delta,
    })
}

pub(crate) fn validate_cycle(
    l: &SimplicialComplex,
    cycle: &[Simplex],
    delta: &Simplex,
) -> Result<(), PolyjoinError> {
    let Some(first) = cycle.first() else {
        return Err(PolyjoinError::EmptyCycle);
    };
    if cycle.iter().any(|s| s.len() != first.len()) {
        return Err(PolyjoinError::MixedDimensions);
    }
    for s in cycle {
        if !l.contains(s) {
            return Err(ComplexError::NotASimplex(format!("{{{}}}", l.simplex_labels(s).join(","))).into());
        }
    }
    if !is_z2_cycle(cycle) {
        return Err(PolyjoinError::NotACycle);
    }
    if !cycle.contains(delta) {
        return Err(PolyjoinError::SimplexNotInCycle(format!(
            "{{{}}}",
            delta
                .vertices()
                .iter()
                .map(|&v| l.labels().get(v).cloned().unwrap_or_else(|| v.to_string()))
                .collect::<Vec<_>>()
                .join(",")
        )));
    }
    Ok(())
}
