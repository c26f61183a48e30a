//! Finite abstract simplicial complexes.
//!
//! Vertices carry string labels whose order is fixed at construction; every
//! simplex is stored as a sorted, duplicate-free list of vertex indices into
//! that order. All faces are materialised eagerly and grouped by dimension,
//! sorted lexicographically within each dimension. That face order is the
//! canonical simplex order used by boundary matrices and configuration spaces.
//!
//! The empty simplex is never stored in a [`SimplicialComplex`]; it only
//! appears as the optional minimum of a [`SimplexPoset`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::maximal_cliques;

/// Errors raised while building or querying a complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is listed more than once")]
    DuplicateVertex(String),
    #[error("facet #{0} is empty")]
    EmptyFacet(usize),
    #[error("simplex {0} is not a face of the complex")]
    NotASimplex(String),
    #[error("vertex label `{0}` occurs in both join factors")]
    LabelCollision(String),
}

/// A nonempty simplex: sorted, duplicate-free vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension; `-1` for the empty vertex set.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Simplex::new(v)
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    /// Codimension-one faces, in the order obtained by deleting the `i`-th
    /// vertex for `i = 0, 1, …`. Yields nothing for a vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (i, Simplex(v))
        })
    }

    /// All nonempty subsets, including the simplex itself.
    pub fn nonempty_subsets(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < usize::BITS as usize, "simplex too large to enumerate faces");
        (1usize..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| self.0[b])
                        .collect(),
                )
            })
            .collect()
    }
}

impl From<Vec<usize>> for Simplex {
    fn from(v: Vec<usize>) -> Self {
        Simplex::new(v)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite abstract simplicial complex with labelled, totally ordered
/// vertices.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
    facets: Vec<Simplex>,
    faces: Vec<Vec<Simplex>>,
    face_index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from labelled facets. Every listed vertex becomes a
    /// vertex of the complex, even if no facet mentions it.
    pub fn from_facets<S: AsRef<str>>(
        vertices: &[S],
        facets: &[Vec<S>],
    ) -> Result<Self, ComplexError> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(l.clone()));
            }
        }
        let mut simplices = Vec::with_capacity(facets.len());
        for (fi, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet(fi));
            }
            let mut idx = Vec::with_capacity(f.len());
            for v in f {
                let v = v.as_ref();
                idx.push(
                    *lookup
                        .get(v)
                        .ok_or_else(|| ComplexError::UnknownVertex(v.to_string()))?,
                );
            }
            simplices.push(Simplex::new(idx));
        }
        Ok(Self::from_index_facets(labels, simplices))
    }

    /// Builds a complex from facets given as vertex indices into `labels`.
    ///
    /// Panics if an index is out of range or labels repeat; callers inside the
    /// crate construct both sides together.
    pub fn from_index_facets(labels: Vec<String>, facets: Vec<Simplex>) -> Self {
        let n = labels.len();
        let mut lookup = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            let prev = lookup.insert(l.clone(), i);
            assert!(prev.is_none(), "duplicate vertex label `{l}`");
        }
        let mut covered = vec![false; n];
        let mut candidates: Vec<Simplex> = facets.into_iter().filter(|f| !f.is_empty()).collect();
        for f in &candidates {
            for &v in f.vertices() {
                assert!(v < n, "vertex index {v} out of range");
                covered[v] = true;
            }
        }
        candidates.extend((0..n).filter(|&v| !covered[v]).map(Simplex::vertex));
        let facets = reduce_to_maximal(candidates);

        let mut by_dim: Vec<HashSet<Simplex>> = Vec::new();
        for f in &facets {
            for s in f.nonempty_subsets() {
                let d = s.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, HashSet::new);
                }
                by_dim[d].insert(s);
            }
        }
        let faces: Vec<Vec<Simplex>> = by_dim
            .into_iter()
            .map(|set| {
                let mut v: Vec<Simplex> = set.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        let face_index = faces
            .iter()
            .map(|fs| fs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        SimplicialComplex {
            labels,
            lookup,
            facets,
            faces,
            face_index,
        }
    }

    /// The complex with no vertices.
    pub fn empty() -> Self {
        Self::from_index_facets(Vec::new(), Vec::new())
    }

    /// The full simplex on the given labels.
    pub fn full_simplex<S: AsRef<str>>(labels: &[S]) -> Self {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let all = Simplex::new((0..labels.len()).collect());
        Self::from_index_facets(labels, vec![all])
    }

    /// The boundary of the full simplex on the given labels.
    pub fn simplex_boundary<S: AsRef<str>>(labels: &[S]) -> Self {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let n = labels.len();
        let facets = (0..n)
            .map(|skip| Simplex::new((0..n).filter(|&v| v != skip).collect()))
            .collect();
        Self::from_index_facets(labels, facets)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, ComplexError> {
        self.lookup
            .get(label)
            .copied()
            .ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))
    }

    /// Resolves a list of labels to a simplex (not checked for membership).
    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex, ComplexError> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Simplex::new)
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Dimension, or `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Number of faces in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// The `k`-dimensional faces in canonical order (empty if `k` is out of
    /// range).
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All faces, by increasing dimension.
    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Position of `s` within [`faces`](Self::faces) of its dimension.
    pub fn face_index(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.face_index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.face_index(s).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, fs)| if k % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) })
            .sum()
    }

    /// Adjacency matrix of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for e in self.faces(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// Whether every clique of the 1-skeleton spans a simplex, together with
    /// the clique complex of the 1-skeleton (equal to `self` when flag).
    pub fn flag_check_and_complete(&self) -> (bool, SimplicialComplex) {
        let completion = self.flag_completion();
        let is_flag = completion.face_count() == self.face_count();
        (is_flag, completion)
    }

    pub fn is_flag(&self) -> bool {
        self.flag_check_and_complete().0
    }

    /// Clique complex of the 1-skeleton, on the same vertex labels.
    pub fn flag_completion(&self) -> SimplicialComplex {
        let cliques = maximal_cliques(&self.adjacency());
        SimplicialComplex::from_index_facets(
            self.labels.clone(),
            cliques.into_iter().map(Simplex::new).collect(),
        )
    }

    /// Simplices all of whose vertices lie in `subset`.
    pub fn full_subcomplex(&self, subset: &[usize]) -> SimplicialComplex {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let keep_simplex = Simplex(keep.clone());
        let facets = self
            .facets
            .iter()
            .map(|f| f.intersection(&keep_simplex))
            .filter(|f| !f.is_empty())
            .collect();
        self.restrict_labels(&keep, facets)
    }

    /// Like [`full_subcomplex`](Self::full_subcomplex), addressed by labels.
    pub fn full_subcomplex_by_labels<S: AsRef<str>>(
        &self,
        subset: &[S],
    ) -> Result<SimplicialComplex, ComplexError> {
        let idx = subset
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.full_subcomplex(&idx))
    }

    /// Closed-off link: all faces disjoint from `sigma` whose union with it
    /// is a face. Its vertex set is the set of vertices appearing in it.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        self.require_face(sigma)?;
        let facets: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(f))
            .map(|f| f.difference(sigma))
            .filter(|f| !f.is_empty())
            .collect();
        let used = used_vertices(&facets);
        Ok(self.restrict_labels(&used, facets))
    }

    /// Closed star: all faces of facets containing `sigma`.
    pub fn star(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        self.require_face(sigma)?;
        let facets: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(f))
            .cloned()
            .collect();
        let used = used_vertices(&facets);
        Ok(self.restrict_labels(&used, facets))
    }

    /// Cone with a new apex appended last in the vertex order.
    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex, ComplexError> {
        if self.lookup.contains_key(apex) {
            return Err(ComplexError::LabelCollision(apex.to_string()));
        }
        let a = self.vertex_count();
        let mut labels = self.labels.clone();
        labels.push(apex.to_string());
        let mut facets: Vec<Simplex> = self
            .facets
            .iter()
            .map(|f| {
                let mut v = f.vertices().to_vec();
                v.push(a);
                Simplex(v)
            })
            .collect();
        facets.push(Simplex::vertex(a));
        Ok(SimplicialComplex::from_index_facets(labels, facets))
    }

    /// Join; vertices of `self` precede those of `other`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        if let Some(l) = other.labels.iter().find(|l| self.lookup.contains_key(*l)) {
            return Err(ComplexError::LabelCollision(l.clone()));
        }
        let shift = self.vertex_count();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let shifted: Vec<Simplex> = other
            .facets
            .iter()
            .map(|f| Simplex(f.vertices().iter().map(|v| v + shift).collect()))
            .collect();
        let facets = if self.facets.is_empty() {
            shifted
        } else if shifted.is_empty() {
            self.facets.clone()
        } else {
            let mut out = Vec::with_capacity(self.facets.len() * shifted.len());
            for f in &self.facets {
                for g in &shifted {
                    let mut v = f.vertices().to_vec();
                    v.extend_from_slice(g.vertices());
                    out.push(Simplex(v));
                }
            }
            out
        };
        Ok(SimplicialComplex::from_index_facets(labels, facets))
    }

    /// Barycentric subdivision: the order complex of the nonempty faces.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        order_complex(&SimplexPoset::new(self, false))
    }

    fn require_face(&self, s: &Simplex) -> Result<(), ComplexError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(ComplexError::NotASimplex(format!(
                "{{{}}}",
                s.vertices()
                    .iter()
                    .map(|&v| self.labels.get(v).cloned().unwrap_or_else(|| v.to_string()))
                    .collect::<Vec<_>>()
                    .join(",")
            )))
        }
    }

    /// Re-indexes `facets` (given in `self` indices) onto the sorted vertex
    /// subset `keep`.
    fn restrict_labels(&self, keep: &[usize], facets: Vec<Simplex>) -> SimplicialComplex {
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let facets = facets
            .into_iter()
            .map(|f| Simplex::new(f.vertices().iter().map(|&v| remap[v]).collect()))
            .collect();
        SimplicialComplex::from_index_facets(labels, facets)
    }

    /// Checks downward closure of the face cache.
    pub fn is_downward_closed(&self) -> bool {
        self.all_faces()
            .all(|s| s.boundary_faces().all(|(_, f)| self.contains(&f)))
    }
}

fn used_vertices(facets: &[Simplex]) -> Vec<usize> {
    let mut used: Vec<usize> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    used
}

fn reduce_to_maximal(mut candidates: Vec<Simplex>) -> Vec<Simplex> {
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    candidates.dedup();
    let mut kept: Vec<Simplex> = Vec::new();
    for c in candidates {
        if !kept.iter().any(|k| c.is_subset_of(k)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// A finite poset presented by element labels and an order test.
pub trait Poset {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn element_label(&self, i: usize) -> String;
    /// `i ≤ j`.
    fn le(&self, i: usize, j: usize) -> bool;
}

/// Order complex: vertices are poset elements, simplices are chains.
pub fn order_complex<P: Poset + ?Sized>(poset: &P) -> SimplicialComplex {
    let n = poset.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if poset.le(i, j) || poset.le(j, i) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let labels = (0..n).map(|i| poset.element_label(i)).collect();
    let chains = maximal_cliques(&adj);
    SimplicialComplex::from_index_facets(labels, chains.into_iter().map(Simplex::new).collect())
}

/// Faces of a complex ordered by inclusion, optionally with the empty face as
/// minimum (stored first, as the empty simplex).
#[derive(Clone, Debug)]
pub struct SimplexPoset {
    elements: Vec<(Simplex, String)>,
}

impl SimplexPoset {
    pub fn new(k: &SimplicialComplex, include_empty: bool) -> Self {
        let mut elements = Vec::with_capacity(k.face_count() + 1);
        if include_empty {
            elements.push((Simplex(Vec::new()), "{}".to_string()));
        }
        for s in k.all_faces() {
            let label = format!("{{{}}}", k.simplex_labels(s).join(","));
            elements.push((s.clone(), label));
        }
        SimplexPoset { elements }
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.elements[i].0
    }

    pub fn has_minimum(&self) -> bool {
        (0..self.len()).any(|i| (0..self.len()).all(|j| self.le(i, j)))
    }
}

impl Poset for SimplexPoset {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn element_label(&self, i: usize) -> String {
        self.elements[i].1.clone()
    }

    fn le(&self, i: usize, j: usize) -> bool {
        self.elements[i].0.is_subset_of(&self.elements[j].0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            &["a", "b", "c", "d", "e"],
            &[
                vec!["a", "b"],
                vec!["b", "c"],
                vec!["c", "d"],
                vec!["d", "e"],
                vec!["e", "a"],
            ],
        )
        .unwrap()
    }

    #[test]
    fn pentagon_f_vector() {
        assert_eq!(pentagon().f_vector(), vec![5, 5]);
    }

    #[test]
    fn two_simplex_f_vector() {
        let k = SimplicialComplex::from_facets(&["a", "b", "c"], &[vec!["a", "b", "c"]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn duplicate_facets_collapse() {
        let k = SimplicialComplex::from_facets(&["a", "b"], &[vec!["a", "b"], vec!["b", "a"]])
            .unwrap();
        assert_eq!(k.f_vector(), vec![2, 1]);
        assert_eq!(k.facets().len(), 1);
    }

    #[test]
    fn dominated_facet_removed() {
        let k = SimplicialComplex::from_facets(
            &["a", "b", "c"],
            &[vec!["a", "b"], vec!["a", "b", "c"]],
        )
        .unwrap();
        assert_eq!(k.facets().len(), 1);
    }

    #[test]
    fn unknown_vertex_rejected() {
        let err = SimplicialComplex::from_facets(&["a"], &[vec!["a", "z"]]).unwrap_err();
        assert_eq!(err, ComplexError::UnknownVertex("z".into()));
    }

    #[test]
    fn isolated_vertices_without_facets() {
        let k = SimplicialComplex::from_facets::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(k.f_vector(), vec![2]);
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn flag_detection() {
        let (flag, completion) = pentagon().flag_check_and_complete();
        assert!(flag);
        assert_eq!(completion, pentagon());

        let hollow = SimplicialComplex::simplex_boundary(&["a", "b", "c"]);
        let (flag, completion) = hollow.flag_check_and_complete();
        assert!(!flag);
        assert_eq!(completion.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn full_subcomplexes() {
        let tetra = SimplicialComplex::simplex_boundary(&["1", "2", "3", "4"]);
        let tri = tetra.full_subcomplex_by_labels(&["1", "2", "3"]).unwrap();
        assert_eq!(tri.f_vector(), vec![3, 3, 1]);

        let p = pentagon();
        assert_eq!(p.full_subcomplex_by_labels(&["a", "b"]).unwrap().f_vector(), vec![2, 1]);
        assert_eq!(p.full_subcomplex_by_labels(&["a", "c"]).unwrap().f_vector(), vec![2]);
        assert!(p.full_subcomplex_by_labels(&["q"]).is_err());
    }

    #[test]
    fn link_star_cone_join() {
        let p = pentagon();
        let lk = p.link(&Simplex::vertex(0)).unwrap();
        assert_eq!(lk.f_vector(), vec![2]);
        assert_eq!(lk.labels(), &["b".to_string(), "e".to_string()]);
        assert_eq!(p.star(&Simplex::vertex(0)).unwrap().f_vector(), vec![3, 2]);

        let s0a = SimplicialComplex::from_facets::<&str>(&["x", "y"], &[]).unwrap();
        let s0b = SimplicialComplex::from_facets::<&str>(&["u", "v"], &[]).unwrap();
        let square = s0a.join(&s0b).unwrap();
        assert_eq!(square.f_vector(), vec![4, 4]);
        assert_eq!(square.euler_characteristic(), 0);
        assert!(s0a.join(&s0a).is_err());

        let c = p.cone("apex").unwrap();
        assert_eq!(c.f_vector(), vec![6, 10, 5]);
        assert!(p.cone("a").is_err());
    }

    #[test]
    fn link_of_non_face_is_error() {
        let p = pentagon();
        assert!(p.link(&Simplex::new(vec![0, 2])).is_err());
    }

    #[test]
    fn barycentric_subdivisions() {
        let tri = SimplicialComplex::full_simplex(&["a", "b", "c"]);
        let sd = tri.barycentric_subdivision();
        assert_eq!(sd.f_vector(), vec![7, 12, 6]);
        assert_eq!(sd.euler_characteristic(), 1);

        let s0 = SimplicialComplex::from_facets::<&str>(&["x", "y"], &[]).unwrap();
        assert_eq!(s0.barycentric_subdivision().f_vector(), vec![2]);

        let edge = SimplicialComplex::full_simplex(&["a", "b"]);
        assert_eq!(edge.barycentric_subdivision().f_vector(), vec![3, 2]);
    }

    #[test]
    fn simplex_poset_with_empty_has_minimum() {
        let p = pentagon();
        assert!(SimplexPoset::new(&p, true).has_minimum());
        assert!(!SimplexPoset::new(&p, false).has_minimum());
    }

    #[test]
    fn simplex_set_operations() {
        let a = Simplex::new(vec![3, 1, 2]);
        let b = Simplex::new(vec![2, 5]);
        assert_eq!(a.vertices(), &[1, 2, 3]);
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.intersection(&b).vertices(), &[2]);
        assert_eq!(a.union(&b).vertices(), &[1, 2, 3, 5]);
        assert!(Simplex::new(vec![1, 3]).is_subset_of(&a));
        assert!(!Simplex::new(vec![1, 4]).is_subset_of(&a));
        assert_eq!(a.boundary_faces().count(), 3);
        assert_eq!(Simplex::vertex(4).boundary_faces().count(), 0);
    }
}
