//! Coxeter systems, their nerves, the subdivision `L_⊘`, and action-dimension
//! reports for Artin groups and graph products.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{check_consistency, Bound, Quantity};
use crate::chains::{edce_verdict, reduced_betti_z2, EdceVerdict};
use crate::scomplex::{Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("a Coxeter system needs at least one generator")]
    Empty,
    #[error("matrix is not {0}x{0}")]
    NotSquare(usize),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("diagonal entry {0} must be 1")]
    BadDiagonal(usize),
    #[error("entries ({0},{1}) and ({1},{0}) differ")]
    NotSymmetric(usize, usize),
    #[error("entry ({0},{1}) = {2} must be at least 2 or 0 for infinity")]
    BadLabel(usize, usize, u32),
    #[error("subset {0:?} is not spherical")]
    NotSpherical(Vec<String>),
    #[error("no generator with index {0}")]
    NoSuchGenerator(usize),
    #[error("graph products need a flag complex")]
    NotFlag,
    #[error("vertex data has {got} entries for {expected} vertices")]
    VertexDataCount { expected: usize, got: usize },
    #[error("vertex `{0}` has manifold dimension 0")]
    ZeroDimension(String),
    #[error("vertex `{0}` has nonempty boundary and needs dimension at least 2")]
    BoundaryTooSmall(String),
}

/// Irreducible finite Coxeter groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    /// Dihedral of order `2m`, used for `m ∉ {3, 4}`.
    I2(u32),
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H(n) => write!(f, "H{n}"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A Coxeter matrix on named generators; `0` encodes `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    generators: Vec<String>,
    matrix: Vec<Vec<u32>>,
}

impl CoxeterSystem {
    pub fn new(generators: Vec<String>, matrix: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = generators.len();
        if n == 0 {
            return Err(CoxeterError::Empty);
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(CoxeterError::NotSquare(n));
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(CoxeterError::DuplicateGenerator(g.clone()));
            }
        }
        for i in 0..n {
            if matrix[i][i] != 1 {
                return Err(CoxeterError::BadDiagonal(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(CoxeterError::NotSymmetric(i.min(j), i.max(j)));
                }
                if matrix[i][j] == 1 {
                    return Err(CoxeterError::BadLabel(i, j, 1));
                }
            }
        }
        Ok(CoxeterSystem { generators, matrix })
    }

    /// Generators `s0, s1, …` with the given matrix.
    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let generators = (0..matrix.len()).map(|i| format!("s{i}")).collect();
        Self::new(generators, matrix)
    }

    /// Right-angled system over a graph: `2` on edges, `∞` elsewhere.
    pub fn right_angled(graph: &SimplicialComplex) -> Self {
        let adj = graph.adjacency();
        let n = graph.vertex_count();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else if adj[i][j] { 2 } else { 0 }).collect())
            .collect();
        Self::new(graph.labels().to_vec(), matrix).expect("right-angled matrix is valid")
    }

    /// The linear diagram `s0 - s1 - …` with the given consecutive labels and
    /// `2` between non-neighbours.
    pub fn path(labels: &[u32]) -> Result<Self, CoxeterError> {
        let n = labels.len() + 1;
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, &l) in labels.iter().enumerate() {
            m[i][i + 1] = l;
            m[i + 1][i] = l;
        }
        Self::from_matrix(m)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    /// `m_st`, with `None` for `∞`.
    pub fn m(&self, s: usize, t: usize) -> Option<u32> {
        match self.matrix[s][t] {
            0 => None,
            m => Some(m),
        }
    }

    fn names(&self, t: &[usize]) -> Vec<String> {
        t.iter().map(|&i| self.generators[i].clone()).collect()
    }

    fn check(&self, t: &[usize]) -> Result<(), CoxeterError> {
        match t.iter().find(|&&i| i >= self.len()) {
            Some(&i) => Err(CoxeterError::NoSuchGenerator(i)),
            None => Ok(()),
        }
    }

    /// Diagram edge: `m_st ≥ 3` or `∞`.
    fn joined(&self, s: usize, t: usize) -> bool {
        s != t && self.matrix[s][t] != 2
    }

    /// Connected components of the diagram restricted to `t`.
    pub fn diagram_components(&self, t: &[usize]) -> Vec<Vec<usize>> {
        let mut t: Vec<usize> = t.to_vec();
        t.sort_unstable();
        t.dedup();
        let mut seen = vec![false; t.len()];
        let mut out = Vec::new();
        for start in 0..t.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![t[start]];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..t.len() {
                    if !seen[j] && self.joined(t[i], t[j]) {
                        seen[j] = true;
                        comp.push(t[j]);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Catalog type of a connected diagram, or `None` if `W_T` is infinite.
    pub fn classify_connected(&self, t: &[usize]) -> Option<FiniteType> {
        let k = t.len();
        let label = |a: usize, b: usize| self.matrix[t[a]][t[b]];
        let mut edges = Vec::new();
        for a in 0..k {
            for b in (a + 1)..k {
                if self.joined(t[a], t[b]) {
                    if label(a, b) == 0 {
                        return None;
                    }
                    edges.push((a, b));
                }
            }
        }
        match k {
            0 => return None,
            1 => return Some(FiniteType::A(1)),
            2 => {
                return Some(match label(0, 1) {
                    3 => FiniteType::A(2),
                    4 => FiniteType::B(2),
                    m => FiniteType::I2(m),
                })
            }
            _ => {}
        }
        if edges.len() != k - 1 {
            return None;
        }
        let mut nbrs = vec![Vec::new(); k];
        for &(a, b) in &edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let branch: Vec<usize> = (0..k).filter(|&v| nbrs[v].len() >= 3).collect();
        if !branch.is_empty() {
            if branch.len() > 1 || nbrs[branch[0]].len() > 3 || edges.iter().any(|&(a, b)| label(a, b) != 3) {
                return None;
            }
            let c = branch[0];
            let mut arms: Vec<usize> = nbrs[c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (c, start, 1);
                    loop {
                        let next: Vec<usize> = nbrs[cur].iter().copied().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => unreachable!("single branch vertex"),
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            return match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => Some(FiniteType::D(k)),
                (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Some(FiniteType::E(k)),
                _ => None,
            };
        }
        // a path: read labels from one end
        let end = (0..k).find(|&v| nbrs[v].len() == 1).expect("path has an end");
        let mut order = vec![end];
        while order.len() < k {
            let cur = *order.last().unwrap();
            let prev = if order.len() >= 2 { Some(order[order.len() - 2]) } else { None };
            let next = nbrs[cur].iter().copied().find(|&x| Some(x) != prev).unwrap();
            order.push(next);
        }
        let labels: Vec<u32> = order.windows(2).map(|w| label(w[0], w[1])).collect();
        let odd: Vec<(usize, u32)> = labels.iter().copied().enumerate().filter(|&(_, l)| l != 3).collect();
        let at_end = |i: usize| i == 0 || i == labels.len() - 1;
        match odd.as_slice() {
            [] => Some(FiniteType::A(k)),
            [(i, 4)] if at_end(*i) => Some(FiniteType::B(k)),
            [(1, 4)] if k == 4 => Some(FiniteType::F4),
            [(i, 5)] if at_end(*i) && k <= 4 => Some(FiniteType::H(k)),
            _ => None,
        }
    }

    /// Whether `W_T` is finite.
    pub fn is_spherical(&self, t: &[usize]) -> bool {
        self.diagram_components(t)
            .iter()
            .all(|c| self.classify_connected(c).is_some())
    }

    /// Irreducible factors of a spherical subset with their catalog types.
    pub fn irreducible_components(&self, t: &[usize]) -> Result<Vec<(Vec<usize>, FiniteType)>, CoxeterError> {
        self.check(t)?;
        self.diagram_components(t)
            .into_iter()
            .map(|c| match self.classify_connected(&c) {
                Some(ty) => Ok((c, ty)),
                None => Err(CoxeterError::NotSpherical(self.names(t))),
            })
            .collect()
    }

    /// Simplicial complex on `S` whose simplices are the spherical subsets.
    pub fn nerve(&self) -> SimplicialComplex {
        let n = self.len();
        let mut facets: Vec<Simplex> = Vec::new();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(set) = stack.pop() {
            let start = set.last().map_or(0, |&l| l + 1);
            let mut extended = false;
            for v in start..n {
                let mut next = set.clone();
                next.push(v);
                if self.is_spherical(&next) {
                    stack.push(next);
                    extended = true;
                }
            }
            if !extended && !set.is_empty() {
                facets.push(Simplex::new(set));
            }
        }
        SimplicialComplex::from_index_facets(self.generators.clone(), facets)
    }

    fn subset_label(&self, t: &[usize]) -> String {
        format!("{{{}}}", self.names(t).join(","))
    }

    /// The subdivision `L_⊘`: vertices are irreducible spherical subsets, and
    /// a set of them spans a simplex when its union is spherical and every
    /// pair is nested or orthogonal.
    pub fn l_odot(&self) -> SubdividedNerve {
        let nerve = self.nerve();
        let mut subsets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in nerve.facets() {
            for s in f.nonempty_subsets() {
                let t = s.into_vertices();
                if self.diagram_components(&t).len() == 1 {
                    subsets.insert(t);
                }
            }
        }
        let mut subsets: Vec<Vec<usize>> = subsets.into_iter().collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let k = subsets.len();
        let compatible = |a: &[usize], b: &[usize]| {
            let sa: BTreeSet<usize> = a.iter().copied().collect();
            let sb: BTreeSet<usize> = b.iter().copied().collect();
            sa.is_subset(&sb)
                || sb.is_subset(&sa)
                || (sa.is_disjoint(&sb) && a.iter().all(|&s| b.iter().all(|&t| self.matrix[s][t] == 2)))
        };
        let compat: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| compatible(&subsets[i], &subsets[j])).collect())
            .collect();
        let mut facets = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
        while let Some(set) = stack.pop() {
            let mut extended = false;
            for v in 0..k {
                if set.contains(&v) || !set.iter().all(|&u| compat[u][v]) {
                    continue;
                }
                let mut union: BTreeSet<usize> = set.iter().flat_map(|&u| subsets[u].iter().copied()).collect();
                union.extend(subsets[v].iter().copied());
                if self.is_spherical(&union.into_iter().collect::<Vec<_>>()) {
                    extended = true;
                    if v > *set.last().unwrap() {
                        let mut next = set.clone();
                        next.push(v);
                        stack.push(next);
                    }
                }
            }
            if !extended {
                facets.push(Simplex::new(set));
            }
        }
        let labels = subsets.iter().map(|t| self.subset_label(t)).collect();
        SubdividedNerve {
            complex: SimplicialComplex::from_index_facets(labels, facets),
            subsets,
        }
    }
}

/// `L_⊘`; vertex `i` stands for the irreducible spherical subset `subsets[i]`.
#[derive(Clone, Debug)]
pub struct SubdividedNerve {
    pub complex: SimplicialComplex,
    pub subsets: Vec<Vec<usize>>,
}

pub const LODOT_NOTE: &str =
    "L_odot simplex rule (nested or orthogonal, spherical union) is provisional";

pub const PROV_GDIM_ARTIN: &str = "Salvetti complex of dimension d+1 under K(pi,1)";
pub const PROV_ARTIN_UPPER: &str = "gluing spherical Artin manifolds over the nerve, dimension 2d+2";
pub const PROV_ARTIN_EDCE: &str = "nerve is EDCE, gluing into a contractible d-complex";
pub const PROV_ARTIN_OBSTRUCTOR: &str = "H_d(nerve; Z/2) nonzero, octahedral obstructor";
pub const PROV_SPHERICAL: &str = "spherical Artin group, product of irreducible factors";
pub const PROV_GP_UPPER: &str = "graph product gluing bound, sup over simplices of thickened dimension";
pub const PROV_GP_UNIFORM: &str = "graph product of closed m-manifolds, (m+1)(d+1)";
pub const PROV_GP_EDCE: &str = "graph product of closed m-manifolds over EDCE nerve, (m+1)(d+1)-1";
pub const PROV_GP_OBSTRUCTOR: &str = "graph product with H_d(L; Z/2) nonzero, polyhedral join obstructor";
pub const PROV_GP_GDIM: &str = "graph product of closed aspherical m-manifolds, m(d+1)";

#[derive(Clone, Debug, Serialize)]
pub struct SphericalFactor {
    pub generators: Vec<String>,
    pub finite_type: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtinReport {
    pub d: isize,
    pub nerve_is_flag: bool,
    /// Whether the K(π,1) hypothesis is in force, either from the caller or
    /// because the nerve is flag.
    pub kpi1: bool,
    pub spherical: bool,
    pub factors: Vec<SphericalFactor>,
    pub edce: EdceVerdict,
    pub top_reduced_betti_z2: usize,
    pub lodot_vertex_count: usize,
    pub bounds: Vec<Bound>,
    pub no_conclusion: Vec<String>,
    pub notes: Vec<String>,
}

pub fn artin_actdim_report(system: &CoxeterSystem, assume_kpi1: bool) -> ArtinReport {
    let nerve = system.nerve();
    let d = nerve.dim();
    let du = d.max(0) as usize;
    let flag = nerve.is_flag();
    let kpi1 = assume_kpi1 || flag;
    let all: Vec<usize> = (0..system.len()).collect();
    let spherical = system.is_spherical(&all);
    let edce = edce_verdict(&nerve);
    let top = reduced_betti_z2(&nerve).get(du).copied().unwrap_or(0);
    let lodot = system.l_odot();
    let mut bounds = Vec::new();
    let mut no_conclusion = Vec::new();
    let mut factors = Vec::new();
    if spherical {
        let comps = system.irreducible_components(&all).expect("spherical");
        let k = comps.len();
        factors = comps
            .iter()
            .map(|(c, ty)| SphericalFactor {
                generators: system.names(c),
                finite_type: ty.to_string(),
            })
            .collect();
        bounds.push(Bound::exact(Quantity::Actdim, 2 * system.len() - k, PROV_SPHERICAL));
    }
    if kpi1 {
        bounds.push(Bound::exact(Quantity::Gdim, du + 1, PROV_GDIM_ARTIN));
        bounds.push(Bound::upper(Quantity::Actdim, 2 * du + 2, PROV_ARTIN_UPPER));
        if edce.is_edce() {
            bounds.push(Bound::upper(Quantity::Actdim, 2 * du + 1, PROV_ARTIN_EDCE));
        } else {
            no_conclusion.push(format!("{PROV_ARTIN_EDCE}: EDCE criterion not met"));
        }
        if top > 0 {
            bounds.push(Bound::exact(Quantity::Actdim, 2 * du + 2, PROV_ARTIN_OBSTRUCTOR));
            bounds.push(Bound::exact(Quantity::Obdim, 2 * du + 2, PROV_ARTIN_OBSTRUCTOR));
        } else {
            no_conclusion.push(format!("{PROV_ARTIN_OBSTRUCTOR}: top homology vanishes"));
        }
    } else {
        for p in [PROV_GDIM_ARTIN, PROV_ARTIN_UPPER, PROV_ARTIN_EDCE, PROV_ARTIN_OBSTRUCTOR] {
            no_conclusion.push(format!("{p}: K(pi,1) hypothesis not assumed"));
        }
    }
    check_consistency(&bounds).expect("Artin bounds are consistent");
    ArtinReport {
        d,
        nerve_is_flag: flag,
        kpi1,
        spherical,
        factors,
        edce,
        top_reduced_betti_z2: top,
        lodot_vertex_count: lodot.complex.vertex_count(),
        bounds,
        no_conclusion,
        notes: vec![LODOT_NOTE.to_string()],
    }
}

/// Per-vertex data of a graph product: `G_v = π_1(M_v)` with `M_v` aspherical
/// of dimension `dim`, closed or with nonempty boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexData {
    pub dim: usize,
    pub closed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphProductReport {
    pub d: isize,
    pub uniform_closed_dim: Option<usize>,
    pub edce: EdceVerdict,
    pub edce_override: Option<bool>,
    pub top_reduced_betti_z2: usize,
    pub bounds: Vec<Bound>,
    pub no_conclusion: Vec<String>,
}

/// `edce_override` replaces the homological EDCE criterion when given, e.g.
/// to assert EDCE in dimension 2 where the criterion is inconclusive.
pub fn graph_product_actdim_report(
    l: &SimplicialComplex,
    vertex_data: &[VertexData],
    edce_override: Option<bool>,
) -> Result<GraphProductReport, CoxeterError> {
    if !l.is_flag() {
        return Err(CoxeterError::NotFlag);
    }
    if vertex_data.len() != l.vertex_count() {
        return Err(CoxeterError::VertexDataCount {
            expected: l.vertex_count(),
            got: vertex_data.len(),
        });
    }
    for (v, vd) in vertex_data.iter().enumerate() {
        if vd.dim == 0 {
            return Err(CoxeterError::ZeroDimension(l.label(v).to_string()));
        }
        if !vd.closed && vd.dim < 2 {
            return Err(CoxeterError::BoundaryTooSmall(l.label(v).to_string()));
        }
    }
    let d = l.dim();
    let du = d.max(0) as usize;
    let edce = edce_verdict(l);
    let edce_ok = edce_override.unwrap_or_else(|| edce.is_edce());
    let top = reduced_betti_z2(l).get(du).copied().unwrap_or(0);
    let uniform = vertex_data
        .first()
        .filter(|first| vertex_data.iter().all(|v| v.closed && v.dim == first.dim))
        .map(|v| v.dim);
    let mut bounds = Vec::new();
    let mut no_conclusion = Vec::new();
    match uniform {
        Some(m) => {
            bounds.push(Bound::exact(Quantity::Gdim, m * (du + 1), PROV_GP_GDIM));
            bounds.push(Bound::upper(Quantity::Actdim, (m + 1) * (du + 1), PROV_GP_UNIFORM));
            if edce_ok {
                bounds.push(Bound::upper(Quantity::Actdim, (m + 1) * (du + 1) - 1, PROV_GP_EDCE));
            } else {
                no_conclusion.push(format!("{PROV_GP_EDCE}: EDCE not established"));
            }
            if top > 0 {
                let v = (m + 1) * (du + 1);
                bounds.push(Bound::exact(Quantity::Actdim, v, PROV_GP_OBSTRUCTOR));
                bounds.push(Bound::exact(Quantity::Obdim, v, PROV_GP_OBSTRUCTOR));
                bounds.push(Bound::lower(Quantity::Pobdim, v, PROV_GP_OBSTRUCTOR));
            } else {
                no_conclusion.push(format!("{PROV_GP_OBSTRUCTOR}: top homology vanishes"));
            }
        }
        None => {
            let sup = l
                .facets()
                .iter()
                .map(|f| {
                    f.vertices()
                        .iter()
                        .map(|&v| vertex_data[v].dim + usize::from(vertex_data[v].closed))
                        .sum::<usize>()
                })
                .max()
                .unwrap_or(0);
            bounds.push(Bound::upper(Quantity::Actdim, sup, PROV_GP_UPPER));
            no_conclusion.push(format!("{PROV_GP_OBSTRUCTOR}: vertex manifolds are not uniform closed"));
        }
    }
    check_consistency(&bounds).expect("graph product bounds are consistent");
    Ok(GraphProductReport {
        d,
        uniform_closed_dim: uniform,
        edce,
        edce_override,
        top_reduced_betti_z2: top,
        bounds,
        no_conclusion,
    })
}
