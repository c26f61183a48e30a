//! Affine hyperplane arrangements with rational coefficients, read as complex
//! arrangements. Everything is computed exactly over ℚ.
//!
//! A flat is identified by the set `A_X` of hyperplanes containing it; two
//! flats coincide iff these sets coincide. The intersection poset is ordered
//! by reverse inclusion, so `X ≤ Y` iff `A_X ⊆ A_Y`, and the ambient space is
//! the minimum.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{check_consistency, Bound, Quantity};
use crate::scomplex::{order_complex, Poset, Simplex, SimplicialComplex};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("hyperplane {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("hyperplane {index} has {got} coefficients, expected {expected}")]
    WrongLength { index: usize, expected: usize, got: usize },
    #[error("hyperplanes {0} and {1} define the same solution set")]
    Duplicate(usize, usize),
    #[error("arrangement is not central")]
    NotCentral,
    #[error("no hyperplane with index {0}")]
    NoSuchHyperplane(usize),
    #[error("no flat with index {0}")]
    NoSuchFlat(usize),
    #[error("flat {0} is not an irreducible flat")]
    NotIrreducible(String),
    #[error("flats {0:?} do not span a simplex of the flag-completed irreducible complex")]
    NotASimplex(Vec<String>),
    #[error("not a building set: localization at {0} does not factor over the maximal building-set flats below it")]
    InvalidBuildingSet(String),
    #[error("building set must consist of proper flats; {0} is the ambient space")]
    AmbientInBuildingSet(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("deconing identity failed: p_A = {p_a:?}, (1+t)·p_dA = {product:?}")]
    DeconeIdentity { p_a: Vec<i64>, product: Vec<i64> },
}

/// The hyperplane `normal · x = offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Hyperplane { normal, offset }
    }

    /// Builds a hyperplane from integer coefficients.
    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Hyperplane {
            normal: normal.iter().map(|&a| int(a)).collect(),
            offset: int(offset),
        }
    }
}

fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, ArrangementError> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| ArrangementError::BadRational(s.to_string()))
}

/// Formats a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---- exact linear algebra ----

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of vectors of length `n`.
pub fn rank(vectors: &[Vec<Rational>], n: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows, n).len()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Solution set of `normal_i · x = offset_i` as basepoint plus direction
/// basis, or `None` if inconsistent.
fn solve_affine(eqs: &[&Hyperplane], n: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut rows: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|h| {
            let mut r = h.normal.clone();
            r.push(h.offset.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut base = vec![Rational::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        base[p] = rows[r][n].clone();
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let dirs = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            v
        })
        .collect();
    Some((base, dirs))
}

/// Inverse of a square nonsingular matrix.
fn inverse(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut rows: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut rows, 2 * n);
    assert_eq!(pivots[..n.min(pivots.len())], (0..n).collect::<Vec<_>>()[..], "singular matrix");
    rows.into_iter().map(|r| r[n..].to_vec()).collect()
}

// ---- arrangements ----

/// A finite list of affine hyperplanes in `ℂ^n` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    names: Vec<String>,
}

impl Arrangement {
    /// Validates and builds an arrangement; hyperplanes are named `H0, H1, …`.
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        let names = (0..hyperplanes.len()).map(|i| format!("H{i}")).collect();
        Self::with_names(dim, hyperplanes, names)
    }

    pub fn with_names(
        dim: usize,
        hyperplanes: Vec<Hyperplane>,
        names: Vec<String>,
    ) -> Result<Self, ArrangementError> {
        assert_eq!(names.len(), hyperplanes.len(), "one name per hyperplane");
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(ArrangementError::WrongLength {
                    index: i,
                    expected: dim,
                    got: h.normal.len(),
                });
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(ArrangementError::ZeroNormal(i));
            }
        }
        for i in 0..hyperplanes.len() {
            for j in (i + 1)..hyperplanes.len() {
                let row = |h: &Hyperplane| {
                    let mut r = h.normal.clone();
                    r.push(h.offset.clone());
                    r
                };
                if rank(&[row(&hyperplanes[i]), row(&hyperplanes[j])], dim + 1) == 1 {
                    return Err(ArrangementError::Duplicate(i, j));
                }
            }
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            names,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn normals(&self, idx: &[usize]) -> Vec<Vec<Rational>> {
        idx.iter().map(|&i| self.hyperplanes[i].normal.clone()).collect()
    }

    /// Rank of the normals of the given hyperplanes.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        rank(&self.normals(idx), self.dim)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn is_central(&self) -> bool {
        let all: Vec<&Hyperplane> = self.hyperplanes.iter().collect();
        solve_affine(&all, self.dim).is_some()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn properties(&self) -> Properties {
        Properties {
            rank: self.rank(),
            is_essential: self.is_essential(),
            is_central: self.is_central(),
        }
    }

    /// Finest partition of `idx` into blocks whose normal ranks add up to the
    /// rank of the whole (the connected components of the matroid of normals).
    /// Components are found from the fundamental circuits of a greedy basis.
    pub fn normal_components(&self, idx: &[usize]) -> Vec<Vec<usize>> {
        let n = self.dim;
        let k = idx.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut basis: Vec<usize> = Vec::new();
        for e in 0..k {
            let mut cand = self.normals(&basis.iter().map(|&b| idx[b]).collect::<Vec<_>>());
            cand.push(self.hyperplanes[idx[e]].normal.clone());
            if rank(&cand, n) > basis.len() {
                basis.push(e);
                continue;
            }
            // express e in the basis: solve Σ c_b normal_b = normal_e
            let eqs: Vec<Hyperplane> = (0..n)
                .map(|coord| {
                    Hyperplane::new(
                        basis.iter().map(|&b| self.hyperplanes[idx[b]].normal[coord].clone()).collect(),
                        self.hyperplanes[idx[e]].normal[coord].clone(),
                    )
                })
                .collect();
            let refs: Vec<&Hyperplane> = eqs.iter().collect();
            let (coef, dirs) = solve_affine(&refs, basis.len()).expect("dependent on basis");
            debug_assert!(dirs.is_empty());
            for (pos, &b) in basis.iter().enumerate() {
                if !coef[pos].is_zero() {
                    let (rb, re) = (find(&mut parent, b), find(&mut parent, e));
                    parent[rb] = re;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in 0..k {
            let r = find(&mut parent, e);
            groups.entry(r).or_default().push(idx[e]);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut out {
            g.sort_unstable();
        }
        out.sort();
        out
    }

    /// Irreducible decomposition of a central arrangement.
    pub fn irreducible_decomposition(&self) -> Result<Vec<Vec<usize>>, ArrangementError> {
        if !self.is_central() {
            return Err(ArrangementError::NotCentral);
        }
        Ok(self.normal_components(&(0..self.len()).collect::<Vec<_>>()))
    }

    /// Product factors: components of the normal matroid, each flagged central
    /// when its hyperplanes share a point.
    pub fn factors(&self) -> Vec<Factor> {
        self.normal_components(&(0..self.len()).collect::<Vec<_>>())
            .into_iter()
            .map(|hyperplanes| {
                let eqs: Vec<&Hyperplane> = hyperplanes.iter().map(|&i| &self.hyperplanes[i]).collect();
                let central = solve_affine(&eqs, self.dim).is_some();
                let rank = self.rank_of(&hyperplanes);
                Factor {
                    hyperplanes,
                    rank,
                    central,
                }
            })
            .collect()
    }

    /// The deconing along hyperplane `h`: change coordinates so that `h`
    /// becomes the last coordinate hyperplane, then set that coordinate to 1.
    /// The identity `p_A(t) = (1+t) p_{d(A)}(t)` is checked.
    pub fn decone(&self, h: usize) -> Result<Arrangement, ArrangementError> {
        if h >= self.len() {
            return Err(ArrangementError::NoSuchHyperplane(h));
        }
        let all: Vec<&Hyperplane> = self.hyperplanes.iter().collect();
        let Some((_, _)) = solve_affine(&all, self.dim) else {
            return Err(ArrangementError::NotCentral);
        };
        let n = self.dim;
        // new coordinates: completing standard covectors, then the normal of h
        let ah = self.hyperplanes[h].normal.clone();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let mut cand = rows.clone();
            cand.push(ah.clone());
            cand.push(e.clone());
            if rows.len() < n - 1 && rank(&cand, n) == rows.len() + 2 {
                rows.push(e);
            }
        }
        rows.push(ah);
        let minv = inverse(&rows);
        let mut hyperplanes = Vec::new();
        let mut names = Vec::new();
        for (i, hp) in self.hyperplanes.iter().enumerate() {
            if i == h {
                continue;
            }
            // form a·x in new coordinates: c = a M^{-1}
            let c: Vec<Rational> = (0..n)
                .map(|col| {
                    hp.normal
                        .iter()
                        .zip(&minv)
                        .fold(Rational::zero(), |acc, (a, row)| acc + a * &row[col])
                })
                .collect();
            hyperplanes.push(Hyperplane::new(c[..n - 1].to_vec(), -c[n - 1].clone()));
            names.push(self.names[i].clone());
        }
        let d = Arrangement::with_names(n - 1, hyperplanes, names)?;
        let p_a = FlatPoset::new(self).mobius_poincare_beta().poincare;
        let product = poly_mul(&[1, 1], &FlatPoset::new(&d).mobius_poincare_beta().poincare);
        if trim(&p_a) != trim(&product) {
            return Err(ArrangementError::DeconeIdentity { p_a, product });
        }
        Ok(d)
    }

    /// Cartesian product `self × other` in `ℂ^{n+m}`.
    pub fn product(&self, other: &Arrangement) -> Arrangement {
        let mut hyperplanes = Vec::new();
        let mut names = Vec::new();
        for (h, name) in self.hyperplanes.iter().zip(&self.names) {
            let mut n = h.normal.clone();
            n.extend(std::iter::repeat_n(Rational::zero(), other.dim));
            hyperplanes.push(Hyperplane::new(n, h.offset.clone()));
            names.push(name.clone());
        }
        for (h, name) in other.hyperplanes.iter().zip(&other.names) {
            let mut n = vec![Rational::zero(); self.dim];
            n.extend(h.normal.iter().cloned());
            hyperplanes.push(Hyperplane::new(n, h.offset.clone()));
            names.push(format!("{name}'"));
        }
        Arrangement::with_names(self.dim + other.dim, hyperplanes, names).expect("product of valid arrangements")
    }
}

fn trim(p: &[i64]) -> Vec<i64> {
    let mut v = p.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Polynomial product on coefficient vectors (constant term first).
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Properties {
    pub rank: usize,
    pub is_essential: bool,
    pub is_central: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
    pub central: bool,
}

/// A nonempty intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Indices of all hyperplanes containing the flat (`A_X`), sorted.
    pub hyperplanes: Vec<usize>,
    pub codim: usize,
    pub basepoint: Vec<Rational>,
    /// Basis of the direction space.
    pub direction: Vec<Vec<Rational>>,
}

/// The intersection poset `Q(A)`: all flats, sorted by codimension and then by
/// `A_X`; index 0 is the ambient space.
#[derive(Clone, Debug)]
pub struct FlatPoset {
    arrangement: Arrangement,
    flats: Vec<Flat>,
    lookup: HashMap<Vec<usize>, usize>,
}

/// Möbius function, Poincaré polynomial and β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusData {
    pub mobius: Vec<i64>,
    /// Coefficients of `p_A(t)`, constant term first.
    pub poincare: Vec<i64>,
    pub beta: u64,
}

impl FlatPoset {
    pub fn new(a: &Arrangement) -> Self {
        let n = a.dim;
        let ambient = Flat {
            hyperplanes: Vec::new(),
            codim: 0,
            basepoint: vec![Rational::zero(); n],
            direction: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        };
        let mut flats = vec![ambient];
        let mut lookup: HashMap<Vec<usize>, usize> = HashMap::new();
        lookup.insert(Vec::new(), 0);
        let mut next = 0;
        while next < flats.len() {
            let f = flats[next].clone();
            next += 1;
            for h in 0..a.len() {
                if f.hyperplanes.binary_search(&h).is_ok() {
                    continue;
                }
                let mut eq_idx = f.hyperplanes.clone();
                eq_idx.push(h);
                if let Some(flat) = Self::closure(a, &eq_idx) {
                    if !lookup.contains_key(&flat.hyperplanes) {
                        lookup.insert(flat.hyperplanes.clone(), flats.len());
                        flats.push(flat);
                    }
                }
            }
        }
        flats.sort_by(|x, y| x.codim.cmp(&y.codim).then_with(|| x.hyperplanes.cmp(&y.hyperplanes)));
        let lookup = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.hyperplanes.clone(), i))
            .collect();
        FlatPoset {
            arrangement: a.clone(),
            flats,
            lookup,
        }
    }

    /// The flat cut out by the given equations, or `None` if empty.
    fn closure(a: &Arrangement, eq_idx: &[usize]) -> Option<Flat> {
        let eqs: Vec<&Hyperplane> = eq_idx.iter().map(|&i| &a.hyperplanes[i]).collect();
        let (basepoint, direction) = solve_affine(&eqs, a.dim)?;
        let hyperplanes: Vec<usize> = (0..a.len())
            .filter(|&i| {
                let h = &a.hyperplanes[i];
                dot(&h.normal, &basepoint) == h.offset
                    && direction.iter().all(|v| dot(&h.normal, v).is_zero())
            })
            .collect();
        Some(Flat {
            codim: a.dim - direction.len(),
            hyperplanes,
            basepoint,
            direction,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    /// Index of the flat with the given `A_X`.
    pub fn find(&self, hyperplanes: &[usize]) -> Option<usize> {
        self.lookup.get(hyperplanes).copied()
    }

    /// Index of the flat equal to hyperplane `h`.
    pub fn hyperplane_flat(&self, h: usize) -> usize {
        self.find(&[h]).expect("every hyperplane is a flat")
    }

    /// `X ≤ Y` in reverse inclusion, i.e. `A_X ⊆ A_Y`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        let (a, b) = (&self.flats[x].hyperplanes, &self.flats[y].hyperplanes);
        a.iter().all(|h| b.binary_search(h).is_ok())
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    /// Human-readable name: the hyperplanes containing the flat.
    pub fn label(&self, i: usize) -> String {
        let f = &self.flats[i];
        if f.hyperplanes.is_empty() {
            return "ambient".to_string();
        }
        let names: Vec<&str> = f
            .hyperplanes
            .iter()
            .map(|&h| self.arrangement.names[h].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Set-theoretic intersection of flats, or `None` if empty.
    pub fn intersect(&self, xs: &[usize]) -> Option<usize> {
        let mut eqs: BTreeSet<usize> = BTreeSet::new();
        for &x in xs {
            eqs.extend(self.flats[x].hyperplanes.iter().copied());
        }
        let eqs: Vec<usize> = eqs.into_iter().collect();
        let f = Self::closure(&self.arrangement, &eqs)?;
        Some(self.find(&f.hyperplanes).expect("intersection poset is closed"))
    }

    /// The smallest flat containing both (their meet in the poset order).
    pub fn span(&self, x: usize, y: usize) -> usize {
        let common: Vec<usize> = self.flats[x]
            .hyperplanes
            .iter()
            .copied()
            .filter(|h| self.flats[y].hyperplanes.binary_search(h).is_ok())
            .collect();
        let f = Self::closure(&self.arrangement, &common).expect("contains x");
        self.find(&f.hyperplanes).expect("flat present")
    }

    pub fn rank(&self) -> usize {
        self.flats.iter().map(|f| f.codim).max().unwrap_or(0)
    }

    /// Whether the localization `A_X` is irreducible (proper flats only).
    pub fn is_irreducible(&self, x: usize) -> bool {
        let hs = &self.flats[x].hyperplanes;
        !hs.is_empty() && self.arrangement.normal_components(hs).len() == 1
    }

    /// The set of irreducibles: proper flats with irreducible localization.
    pub fn irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_irreducible(x)).collect()
    }

    /// Flats other than the ambient space.
    pub fn proper_flats(&self) -> Vec<usize> {
        (1..self.len()).collect()
    }

    /// Order complex of `Q(A)` minus its minimum.
    pub fn proper_part_order_complex(&self) -> SimplicialComplex {
        order_complex(&SubPoset {
            poset: self,
            elements: self.proper_flats(),
        })
    }

    pub fn mobius_poincare_beta(&self) -> MobiusData {
        let mut mu = vec![0i64; self.len()];
        for x in 0..self.len() {
            mu[x] = if x == 0 {
                1
            } else {
                -(0..x).filter(|&y| self.lt(y, x)).map(|y| mu[y]).sum::<i64>()
            };
        }
        let mut poincare = vec![0i64; self.rank() + 1];
        for (x, f) in self.flats.iter().enumerate() {
            poincare[f.codim] += mu[x].abs();
        }
        let at_minus_one: i64 = poincare
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { *c } else { -c })
            .sum();
        MobiusData {
            mobius: mu,
            poincare,
            beta: at_minus_one.unsigned_abs(),
        }
    }

    /// Checks the building-set condition: for every proper flat `X`, the
    /// maximal members of `G` below `X` partition `A_X` with codimensions
    /// adding up to `codim X`.
    pub fn validate_building_set(&self, g: &[usize]) -> Result<(), ArrangementError> {
        for &x in g {
            if x >= self.len() {
                return Err(ArrangementError::NoSuchFlat(x));
            }
            if x == 0 {
                return Err(ArrangementError::AmbientInBuildingSet(self.label(0)));
            }
        }
        for x in 1..self.len() {
            let below: Vec<usize> = g.iter().copied().filter(|&y| self.le(y, x)).collect();
            let maxima: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&y| !below.iter().any(|&z| self.lt(y, z)))
                .collect();
            let mut covered: Vec<usize> = maxima
                .iter()
                .flat_map(|&y| self.flats[y].hyperplanes.iter().copied())
                .collect();
            let total: usize = maxima.iter().map(|&y| self.flats[y].hyperplanes.len()).sum();
            covered.sort_unstable();
            covered.dedup();
            let codims: usize = maxima.iter().map(|&y| self.flats[y].codim).sum();
            if covered != self.flats[x].hyperplanes
                || total != covered.len()
                || codims != self.flats[x].codim
            {
                return Err(ArrangementError::InvalidBuildingSet(self.label(x)));
            }
        }
        Ok(())
    }

    /// The nested-set complex of a building set.
    pub fn nested_complex(&self, building: &[usize]) -> Result<NestedComplex, ArrangementError> {
        let mut g: Vec<usize> = building.to_vec();
        g.sort_unstable();
        g.dedup();
        self.validate_building_set(&g)?;
        let in_g: BTreeSet<usize> = g.iter().copied().collect();
        let k = g.len();
        let comparable = |i: usize, j: usize| self.le(g[i], g[j]) || self.le(g[j], g[i]);
        let mut cache: HashMap<Vec<usize>, bool> = HashMap::new();
        let mut antichain_ok = |members: &[usize]| -> bool {
            let key: Vec<usize> = members.to_vec();
            if let Some(&v) = cache.get(&key) {
                return v;
            }
            let flats: Vec<usize> = members.iter().map(|&i| g[i]).collect();
            let ok = match self.intersect(&flats) {
                None => false,
                Some(x) => !in_g.contains(&x),
            };
            cache.insert(key, ok);
            ok
        };
        let mut maximal: Vec<Simplex> = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((set, start)) = stack.pop() {
            let mut extended = false;
            for e in start..k {
                // antichains through e: subsets of the members incomparable to e
                let inc: Vec<usize> = set.iter().copied().filter(|&s| !comparable(s, e)).collect();
                let mut ok = true;
                'sub: for mask in 1u64..(1u64 << inc.len()) {
                    let mut members: Vec<usize> = (0..inc.len())
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| inc[b])
                        .collect();
                    for a in 0..members.len() {
                        for b in (a + 1)..members.len() {
                            if comparable(members[a], members[b]) {
                                continue 'sub;
                            }
                        }
                    }
                    members.push(e);
                    members.sort_unstable();
                    if !antichain_ok(&members) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    let mut next = set.clone();
                    next.push(e);
                    stack.push((next, e + 1));
                    extended = true;
                }
            }
            if !extended && !set.is_empty() {
                maximal.push(Simplex::new(set));
            }
        }
        let labels = g.iter().map(|&x| self.label(x)).collect();
        Ok(NestedComplex {
            building_set: g,
            complex: SimplicialComplex::from_index_facets(labels, maximal),
            flag_completed: false,
        })
    }

    /// `IQ`: the nested complex over the set of irreducibles.
    pub fn irreducible_complex(&self) -> NestedComplex {
        self.nested_complex(&self.irreducibles())
            .expect("the irreducibles form a building set")
    }

    /// A chain of irreducible proper flats with codimensions `1, …, rank`,
    /// each strictly below the next; the first in flat order.
    pub fn complete_chain(&self) -> Option<Vec<usize>> {
        let r = self.rank();
        if r == 0 {
            return None;
        }
        let irr: Vec<usize> = self.irreducibles();
        fn extend(p: &FlatPoset, irr: &[usize], chain: &mut Vec<usize>, r: usize) -> bool {
            let c = chain.len() + 1;
            if c > r {
                return true;
            }
            for &x in irr {
                if p.flats[x].codim != c {
                    continue;
                }
                if let Some(&last) = chain.last() {
                    if !p.lt(last, x) {
                        continue;
                    }
                }
                chain.push(x);
                if extend(p, irr, chain, r) {
                    return true;
                }
                chain.pop();
            }
            false
        }
        let mut chain = Vec::new();
        extend(self, &irr, &mut chain, r).then_some(chain)
    }

    /// `H_1` images of the central elements for a simplex of the flag
    /// completion of `IQ`: the indicator vector of `A_G` for each vertex `G`,
    /// and whether they are linearly independent over ℚ.
    pub fn h1_images(&self, simplex: &[usize]) -> Result<H1Images, ArrangementError> {
        let irr: BTreeSet<usize> = self.irreducibles().into_iter().collect();
        for &x in simplex {
            if x >= self.len() {
                return Err(ArrangementError::NoSuchFlat(x));
            }
            if !irr.contains(&x) {
                return Err(ArrangementError::NotIrreducible(self.label(x)));
            }
        }
        let fiq = self.irreducible_complex().flag_completion();
        let verts: Vec<usize> = simplex
            .iter()
            .map(|x| fiq.building_set.binary_search(x).expect("irreducible"))
            .collect();
        if !simplex.is_empty() && !fiq.complex.contains(&Simplex::new(verts)) {
            return Err(ArrangementError::NotASimplex(
                simplex.iter().map(|&x| self.label(x)).collect(),
            ));
        }
        let m = self.arrangement.len();
        let vectors: Vec<Vec<i64>> = simplex
            .iter()
            .map(|&x| {
                let mut v = vec![0i64; m];
                for &h in &self.flats[x].hyperplanes {
                    v[h] = 1;
                }
                v
            })
            .collect();
        let q: Vec<Vec<Rational>> = vectors.iter().map(|v| v.iter().map(|&a| int(a)).collect()).collect();
        let r = rank(&q, m);
        Ok(H1Images {
            independent: r == simplex.len(),
            rank: r,
            vectors,
        })
    }
}

/// Restriction of the flat order to a subset of flats.
struct SubPoset<'a> {
    poset: &'a FlatPoset,
    elements: Vec<usize>,
}

impl Poset for SubPoset<'_> {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn element_label(&self, i: usize) -> String {
        self.poset.label(self.elements[i])
    }

    fn le(&self, i: usize, j: usize) -> bool {
        self.poset.le(self.elements[i], self.elements[j])
    }
}

impl Poset for FlatPoset {
    fn len(&self) -> usize {
        self.flats.len()
    }

    fn element_label(&self, i: usize) -> String {
        self.label(i)
    }

    fn le(&self, i: usize, j: usize) -> bool {
        FlatPoset::le(self, i, j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Images {
    pub vectors: Vec<Vec<i64>>,
    pub rank: usize,
    pub independent: bool,
}

/// Nested-set complex of a building set; vertex `i` is the flat
/// `building_set[i]`.
#[derive(Clone, Debug)]
pub struct NestedComplex {
    pub building_set: Vec<usize>,
    pub complex: SimplicialComplex,
    pub flag_completed: bool,
}

impl NestedComplex {
    /// Clique complex of the 1-skeleton.
    pub fn flag_completion(&self) -> NestedComplex {
        NestedComplex {
            building_set: self.building_set.clone(),
            complex: self.complex.flag_completion(),
            flag_completed: true,
        }
    }

    /// Vertex indices of the complex for a list of flats.
    pub fn vertices_of(&self, flats: &[usize]) -> Option<Simplex> {
        flats
            .iter()
            .map(|x| self.building_set.binary_search(x).ok())
            .collect::<Option<Vec<_>>>()
            .map(Simplex::new)
    }
}

/// Action-dimension report for `π_1` of an arrangement complement.
#[derive(Clone, Debug, Serialize)]
pub struct ArrangementReport {
    pub n: usize,
    pub rank: usize,
    pub essential: bool,
    pub central: bool,
    pub factors: Vec<Factor>,
    pub central_factor_count: usize,
    pub beta: u64,
    pub complete_chain: Option<Vec<String>>,
    pub fiq_dim: isize,
    /// Facet of the flag-completed irreducible complex exceeding the dimension
    /// allowed by asphericity, if any.
    pub asphericity_contradiction: Option<Vec<String>>,
    pub bounds: Vec<Bound>,
    pub no_conclusion: Vec<String>,
}

pub const PROV_MANIFOLD: &str = "complement is a 2n-manifold";
pub const PROV_CENTRAL_SPHERE: &str = "central or inessential complement retracts to a (2n-1)-dimensional manifold";
pub const PROV_NO_CENTRAL: &str = "essential aspherical arrangement with no central factor";
pub const PROV_CENTRAL_IRR: &str = "central irreducible essential aspherical arrangement";
pub const PROV_PRODUCT: &str = "product of irreducible central factors";
pub const PROV_CHAIN: &str = "complete chain of irreducibles";
pub const PROV_GDIM: &str = "aspherical complement has the homotopy type of an n-complex";

/// Builds the report. For an inessential arrangement the group only sees the
/// essentialization, so the formulas are applied with `n` replaced by the rank.
pub fn arrangement_actdim_report(a: &Arrangement, aspherical: bool) -> ArrangementReport {
    let poset = FlatPoset::new(a);
    let props = a.properties();
    let factors = a.factors();
    let k = factors.iter().filter(|f| f.central).count();
    let r = props.rank;
    let beta = poset.mobius_poincare_beta().beta;
    let chain = poset.complete_chain();
    let fiq = poset.irreducible_complex().flag_completion();
    let fiq_dim = fiq.complex.dim();
    let mut bounds = Vec::new();
    let mut no_conclusion = Vec::new();

    let contradiction = if aspherical && fiq_dim >= a.dim() as isize {
        fiq.complex
            .facets()
            .iter()
            .find(|f| f.len() > a.dim())
            .map(|f| f.vertices().iter().map(|&v| fiq.complex.label(v).to_string()).collect())
    } else {
        None
    };

    if aspherical && contradiction.is_none() && r > 0 {
        bounds.push(Bound::upper(Quantity::Gdim, r, PROV_GDIM));
        bounds.push(Bound::upper(Quantity::Actdim, 2 * r, PROV_MANIFOLD));
        if props.is_central || !props.is_essential {
            bounds.push(Bound::upper(Quantity::Actdim, 2 * a.dim() - 1, PROV_CENTRAL_SPHERE));
        }
        if k == 0 {
            bounds.push(Bound::exact(Quantity::Actdim, 2 * r, PROV_NO_CENTRAL));
        } else if props.is_central && factors.len() == 1 {
            bounds.push(Bound::exact(Quantity::Actdim, 2 * r - 1, PROV_CENTRAL_IRR));
        } else {
            bounds.push(Bound::exact(Quantity::Actdim, 2 * r - k, PROV_PRODUCT));
        }
    } else if aspherical && contradiction.is_some() {
        no_conclusion.push(format!(
            "{PROV_NO_CENTRAL}: flag-completed irreducible complex has dimension {fiq_dim} > n-1, so the complement is not aspherical"
        ));
    } else {
        no_conclusion.push(format!("{PROV_NO_CENTRAL}: asphericity not asserted"));
        no_conclusion.push(format!("{PROV_PRODUCT}: asphericity not asserted"));
    }

    if !props.is_central && chain.is_some() && r > 0 {
        bounds.push(Bound::lower(Quantity::Obdim, 2 * r, PROV_CHAIN));
    } else if props.is_central {
        no_conclusion.push(format!("{PROV_CHAIN}: arrangement is central"));
    } else {
        no_conclusion.push(format!("{PROV_CHAIN}: no complete chain of irreducibles"));
    }
    check_consistency(&bounds).expect("arrangement bounds are consistent");

    ArrangementReport {
        n: a.dim(),
        rank: r,
        essential: props.is_essential,
        central: props.is_central,
        central_factor_count: k,
        factors,
        beta,
        complete_chain: chain.map(|c| c.iter().map(|&x| poset.label(x)).collect()),
        fiq_dim,
        asphericity_contradiction: contradiction,
        bounds,
        no_conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{betti_z2, reduced_betti_z2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arr(dim: usize, hs: &[(&[i64], i64)]) -> Arrangement {
        Arrangement::new(dim, hs.iter().map(|(n, b)| Hyperplane::from_ints(n, *b)).collect()).unwrap()
    }

    fn boolean(n: usize) -> Arrangement {
        let hs: Vec<Hyperplane> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                Hyperplane::from_ints(&v, 0)
            })
            .collect();
        Arrangement::new(n, hs).unwrap()
    }

    fn concurrent() -> Arrangement {
        arr(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, -1], 0)])
    }

    fn generic3() -> Arrangement {
        arr(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)])
    }

    fn figure5() -> Arrangement {
        arr(2, &[(&[1, -1], 0), (&[1, 0], 0), (&[1, 1], 0), (&[0, 1], 1)])
    }

    #[test]
    fn validation() {
        assert_eq!(
            Arrangement::new(2, vec![Hyperplane::from_ints(&[0, 0], 1)]).unwrap_err(),
            ArrangementError::ZeroNormal(0)
        );
        assert_eq!(
            Arrangement::new(2, vec![Hyperplane::from_ints(&[1, 0], 1), Hyperplane::from_ints(&[2, 0], 2)])
                .unwrap_err(),
            ArrangementError::Duplicate(0, 1)
        );
        assert!(matches!(
            Arrangement::new(2, vec![Hyperplane::from_ints(&[1], 1)]),
            Err(ArrangementError::WrongLength { .. })
        ));
    }

    #[test]
    fn rationals_roundtrip() {
        let q = parse_rational("-3/6").unwrap();
        assert_eq!(format_rational(&q), "-1/2");
        assert_eq!(format_rational(&parse_rational(" 4 ").unwrap()), "4");
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn poset_sizes() {
        assert_eq!(FlatPoset::new(&boolean(2)).len(), 4);
        assert_eq!(FlatPoset::new(&generic3()).len(), 7);
        assert_eq!(FlatPoset::new(&concurrent()).len(), 5);
    }

    #[test]
    fn properties_examples() {
        let p = boolean(2).properties();
        assert_eq!((p.rank, p.is_essential, p.is_central), (2, true, true));
        let par = arr(2, &[(&[1, 0], 0), (&[1, 0], 1)]).properties();
        assert_eq!((par.rank, par.is_essential, par.is_central), (1, false, false));
        let braid = arr(3, &[(&[1, -1, 0], 0), (&[1, 0, -1], 0), (&[0, 1, -1], 0)]).properties();
        assert_eq!((braid.rank, braid.is_essential, braid.is_central), (2, false, true));
    }

    #[test]
    fn decompositions() {
        assert_eq!(boolean(3).irreducible_decomposition().unwrap().len(), 3);
        assert_eq!(concurrent().irreducible_decomposition().unwrap(), vec![vec![0, 1, 2]]);
        let prod = arr(3, &[(&[1, 0, 0], 0), (&[0, 1, 0], 0), (&[1, -1, 0], 0), (&[0, 0, 1], 0)]);
        let blocks = prod.irreducible_decomposition().unwrap();
        let mut sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);
        assert_eq!(generic3().irreducible_decomposition(), Err(ArrangementError::NotCentral));
    }

    #[test]
    fn irreducibles() {
        let p = FlatPoset::new(&generic3());
        let irr = p.irreducibles();
        assert_eq!(irr.len(), 3);
        assert!(irr.iter().all(|&x| p.flat(x).codim == 1));
        let p = FlatPoset::new(&concurrent());
        assert_eq!(p.irreducibles().len(), 4);
        let single = FlatPoset::new(&arr(2, &[(&[1, 1], 3)]));
        assert_eq!(single.irreducibles(), vec![1]);
    }

    #[test]
    fn nested_complexes() {
        let p = FlatPoset::new(&generic3());
        let iq = p.irreducible_complex();
        assert_eq!(iq.complex.f_vector(), vec![3, 3]);
        let all = p.nested_complex(&p.proper_flats()).unwrap();
        assert_eq!(all.complex.f_vector(), p.proper_part_order_complex().f_vector());
        let b = FlatPoset::new(&boolean(2));
        assert_eq!(b.irreducible_complex().complex.f_vector(), vec![2, 1]);
        // hyperplanes alone miss the triple point
        let c = FlatPoset::new(&concurrent());
        let hs: Vec<usize> = (0..3).map(|h| c.hyperplane_flat(h)).collect();
        assert!(matches!(c.nested_complex(&hs), Err(ArrangementError::InvalidBuildingSet(_))));
    }

    #[test]
    fn poincare_examples() {
        for n in 1..=5 {
            let d = FlatPoset::new(&boolean(n)).mobius_poincare_beta();
            let mut expect = vec![1i64];
            for _ in 0..n {
                expect = poly_mul(&expect, &[1, 1]);
            }
            assert_eq!(d.poincare, expect);
            assert_eq!(d.beta, 0);
        }
        let d = FlatPoset::new(&concurrent()).mobius_poincare_beta();
        assert_eq!(d.poincare, poly_mul(&[1, 1], &[1, 2]));
        let d = FlatPoset::new(&generic3()).mobius_poincare_beta();
        assert_eq!(d.poincare, vec![1, 3, 3]);
        assert_eq!(d.beta, 1);
    }

    #[test]
    fn deconing() {
        let d = concurrent().decone(2).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.len(), 2);
        assert!(!d.is_central());
        let d = boolean(2).decone(1).unwrap();
        assert_eq!((d.dim(), d.len()), (1, 1));
        assert_eq!(generic3().decone(0), Err(ArrangementError::NotCentral));
    }

    #[test]
    fn complete_chains() {
        assert!(FlatPoset::new(&generic3()).complete_chain().is_none());
        let p = FlatPoset::new(&figure5());
        let chain = p.complete_chain().unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(p.flat(chain[1]).hyperplanes, vec![0, 1, 2]);
        let noncentral = arr(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, 1], 1)]);
        assert!(FlatPoset::new(&noncentral).complete_chain().is_none());
    }

    #[test]
    fn h1() {
        let p = FlatPoset::new(&concurrent());
        let h = p.hyperplane_flat(0);
        assert_eq!(p.h1_images(&[h]).unwrap().vectors, vec![vec![1, 0, 0]]);
        let triple = p.find(&[0, 1, 2]).unwrap();
        assert_eq!(p.h1_images(&[triple]).unwrap().vectors, vec![vec![1, 1, 1]]);
        let both = p.h1_images(&[h, triple]).unwrap();
        assert!(both.independent);
        let b = FlatPoset::new(&boolean(2));
        assert!(matches!(b.h1_images(&[3]), Err(ArrangementError::NotIrreducible(_))));
    }

    #[test]
    fn reports() {
        let r = arrangement_actdim_report(&concurrent(), true);
        assert!(r.bounds.iter().any(|b| b.value == 3 && b.provenance == PROV_CENTRAL_IRR));
        let r = arrangement_actdim_report(&figure5(), false);
        assert!(r
            .bounds
            .iter()
            .any(|b| b.quantity == Quantity::Obdim && b.value == 4 && b.provenance == PROV_CHAIN));
        let prod = concurrent().product(&concurrent());
        let r = arrangement_actdim_report(&prod, true);
        assert_eq!(r.central_factor_count, 2);
        assert!(r.bounds.iter().any(|b| b.value == 6 && b.provenance == PROV_PRODUCT));
    }

    #[test]
    fn asphericity_contradiction_reported() {
        // five generic lines: FIQ is a 4-simplex, too big for n = 2
        let a = arr(
            2,
            &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1), (&[1, 2], 3), (&[2, 1], 5)],
        );
        let r = arrangement_actdim_report(&a, true);
        assert!(r.asphericity_contradiction.is_some());
        assert!(r.bounds.iter().all(|b| b.quantity != Quantity::Actdim));
    }

    fn random_arrangement(rng: &mut ChaCha8Rng, dim: usize, count: usize, central: bool) -> Arrangement {
        loop {
            let hs: Vec<Hyperplane> = (0..count)
                .map(|_| {
                    let n: Vec<i64> = (0..dim).map(|_| rng.random_range(-2..=2)).collect();
                    let b = if central { 0 } else { rng.random_range(-1..=1) };
                    Hyperplane::from_ints(&n, b)
                })
                .collect();
            if let Ok(a) = Arrangement::new(dim, hs) {
                return a;
            }
        }
    }

    /// Finest splitting by exhaustive bipartition search.
    fn brute_blocks(a: &Arrangement, set: &[usize]) -> Vec<Vec<usize>> {
        let total = a.rank_of(set);
        let k = set.len();
        for mask in 1u32..(1 << k) - 1 {
            if mask & 1 == 0 {
                continue;
            }
            let p: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| set[b]).collect();
            let q: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 0).map(|b| set[b]).collect();
            if a.rank_of(&p) + a.rank_of(&q) == total {
                let mut out = brute_blocks(a, &p);
                out.extend(brute_blocks(a, &q));
                out.sort();
                return out;
            }
        }
        vec![set.to_vec()]
    }

    #[test]
    fn decomposition_matches_bipartition_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let dim = 2 + trial % 3;
            let a = random_arrangement(&mut rng, dim, 2 + trial % 5, true);
            let all: Vec<usize> = (0..a.len()).collect();
            assert_eq!(a.irreducible_decomposition().unwrap(), brute_blocks(&a, &all));
        }
    }

    #[test]
    fn poset_is_meet_semilattice() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..20 {
            let a = random_arrangement(&mut rng, 3, 3 + trial % 3, trial % 2 == 0);
            let p = FlatPoset::new(&a);
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let m = p.span(x, y);
                    assert!(p.le(m, x) && p.le(m, y));
                    for z in 0..p.len() {
                        if p.le(z, x) && p.le(z, y) {
                            assert!(p.le(z, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_sum_matches_poincare_at_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..20 {
            let a = random_arrangement(&mut rng, 3, 2 + trial % 5, trial % 3 == 0);
            let p = FlatPoset::new(&a);
            let d = p.mobius_poincare_beta();
            let sum: i64 = d.mobius.iter().sum();
            let at_minus_one: i64 = d
                .poincare
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { *c } else { -c })
                .sum();
            assert_eq!(sum, at_minus_one);
            for (x, f) in p.flats().iter().enumerate() {
                if d.mobius[x] != 0 {
                    assert_eq!(d.mobius[x].signum(), if f.codim % 2 == 0 { 1 } else { -1 });
                }
            }
        }
    }

    #[test]
    fn feichtner_muller_on_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..15 {
            let a = random_arrangement(&mut rng, 2 + trial % 2, 3 + trial % 3, trial % 2 == 1);
            let p = FlatPoset::new(&a);
            let iq = p.irreducible_complex();
            assert_eq!(betti_z2(&iq.complex), betti_z2(&p.proper_part_order_complex()));
            let _ = reduced_betti_z2(&iq.complex);
        }
    }
}
