//! Simplicial chain complexes: boundary matrices, Betti numbers over GF(2),
//! integral homology through Smith normal form, and the homological EDCE test.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::gf2::{BitRow, EchelonBasis, Gf2Matrix};
use crate::scomplex::{Simplex, SimplicialComplex};
use crate::snf;

/// Simplicial boundary operators in the canonical simplex order.
///
/// `columns(k)[j]` lists the nonzero entries `(row, ±1)` of `∂_k` applied to
/// the `j`-th `k`-simplex; removing the `i`-th vertex carries sign `(-1)^i`.
#[derive(Clone, Debug)]
pub struct BoundaryMatrices {
    face_counts: Vec<usize>,
    columns: Vec<Vec<Vec<(usize, i8)>>>,
}

impl BoundaryMatrices {
    pub fn new(k: &SimplicialComplex) -> Self {
        let face_counts = k.f_vector();
        let mut columns = vec![Vec::new()];
        for d in 1..face_counts.len() {
            let cols = k
                .faces(d)
                .iter()
                .map(|s| {
                    s.boundary_faces()
                        .map(|(i, f)| {
                            let row = k.face_index(&f).expect("complex is downward closed");
                            (row, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            columns.push(cols);
        }
        let bm = BoundaryMatrices {
            face_counts,
            columns,
        };
        assert!(bm.boundary_squares_to_zero(), "boundary of boundary is nonzero");
        bm
    }

    /// Number of `k`-simplices.
    pub fn face_count(&self, k: usize) -> usize {
        self.face_counts.get(k).copied().unwrap_or(0)
    }

    /// Highest degree with a simplex, or `None` for the empty complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.face_counts.len().checked_sub(1)
    }

    /// Sparse columns of `∂_k`; empty for `k = 0` or `k` above the top degree.
    pub fn columns(&self, k: usize) -> &[Vec<(usize, i8)>] {
        self.columns.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Dense integer matrix of `∂_k` (rows: `(k-1)`-simplices).
    pub fn dense_integer(&self, k: usize) -> Vec<Vec<BigInt>> {
        let rows = if k == 0 { 0 } else { self.face_count(k - 1) };
        let cols = self.columns(k);
        let mut m = vec![vec![BigInt::zero(); cols.len()]; rows];
        for (j, col) in cols.iter().enumerate() {
            for &(i, s) in col {
                m[i][j] = BigInt::from(s);
            }
        }
        m
    }

    /// `∂_k` reduced mod 2.
    pub fn gf2(&self, k: usize) -> Gf2Matrix {
        let rows = if k == 0 { 0 } else { self.face_count(k - 1) };
        let cols: Vec<Vec<usize>> = self
            .columns(k)
            .iter()
            .map(|c| c.iter().map(|&(i, _)| i).collect())
            .collect();
        Gf2Matrix::from_sparse_columns(rows, &cols)
    }

    /// `∂_k` over GF(2) with `∂_0` replaced by the augmentation map, so that
    /// kernels and images compute reduced homology.
    pub fn gf2_augmented(&self, k: usize) -> Gf2Matrix {
        if k == 0 {
            let n = self.face_count(0);
            Gf2Matrix::from_rows(n, vec![BitRow::from_ones(n, 0..n)])
        } else {
            self.gf2(k)
        }
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        for k in 2..self.columns.len() {
            let lower = &self.columns[k - 1];
            for col in &self.columns[k] {
                let mut acc = vec![0i64; self.face_count(k - 2)];
                for &(i, s) in col {
                    for &(r, t) in &lower[i] {
                        acc[r] += i64::from(s) * i64::from(t);
                    }
                }
                if acc.iter().any(|&x| x != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// GF(2) rank of every boundary map `∂_1, …, ∂_top`; index 0 holds 0.
fn gf2_ranks(bm: &BoundaryMatrices) -> Vec<usize> {
    let top = bm.top_degree().map_or(0, |t| t + 1);
    (0..top)
        .map(|k| if k == 0 { 0 } else { bm.gf2(k).rank() })
        .collect()
}

/// Unreduced Betti numbers over GF(2), degrees `0..=dim K`.
pub fn betti_z2(k: &SimplicialComplex) -> Vec<usize> {
    let bm = BoundaryMatrices::new(k);
    betti_z2_from(&bm)
}

pub fn betti_z2_from(bm: &BoundaryMatrices) -> Vec<usize> {
    let ranks = gf2_ranks(bm);
    let n = ranks.len();
    (0..n)
        .map(|d| {
            let next = ranks.get(d + 1).copied().unwrap_or(0);
            bm.face_count(d) - ranks[d] - next
        })
        .collect()
}

/// Reduced Betti numbers over GF(2); identical to [`betti_z2`] except in
/// degree 0 for a nonempty complex.
pub fn reduced_betti_z2(k: &SimplicialComplex) -> Vec<usize> {
    let mut b = betti_z2(k);
    if let Some(b0) = b.first_mut() {
        *b0 -= 1;
    }
    b
}

/// Integral and mod-2 homology of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub betti_z2: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigUint>,
}

/// Unreduced homology in degrees `0..=dim K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    pub fn dim(&self) -> isize {
        self.degrees.len() as isize - 1
    }

    pub fn betti_z2(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti_z2).collect()
    }

    pub fn free_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.free_rank).collect()
    }

    /// Free rank of reduced integral homology in degree `k`.
    pub fn reduced_free_rank(&self, k: usize) -> usize {
        match self.degrees.get(k) {
            None => 0,
            Some(d) if k == 0 => d.free_rank.saturating_sub(1),
            Some(d) => d.free_rank,
        }
    }

    pub fn torsion(&self, k: usize) -> &[BigUint] {
        self.degrees.get(k).map(|d| d.torsion.as_slice()).unwrap_or(&[])
    }

    /// Whether reduced `H_k(K; ℤ)` vanishes.
    pub fn reduced_vanishes(&self, k: usize) -> bool {
        self.reduced_free_rank(k) == 0 && self.torsion(k).is_empty()
    }

    /// Checks the universal coefficient relation in every degree.
    pub fn universal_coefficients_hold(&self) -> bool {
        let even = |k: usize| {
            self.torsion(k)
                .iter()
                .filter(|t| t.is_even())
                .count()
        };
        self.degrees.iter().enumerate().all(|(k, d)| {
            let below = if k == 0 { 0 } else { even(k - 1) };
            d.betti_z2 == d.free_rank + even(k) + below
        })
    }
}

/// Integral homology via Smith normal form of every boundary map.
pub fn integral_homology(k: &SimplicialComplex) -> HomologySummary {
    let bm = BoundaryMatrices::new(k);
    integral_homology_from(&bm)
}

pub fn integral_homology_from(bm: &BoundaryMatrices) -> HomologySummary {
    let top = bm.top_degree().map_or(0, |t| t + 1);
    let factors: Vec<Vec<BigInt>> = (0..=top)
        .map(|d| {
            if d == 0 || d >= top {
                Vec::new()
            } else {
                snf::invariant_factors(&bm.dense_integer(d))
            }
        })
        .collect();
    let betti = betti_z2_from(bm);
    let degrees = (0..top)
        .map(|d| {
            let rank_here = factors[d].len();
            let rank_next = factors[d + 1].len();
            DegreeHomology {
                betti_z2: betti[d],
                free_rank: bm.face_count(d) - rank_here - rank_next,
                torsion: snf::torsion(&factors[d + 1])
                    .into_iter()
                    .map(|t| t.magnitude().clone())
                    .collect(),
            }
        })
        .collect();
    let summary = HomologySummary { degrees };
    assert!(
        summary.universal_coefficients_hold(),
        "universal coefficient check failed: {summary:?}"
    );
    summary
}

/// Which homological condition rules out an equidimensional contractible
/// embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum EdceWitness {
    /// Reduced `H_d` is nonzero (its free rank is reported).
    TopHomologyNonzero { degree: usize, free_rank: usize },
    /// `H_{d-1}` has torsion (invariant factors as decimal strings).
    TorsionBelowTop { degree: usize, torsion: Vec<String> },
}

/// Outcome of the homological EDCE criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EdceVerdict {
    Edce,
    NotEdce { witnesses: Vec<EdceWitness> },
    /// Both conditions hold but `d = 2`, where they are not known to suffice.
    CriteriaMetDim2Caveat,
}

impl EdceVerdict {
    pub fn is_edce(&self) -> bool {
        matches!(self, EdceVerdict::Edce)
    }
}

/// Applies the criterion: reduced `H_d = 0` and `H_{d-1}` torsion-free, with
/// `d = dim K`; in dimension 2 a positive answer is downgraded to the caveat.
/// A single simplex is EDCE outright (it is its own contractible host).
pub fn edce_verdict(k: &SimplicialComplex) -> EdceVerdict {
    if k.facets().len() == 1 {
        return EdceVerdict::Edce;
    }
    edce_verdict_from(&integral_homology(k))
}

pub fn edce_verdict_from(h: &HomologySummary) -> EdceVerdict {
    let d = h.dim();
    if d < 0 {
        return EdceVerdict::Edce;
    }
    let d = d as usize;
    let mut witnesses = Vec::new();
    if !h.reduced_vanishes(d) {
        witnesses.push(EdceWitness::TopHomologyNonzero {
            degree: d,
            free_rank: h.reduced_free_rank(d),
        });
    }
    if d >= 1 && !h.torsion(d - 1).is_empty() {
        witnesses.push(EdceWitness::TorsionBelowTop {
            degree: d - 1,
            torsion: h.torsion(d - 1).iter().map(ToString::to_string).collect(),
        });
    }
    if !witnesses.is_empty() {
        EdceVerdict::NotEdce { witnesses }
    } else if d == 2 {
        EdceVerdict::CriteriaMetDim2Caveat
    } else {
        EdceVerdict::Edce
    }
}

/// Support of a GF(2) `k`-cycle that is not a boundary (reduced homology), or
/// `None` when reduced `H_k(K; ℤ₂) = 0`. The answer is the first kernel
/// vector, in the reduced-echelon kernel basis of `∂_k`, that lies outside
/// the image of `∂_{k+1}`.
pub fn find_z2_cycle(k: &SimplicialComplex, degree: usize) -> Option<Vec<Simplex>> {
    let bm = BoundaryMatrices::new(k);
    find_z2_cycle_from(&bm, degree).map(|rows| {
        rows.ones()
            .map(|i| k.faces(degree)[i].clone())
            .collect()
    })
}

pub fn find_z2_cycle_from(bm: &BoundaryMatrices, degree: usize) -> Option<BitRow> {
    if bm.face_count(degree) == 0 {
        return None;
    }
    let kernel = bm.gf2_augmented(degree).kernel_basis();
    let mut image = EchelonBasis::new();
    let up = bm.gf2(degree + 1);
    for j in 0..up.ncols() {
        let col = BitRow::from_ones(
            up.nrows(),
            (0..up.nrows()).filter(|&i| up.get(i, j)),
        );
        image.insert(&col);
    }
    kernel.into_iter().find(|v| !image.contains(v))
}

/// Whether a set of `k`-simplices is a GF(2) cycle.
pub fn is_z2_cycle(support: &[Simplex]) -> bool {
    let mut parity = std::collections::HashMap::<Simplex, bool>::new();
    for s in support {
        for (_, f) in s.boundary_faces() {
            *parity.entry(f).or_insert(false) ^= true;
        }
    }
    parity.values().all(|odd| !odd)
}
