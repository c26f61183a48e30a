//! Combinatorial invariants behind action-dimension computations for Artin
//! groups, graph products and hyperplane-arrangement complements.
//!
//! The crate is organised bottom-up:
//!
//! - [`scomplex`]: finite abstract simplicial complexes and the standard
//!   constructions on them (flag completion, links, joins, subdivision).
//! - [`chains`]: boundary matrices, GF(2) Betti numbers, integral homology via
//!   Smith normal form, and the EDCE homological criterion.
//! - [`polyjoin`]: polyhedral joins, the octahedralization `O_m L` and the
//!   doubled complex over a top simplex of a cycle.
//! - [`vk`]: the simplicial 2-point configuration space, the moment-curve van
//!   Kampen cocycle, the `Ω_m` cycle and a GF(2) coboundary solver.
//! - [`arrangement`]: exact-rational affine hyperplane arrangements, their
//!   intersection posets, nested-set complexes and Poincaré polynomials.
//! - [`coxart`]: Coxeter systems, finite-type recognition, nerves, `L_⊘`, and
//!   action-dimension reports.
//!
//! All computations are exact and deterministic.

pub mod arrangement;
pub mod bounds;
pub mod chains;
pub mod coxart;
pub mod gf2;
mod graph;
pub mod polyjoin;
pub mod scomplex;
pub mod snf;
pub mod vk;

pub use arrangement::{Arrangement, Flat, FlatPoset, Hyperplane, NestedComplex};
pub use bounds::{Bound, BoundKind, Quantity};
pub use chains::{BoundaryMatrices, EdceVerdict, HomologySummary};
pub use coxart::{CoxeterSystem, FiniteType, SubdividedNerve};
pub use polyjoin::{LabeledVertex, OctaComplex};
pub use scomplex::{Poset, Simplex, SimplexPoset, SimplicialComplex};
pub use vk::{ConfigCell, ConfigComplex, Gf2Chain, Gf2Cochain, VertexOrdering};
