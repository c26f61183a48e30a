//! Labelled dimension bounds, as emitted by the action-dimension reports.

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Action dimension.
    Actdim,
    /// Obstructor dimension (a lower bound for actdim).
    Obdim,
    /// Proper obstructor dimension.
    Pobdim,
    /// Geometric dimension.
    Gdim,
}

/// One bound together with the result that justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub quantity: Quantity,
    pub kind: BoundKind,
    pub value: usize,
    pub provenance: String,
}

impl Bound {
    pub fn new(quantity: Quantity, kind: BoundKind, value: usize, provenance: impl Into<String>) -> Self {
        Bound {
            quantity,
            kind,
            value,
            provenance: provenance.into(),
        }
    }

    pub fn upper(quantity: Quantity, value: usize, provenance: impl Into<String>) -> Self {
        Self::new(quantity, BoundKind::Upper, value, provenance)
    }

    pub fn lower(quantity: Quantity, value: usize, provenance: impl Into<String>) -> Self {
        Self::new(quantity, BoundKind::Lower, value, provenance)
    }

    pub fn exact(quantity: Quantity, value: usize, provenance: impl Into<String>) -> Self {
        Self::new(quantity, BoundKind::Exact, value, provenance)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inconsistent bounds: {lower} exceeds {upper}")]
pub struct InconsistentBounds {
    pub lower: String,
    pub upper: String,
}

fn describe(b: &Bound) -> String {
    format!("{:?} {:?} {} ({})", b.quantity, b.kind, b.value, b.provenance)
}

/// Checks that every lower bound on actdim (obdim and pobdim lower bounds
/// included, as obdim ≤ pobdim ≤ actdim) is at most every actdim upper bound,
/// and that exact values agree with both.
pub fn check_consistency(bounds: &[Bound]) -> Result<(), InconsistentBounds> {
    let lowers = bounds.iter().filter(|b| {
        matches!(b.kind, BoundKind::Lower | BoundKind::Exact)
            && matches!(b.quantity, Quantity::Actdim | Quantity::Obdim | Quantity::Pobdim)
    });
    for lo in lowers {
        for up in bounds.iter().filter(|b| {
            b.quantity == Quantity::Actdim && matches!(b.kind, BoundKind::Upper | BoundKind::Exact)
        }) {
            if lo.value > up.value {
                return Err(InconsistentBounds {
                    lower: describe(lo),
                    upper: describe(up),
                });
            }
        }
    }
    for a in bounds {
        for b in bounds {
            if a.quantity == b.quantity
                && a.kind == BoundKind::Exact
                && b.kind == BoundKind::Exact
                && a.value != b.value
            {
                return Err(InconsistentBounds {
                    lower: describe(a),
                    upper: describe(b),
                });
            }
        }
    }
    Ok(())
}
