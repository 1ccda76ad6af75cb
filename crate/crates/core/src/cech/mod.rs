//! Čech models of `(H, G)` bibundles over finite nerves.

pub mod abelian;
pub mod cocycle;
pub mod nerve;
pub mod obstruction;
pub mod snf;

use thiserror::Error;

use crate::crossed::CrossedError;
use crate::group::GroupError;

/// Default cap on enumeration state counts.
pub const DEFAULT_MAX_ENUM: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error("simplex must have {expected} vertices, got {got}")]
    SimplexArity { expected: usize, got: usize },
    #[error("vertex {vertex} out of range (nerve has {vertices} vertices)")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("degenerate simplex {simplex:?}")]
    DegenerateSimplex { simplex: Vec<usize> },
    #[error("duplicate simplex {simplex:?}")]
    DuplicateSimplex { simplex: Vec<usize> },
    #[error("face {face:?} of {of:?} is missing")]
    MissingFace { face: Vec<usize>, of: Vec<usize> },
    #[error("cochain has {got} entries, expected {expected}")]
    CochainSize { expected: usize, got: usize },
    #[error("value {value} out of range at position {position}")]
    ValueOutOfRange { position: usize, value: usize },
    #[error("triangle condition g_ij g_jk = g_ik fails on {triangle:?}")]
    TriangleCondition { triangle: [usize; 3] },
    #[error("edge condition h_j = h_i t(g_ij) fails on {edge:?}")]
    EdgeCondition { edge: [usize; 2] },
    #[error("cocycles live on different nerves or crossed modules")]
    Mismatch,
    #[error("coefficient group is not abelian")]
    NotAbelian,
    #[error("degree {degree} out of range")]
    DegreeOutOfRange { degree: usize },
    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("edge {edge:?} carries a value outside t(G)")]
    NotInImage { edge: [usize; 2] },
    #[error("value on edge {edge:?} is not in G_1")]
    NotInKernel { edge: [usize; 2] },
    #[error("type of the cocycle differs from the lift on component {component}")]
    TypeMismatch { component: usize },
    #[error("enumeration needs {needed} states, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}
