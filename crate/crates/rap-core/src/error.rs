//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
///
/// Validation errors name the offending cell (vertex pair, face id, ...) so
/// that a caller can point at the broken part of the input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RapError {
    #[error("edge ({u}, {v}) does not appear in exactly two faces")]
    EdgeNotSharedByTwoFaces { u: usize, v: usize },

    #[error("edge ({u}, {v}) is traversed twice in the same direction (inconsistent orientation)")]
    OrientationMismatch { u: usize, v: usize },

    #[error("face {face} repeats a vertex in its cycle")]
    RepeatedVertex { face: usize },

    #[error("face {face} has fewer than 3 vertices")]
    FaceTooSmall { face: usize },

    #[error("a polyhedron needs at least 4 faces, got {count}")]
    TooFewFaces { count: usize },

    #[error("Euler relation violated: v - e + f = {v} - {e} + {f} != 2")]
    EulerViolation { v: usize, e: usize, f: usize },

    #[error("the 1-skeleton is not connected")]
    DisconnectedSkeleton,

    #[error("vertex {vertex} has degree {degree}, polyhedron is not trivalent")]
    NotTrivalent { vertex: usize, degree: usize },

    #[error("no face with id {face}")]
    NoSuchFace { face: usize },

    #[error("no edge with id {edge}")]
    NoSuchEdge { edge: usize },

    #[error("faces have different sizes: {size1} vs {size2}")]
    FaceSizeMismatch { size1: usize, size2: usize },

    #[error("polyhedron is not right-angled admissible: {witness}")]
    NotAdmissible { witness: String },

    #[error("n = {n} is too small; Loebell polyhedra need n >= 5")]
    NTooSmall { n: u64 },

    #[error("non-finite input")]
    NonFinite,

    #[error("edge {edge} is not very good")]
    NotVeryGood { edge: usize },

    #[error("circuit has a flat in face {face}; decomposition needs flat-free circuits")]
    HasFlat { face: usize },

    #[error("circuit length {k} is too short to decompose along (need k >= 5)")]
    CircuitTooShort { k: usize },

    #[error("decomposition along the circuit is invalid: {reason}")]
    DecompositionInvalid { reason: String },

    #[error("deformation parameter t = {t} must lie in (0, 1)")]
    TOutOfRange { t: f64 },

    #[error("face coloring is not proper: faces {f1} and {f2} are adjacent and share a color")]
    ImproperFaceColoring { f1: usize, f2: usize },

    #[error("no very good edge and no valid decomposition exists; this contradicts the reduction theorem and indicates a bug or an inadmissible input")]
    TheoremViolation,

    #[error("reduction trace is incomplete: {0}")]
    IncompleteTrace(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, RapError>;
