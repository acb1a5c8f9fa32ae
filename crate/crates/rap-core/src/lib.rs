//! Combinatorics, volumes and reduction certificates for compact
//! right-angled hyperbolic polyhedra.
//!
//! The crate models polyhedra as oriented cell decompositions of the
//! 2-sphere and implements, on top of that:
//!
//! - validation and right-angled admissibility (trivalence, excluded types,
//!   prismatic 3/4-circuits) with concrete witnesses,
//! - constructive operations: composition, doubling, edge surgery and
//!   decomposition along prismatic circuits,
//! - Loebell polyhedra L(n), their recognition, and their closed-form
//!   volumes through the Lobachevskii function,
//! - a reduction pipeline that rewrites any admissible polyhedron into a
//!   multiset of Loebell polyhedra and certifies the resulting hyperbolic
//!   volume lower bound,
//! - reflection-group data: face 4-colorings, edge 3-colorings, group
//!   presentations and amalgams,
//! - cone-angle reports for the spherical polar and its unbending family.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so instances can be shared freely across threads.

pub mod canonical;
pub mod circuits;
pub mod compose;
pub mod corpus;
pub mod covers;
pub mod error;
pub mod io;
pub mod lobell;
pub mod polar;
pub mod polyhedron;
pub mod reduction;
pub mod shapes;
pub mod verify;
pub mod volumes;

pub use canonical::{canonical_form, isomorphic, CanonicalCode};
pub use circuits::{
    admissible, prismatic_circuits, side_profile, Admissibility, PrismaticCircuit, SideProfile,
};
pub use compose::{compose, double};
pub use error::{RapError, Result};
pub use lobell::{build_lobell, recognize_lobell, LobellId};
pub use polyhedron::{Counts, Edge, EdgeId, FaceId, Polyhedron, VertexId};
pub use covers::{
    amalgam_presentation, edge_coloring, face_four_coloring, presentations, EdgeColoring,
    FaceColoring, GroupPresentation,
};
pub use polar::{cone_angles, ConeAngleReport};
pub use reduction::{
    classify_edges, decompose, edge_surgery, edge_surgery_forced, find_move, reduce, replay,
    volume_lower_bound, EdgeClassification, Move, Policy, ReductionTrace,
};
pub use volumes::{lobachevsky, lobell_volume, theta_n, Volume};
