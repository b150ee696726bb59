//! List colouring and correspondence (DP-) colouring of plane graphs under
//! separation constraints.
//!
//! The crate provides:
//!
//! - [`graph`]: embedded plane graphs given by rotation systems, with face
//!   tracing, boundary walks, and the split/delete/re-root surgeries used by
//!   the constructive colouring recursion;
//! - [`assign`]: colour lists, per-edge correspondence matchings, profile
//!   validation for `(l, k)` separation constraints, and offensive-triangle
//!   detection;
//! - [`solver`]: an exact backtracking decision procedure and enumerator for
//!   both colouring semantics, used as the verification oracle;
//! - [`extend`]: the constructive extension algorithm for precoloured paths
//!   on the outer face, together with the hitting-clique wrapper;
//! - [`gadget`]: the explicit 114-vertex plane graph with a `(4,2)`
//!   correspondence assignment admitting no colouring, and its verifier;
//! - [`generate`]: seeded random plane graphs and list assignments for
//!   property testing;
//! - [`bundle`]: JSON interchange formats and instance bundles for the CLI.

pub mod assign;
pub mod bundle;
pub mod extend;
pub mod gadget;
pub mod generate;
pub mod graph;
pub mod solver;

pub use assign::{
    Colour, CorrespondenceAssignment, ListAssignment, SeparationSpec,
};
pub use graph::{BoundaryWalk, EdgeKey, Face, PlaneGraph, VertexId};
pub use solver::{Colouring, SearchOutcome, SearchStatus};
