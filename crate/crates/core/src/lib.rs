//! Planar greedy drawings of 3-connected planar graphs.
//!
//! A graph is decomposed recursively into smaller strong circuit graphs, the
//! pieces are drawn with shrinking angle parameters and glued back together,
//! and the result is checked by an independent verifier.

pub mod arith;
pub mod decomposition;
pub mod geometry;
pub mod io;
pub mod layout;
pub mod pipeline;
pub mod plane_graph;
pub mod verifier;

pub use arith::{Interval, Real, Rounding};
pub use decomposition::{build_tree, classify, validate_scg, Case, DecompositionTree, ScgTriple};
pub use geometry::Point;
pub use layout::{draw, Drawing, LayoutError};
pub use plane_graph::{PlaneGraph, VertexId};
pub use verifier::{verify, VerificationReport};
