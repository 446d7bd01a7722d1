//! Combinatorial plane graphs: rotation systems, faces, outer boundary paths
//! and connectivity structure.

mod connectivity;
mod embedding;
mod graph;

pub use connectivity::{ab_components, articulation_points, bc_tree, bridges_of, find_2cuts, BcTree, Block, ConnectivityError, Piece, PieceKind};
pub use embedding::{BoundaryPaths, Dart, EmbeddingError, PlaneGraph};
pub use graph::{edge, Edge, Graph, GraphError, Subgraph, VertexId};
