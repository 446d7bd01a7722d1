//! Reading and writing documents, building test graphs and choosing the
//! starting triple for a 3-connected input.

mod documents;
mod generators;
mod svg;

pub use documents::{
    parse_drawing, parse_graph, parse_json, DrawingDocument, GraphDocument, InputError, NodeDoc, PointDoc, TreeDoc, VertexEntry, WitnessDoc, DRAWING_VERSION,
    GRAPH_VERSION,
};
pub use generators::{cycle, dual, from_positions, generate, platonic, prism, random3c, wheel, GenerateError, GeneratorSpec, Platonic};
pub use svg::{render_svg, SvgOptions};

use crate::decomposition::{validate_scg, ScgTriple, ScgViolation};
use crate::plane_graph::{articulation_points, find_2cuts, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrepareError {
    #[error("graph is not 3-connected: removing {cut:?} disconnects it")]
    Not3Connected { cut: Vec<VertexId> },
    #[error("graph has fewer than 4 vertices")]
    TooSmall,
    #[error("starting triple is invalid: {0}")]
    Invalid(#[from] ScgViolation),
}

/// Picks `u` as the smallest outer vertex and `v` as the vertex after it
/// clockwise on the outer face, after checking 3-connectivity.
pub fn prepare_triple(g: &PlaneGraph) -> Result<ScgTriple, PrepareError> {
    if g.vertex_count() < 4 {
        return Err(PrepareError::TooSmall);
    }
    let h = g.graph();
    if !h.is_connected() {
        return Err(PrepareError::Not3Connected { cut: Vec::new() });
    }
    if let Some(&c) = articulation_points(&h).iter().next() {
        return Err(PrepareError::Not3Connected { cut: vec![c] });
    }
    if let Some(&(a, b)) = find_2cuts(&h).first() {
        return Err(PrepareError::Not3Connected { cut: vec![a, b] });
    }
    let walk = g.outer_walk();
    let i = (0..walk.len()).min_by_key(|&i| walk[i]).expect("non-empty outer walk");
    let (u, v) = (walk[i], walk[(i + 1) % walk.len()]);
    Ok(validate_scg(g.clone(), u, v)?)
}
