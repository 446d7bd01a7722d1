//! Strong circuit graphs and their Case A / Case B decompositions.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::plane_graph::{
    ab_components, articulation_points, bc_tree, bridges_of, edge, find_2cuts, EmbeddingError, PieceKind, PlaneGraph, Subgraph, VertexId,
};

/// Why a triple `(G, u, v)` is not a strong circuit graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ScgViolation {
    #[error("u and v coincide ({vertex})")]
    NotDistinct { vertex: VertexId },
    #[error("vertex {vertex} is not in the graph")]
    UnknownVertex { vertex: VertexId },
    #[error("graph must be a single edge uv or have at least three vertices")]
    TooSmall,
    #[error("(a) embedding rejected: {reason}")]
    NotPlane { reason: String },
    #[error("(a) vertex {cut} is a cut vertex")]
    NotTwoConnected { cut: VertexId },
    #[error("(b) vertex {vertex} is not on the outer face")]
    NotExternal { vertex: VertexId },
    #[error("(c) edge {u}{v} exists but is not the clockwise path from u to v")]
    EdgeNotTau { u: VertexId, v: VertexId },
    #[error("(d) 2-cut {{{a}, {b}}} has an internal vertex")]
    CutNotExternal { a: VertexId, b: VertexId },
    #[error("(d) neither vertex of 2-cut {{{a}, {b}}} is internal to the counter-clockwise path")]
    CutOffBeta { a: VertexId, b: VertexId },
    #[error("(d) a component of 2-cut {{{a}, {b}}} has no other external vertex")]
    HiddenComponent { a: VertexId, b: VertexId, component: Vec<VertexId> },
}

/// Evidence gathered while validating a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub tau: Vec<VertexId>,
    pub beta: Vec<VertexId>,
    pub two_cuts: Vec<(VertexId, VertexId)>,
}

/// A validated strong circuit graph `(G, u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScgTriple {
    pub graph: PlaneGraph,
    pub u: VertexId,
    pub v: VertexId,
    pub certificate: Certificate,
}

impl ScgTriple {
    pub fn tau(&self) -> &[VertexId] {
        &self.certificate.tau
    }

    pub fn beta(&self) -> &[VertexId] {
        &self.certificate.beta
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.graph.vertices().collect()
    }
}

pub fn validate_scg(g: PlaneGraph, u: VertexId, v: VertexId) -> Result<ScgTriple, ScgViolation> {
    if u == v {
        return Err(ScgViolation::NotDistinct { vertex: u });
    }
    for x in [u, v] {
        if !g.contains(x) {
            return Err(ScgViolation::UnknownVertex { vertex: x });
        }
    }
    if g.vertex_count() == 2 && g.has_edge(u, v) {
        let certificate = Certificate {
            tau: vec![u, v],
            beta: vec![u, v],
            two_cuts: Vec::new(),
        };
        return Ok(ScgTriple { graph: g, u, v, certificate });
    }
    if g.vertex_count() < 3 {
        return Err(ScgViolation::TooSmall);
    }
    g.trace_faces().map_err(|e| ScgViolation::NotPlane { reason: e.to_string() })?;
    let graph = g.graph();
    if let Some(&cut) = articulation_points(&graph).iter().next() {
        return Err(ScgViolation::NotTwoConnected { cut });
    }
    let paths = g.boundary_paths(u, v).map_err(|e| match e {
        EmbeddingError::NotExternal(vertex) => ScgViolation::NotExternal { vertex },
        other => ScgViolation::NotPlane { reason: other.to_string() },
    })?;
    if g.has_edge(u, v) && paths.tau.len() != 2 {
        return Err(ScgViolation::EdgeNotTau { u, v });
    }
    let external = g.external_vertices();
    let beta_inner: BTreeSet<VertexId> = paths.beta[1..paths.beta.len() - 1].iter().copied().collect();
    let two_cuts = find_2cuts(&graph);
    for &(a, b) in &two_cuts {
        if !external.contains(&a) || !external.contains(&b) {
            return Err(ScgViolation::CutNotExternal { a, b });
        }
        if !beta_inner.contains(&a) && !beta_inner.contains(&b) {
            return Err(ScgViolation::CutOffBeta { a, b });
        }
        let pieces = ab_components(&graph, a, b).expect("a 2-cut separates");
        for p in pieces.iter().filter(|p| p.kind == PieceKind::NonTrivial) {
            if !p.vertices.iter().any(|x| *x != a && *x != b && external.contains(x)) {
                return Err(ScgViolation::HiddenComponent {
                    a,
                    b,
                    component: p.vertices.iter().copied().collect(),
                });
            }
        }
    }
    let certificate = Certificate {
        tau: paths.tau,
        beta: paths.beta,
        two_cuts,
    };
    Ok(ScgTriple { graph: g, u, v, certificate })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    Trivial,
    Cycle,
    CaseA,
    CaseB,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::Trivial => "trivial",
            Case::Cycle => "cycle",
            Case::CaseA => "case A",
            Case::CaseB => "case B",
        };
        f.write_str(s)
    }
}

pub fn classify(t: &ScgTriple) -> Case {
    let g = &t.graph;
    if g.vertex_count() == 2 {
        Case::Trivial
    } else if g.vertices().all(|x| g.degree(x) == 2) {
        Case::Cycle
    } else if g.has_edge(t.u, t.v) {
        Case::CaseA
    } else {
        Case::CaseB
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("decomposition needs {expected}, but the triple is {found}")]
    Precondition { expected: &'static str, found: Case },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

fn contradiction(msg: impl Into<String>) -> DecompositionError {
    DecompositionError::InternalContradiction(msg.into())
}

/// Layers `(G_i, u_{i-1}, u_i)` of a chain from `u_0` to `u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseADecomposition {
    pub layers: Vec<ScgTriple>,
    /// `u_1 .. u_{k-1}`.
    pub shared_vertices: Vec<VertexId>,
}

impl CaseADecomposition {
    pub fn k(&self) -> usize {
        self.layers.len()
    }

    /// `u_0 .. u_k`.
    pub fn joints(&self) -> Vec<VertexId> {
        let mut out = vec![self.layers[0].u];
        out.extend(self.layers.iter().map(|l| l.v));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseBDecomposition {
    pub h_triple: ScgTriple,
    /// Attachments `y_i` of the trivial bridges `y_i v` outside the chain, counter-clockwise around `v` from `y_1`.
    pub trivial_bridges: Vec<VertexId>,
    /// Layers from `y_ℓ` to `v`; a single edge layer when `B_ℓ` is the edge `y_ℓ v`.
    pub chain: CaseADecomposition,
    pub y1: VertexId,
    pub y_ell: VertexId,
    /// Number of bridges of `H ∪ {v}`.
    pub ell: usize,
}

pub fn decompose_case_a(t: &ScgTriple) -> Result<CaseADecomposition, DecompositionError> {
    let found = classify(t);
    if found != Case::CaseA {
        return Err(DecompositionError::Precondition {
            expected: "case A (uv an edge, not a cycle)",
            found,
        });
    }
    split_chain(&t.graph, t.u, t.v, &t.graph.edges().into_iter().filter(|&e| e != edge(t.u, t.v)).collect())
}

/// Orders the blocks of the subgraph with edge set `edges` from `u` to `v`
/// and validates each as a layer; embeddings are inherited from `parent`.
fn split_chain(parent: &PlaneGraph, u: VertexId, v: VertexId, edges: &BTreeSet<(VertexId, VertexId)>) -> Result<CaseADecomposition, DecompositionError> {
    let vertices: BTreeSet<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let sub = Subgraph {
        vertices,
        edges: edges.clone(),
    };
    let tree = bc_tree(&sub.to_graph()).map_err(|e| contradiction(format!("chain graph: {e}")))?;
    let mut order = Vec::new();
    let mut joints = vec![u];
    let mut current = u;
    let mut used = vec![false; tree.blocks.len()];
    loop {
        let candidates: Vec<usize> = tree.blocks_containing(current).into_iter().filter(|&i| !used[i]).collect();
        let [b] = candidates[..] else {
            return Err(contradiction(format!("block-cut tree is not a path at {current}")));
        };
        used[b] = true;
        order.push(b);
        if tree.blocks[b].vertices.contains(&v) {
            break;
        }
        let exits: Vec<VertexId> = tree.blocks[b]
            .vertices
            .iter()
            .copied()
            .filter(|&x| x != current && tree.cut_vertices.contains(&x))
            .collect();
        let [next] = exits[..] else {
            return Err(contradiction(format!("block-cut tree is not a path after {current}")));
        };
        joints.push(next);
        current = next;
    }
    joints.push(v);
    if used.iter().any(|b| !b) {
        return Err(contradiction("block-cut tree has blocks off the u-v path"));
    }
    let mut layers = Vec::new();
    for (i, &b) in order.iter().enumerate() {
        let g = parent
            .restrict(&tree.blocks[b].subgraph())
            .map_err(|e| contradiction(format!("layer {}: {e}", i + 1)))?;
        let layer = validate_scg(g, joints[i], joints[i + 1]).map_err(|e| contradiction(format!("layer {} is not a strong circuit graph: {e}", i + 1)))?;
        layers.push(layer);
    }
    Ok(CaseADecomposition {
        layers,
        shared_vertices: joints[1..joints.len() - 1].to_vec(),
    })
}

pub fn decompose_case_b(t: &ScgTriple) -> Result<CaseBDecomposition, DecompositionError> {
    let found = classify(t);
    if found != Case::CaseB {
        return Err(DecompositionError::Precondition {
            expected: "case B (uv not an edge)",
            found,
        });
    }
    let (g, u, v) = (&t.graph, t.u, t.v);
    let graph = g.graph();
    let minus_v = graph.without(&[v]);
    let tree = bc_tree(&minus_v).map_err(|e| contradiction(format!("G - v: {e}")))?;
    let [hb] = tree.blocks_containing(u)[..] else {
        return Err(contradiction("u is a cut vertex of G - v"));
    };
    let h_block = &tree.blocks[hb];
    if h_block.vertices.len() < 3 {
        return Err(contradiction("the block of G - v containing u has fewer than three vertices"));
    }
    let mut h_prime = h_block.subgraph();
    h_prime.vertices.insert(v);
    let bridges = bridges_of(&graph, &h_prime);
    for b in &bridges {
        if b.attachments.len() != 2 || !b.attachments.contains(&v) {
            return Err(contradiction(format!("bridge with attachments {:?}", b.attachments)));
        }
    }
    let nontrivial = bridges.iter().filter(|b| b.kind == PieceKind::NonTrivial).count();
    if nontrivial > 1 {
        return Err(contradiction(format!("{nontrivial} non-trivial bridges of H and v")));
    }
    let tau = t.tau();
    let beta = t.beta();
    let y1 = tau[tau.len() - 2];
    if !h_block.vertices.contains(&y1) || !graph.has_edge(y1, v) {
        return Err(contradiction("the vertex before v on the clockwise path is not in H"));
    }
    let j = (0..beta.len() - 1).rev().find(|&i| h_block.vertices.contains(&beta[i])).expect("u is in H");
    let y_ell = beta[j];
    if j == 0 || y_ell == y1 {
        return Err(contradiction("y_ell is not internal to the counter-clockwise path"));
    }
    let after = beta[j + 1];
    let h_graph = g.restrict(&h_block.subgraph()).map_err(|e| contradiction(format!("H: {e}")))?;
    let h_triple = validate_scg(h_graph, u, y1).map_err(|e| contradiction(format!("(H, u, y1) is not a strong circuit graph: {e}")))?;
    let chain = if after == v {
        if nontrivial != 0 {
            return Err(contradiction("a non-trivial bridge other than the last one"));
        }
        let single = [(y_ell, vec![v]), (v, vec![y_ell])].into_iter().collect();
        let g1 = PlaneGraph::new(single, (y_ell, v)).map_err(|e| contradiction(e.to_string()))?;
        let layer = validate_scg(g1, y_ell, v).map_err(|e| contradiction(e.to_string()))?;
        CaseADecomposition {
            layers: vec![layer],
            shared_vertices: Vec::new(),
        }
    } else {
        let b_ell = bridges
            .iter()
            .find(|b| b.kind == PieceKind::NonTrivial && b.vertices.contains(&after))
            .ok_or_else(|| contradiction("no bridge carries the end of the counter-clockwise path"))?;
        if !b_ell.attachments.contains(&y_ell) {
            return Err(contradiction("the last bridge is not attached at y_ell"));
        }
        if graph.has_edge(y_ell, v) {
            let mut sub = b_ell.subgraph();
            sub.edges.insert(edge(y_ell, v));
            let gb = g.restrict(&sub).map_err(|e| contradiction(format!("B'_ell: {e}")))?;
            let layer = validate_scg(gb, y_ell, v).map_err(|e| contradiction(format!("(B'_ell, y_ell, v) is not a strong circuit graph: {e}")))?;
            CaseADecomposition {
                layers: vec![layer],
                shared_vertices: Vec::new(),
            }
        } else {
            let gb = g.restrict(&b_ell.subgraph()).map_err(|e| contradiction(format!("B_ell: {e}")))?;
            let closed = gb.with_outer_chord(y_ell, v).map_err(|e| contradiction(format!("B'_ell: {e}")))?;
            validate_scg(closed, y_ell, v).map_err(|e| contradiction(format!("(B'_ell, y_ell, v) is not a strong circuit graph: {e}")))?;
            split_chain(g, y_ell, v, &b_ell.edges)?
        }
    };
    let trivial: BTreeSet<VertexId> = bridges
        .iter()
        .filter(|b| b.kind == PieceKind::Trivial)
        .map(|b| *b.attachments.iter().find(|&&x| x != v).unwrap())
        .filter(|&y| y != y_ell)
        .collect();
    let mut trivial_bridges = Vec::new();
    let mut w = y1;
    for _ in 0..g.degree(v) {
        if trivial.contains(&w) {
            trivial_bridges.push(w);
        }
        w = g.pred(v, w);
    }
    if trivial_bridges.len() != trivial.len() || trivial_bridges.first() != Some(&y1) {
        return Err(contradiction("trivial bridges are not ordered around v"));
    }
    Ok(CaseBDecomposition {
        h_triple,
        trivial_bridges,
        chain,
        y1,
        y_ell,
        ell: bridges.len(),
    })
}

/// Node of the recursion tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Trivial,
    Cycle,
    /// Children are the layers `G_1 .. G_k`.
    CaseA {
        shared_vertices: Vec<VertexId>,
    },
    /// Children are `H` followed by the chain layers.
    CaseB {
        y1: VertexId,
        y_ell: VertexId,
        trivial_bridges: Vec<VertexId>,
        ell: usize,
        shared_vertices: Vec<VertexId>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub triple: ScgTriple,
    pub kind: NodeKind,
    pub children: Vec<DecompositionTree>,
}

impl DecompositionTree {
    pub fn case(&self) -> Case {
        match self.kind {
            NodeKind::Trivial => Case::Trivial,
            NodeKind::Cycle => Case::Cycle,
            NodeKind::CaseA { .. } => Case::CaseA,
            NodeKind::CaseB { .. } => Case::CaseB,
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(DecompositionTree::depth).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(DecompositionTree::node_count).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&DecompositionTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }
}

pub fn build_tree(t: &ScgTriple) -> Result<DecompositionTree, DecompositionError> {
    let (kind, subs) = match classify(t) {
        Case::Trivial => (NodeKind::Trivial, Vec::new()),
        Case::Cycle => (NodeKind::Cycle, Vec::new()),
        Case::CaseA => {
            let d = decompose_case_a(t)?;
            (
                NodeKind::CaseA {
                    shared_vertices: d.shared_vertices,
                },
                d.layers,
            )
        }
        Case::CaseB => {
            let d = decompose_case_b(t)?;
            let kind = NodeKind::CaseB {
                y1: d.y1,
                y_ell: d.y_ell,
                trivial_bridges: d.trivial_bridges,
                ell: d.ell,
                shared_vertices: d.chain.shared_vertices,
            };
            let mut subs = vec![d.h_triple];
            subs.extend(d.chain.layers);
            (kind, subs)
        }
    };
    let children = subs.iter().map(build_tree).collect::<Result<Vec<_>, _>>()?;
    Ok(DecompositionTree {
        triple: t.clone(),
        kind,
        children,
    })
}
