#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeSet;

use greedydraw::plane_graph::{ab_components, bc_tree, bridges_of, find_2cuts, Graph, Piece, PieceKind, Subgraph};
use rand::Rng;

use oracles::PieceKey;

fn key(p: &Piece) -> PieceKey {
    (p.kind == PieceKind::Trivial, p.vertices.clone(), p.edges.clone(), p.attachments.clone())
}

/// Compares `bc_tree`, `find_2cuts`, `ab_components` (every pair) and
/// `bridges_of` (on a random subgraph) against the oracles.
pub fn connectivity_agrees<R: Rng>(g: &Graph, rng: &mut R) -> Result<(), String> {
    let tree = bc_tree(g).map_err(|e| format!("bc_tree: {e}"))?;
    let got: BTreeSet<_> = tree.blocks.iter().map(|b| (b.vertices.clone(), b.edges.clone())).collect();
    if got.len() != tree.blocks.len() || got != oracles::blocks(g) {
        return Err(format!("blocks differ: {:?}", tree.blocks));
    }
    if tree.cut_vertices != oracles::cut_vertices(g) {
        return Err(format!("cut vertices differ: {:?}", tree.cut_vertices));
    }
    for &(b, c) in &tree.links {
        if !tree.blocks[b].vertices.contains(&c) || !tree.cut_vertices.contains(&c) {
            return Err(format!("bad link {b} - {c}"));
        }
    }
    let expected_links: usize = tree.cut_vertices.iter().map(|c| tree.blocks_containing(*c).len()).sum();
    if tree.links.len() != expected_links {
        return Err("links do not join every cut vertex to its blocks".into());
    }

    let cuts = find_2cuts(g);
    if cuts != oracles::two_cuts(g) {
        return Err(format!("2-cuts differ: {cuts:?}"));
    }

    let vs: Vec<_> = g.vertices().collect();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let got = ab_components(g, a, b).ok().map(|ps| ps.iter().map(key).collect::<BTreeSet<_>>());
            if got != oracles::ab_pieces(g, a, b) {
                return Err(format!("{{{a}, {b}}}-components differ: {got:?}"));
            }
        }
    }

    let hv: BTreeSet<_> = vs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    let he = g
        .edges()
        .into_iter()
        .filter(|(a, b)| hv.contains(a) && hv.contains(b) && rng.gen_bool(0.7))
        .collect();
    let h = Subgraph { vertices: hv, edges: he };
    let got: BTreeSet<_> = bridges_of(g, &h).iter().map(key).collect();
    if got != oracles::bridges(g, &h) {
        return Err(format!("bridges of {h:?} differ: {got:?}"));
    }
    Ok(())
}

use greedydraw::decomposition::{validate_scg, Case, DecompositionTree, NodeKind, ScgTriple};
use greedydraw::plane_graph::VertexId;

/// Layers `G_1 .. G_k` must run from `first` to `last`, consecutive layers
/// sharing exactly their joint and all others sharing nothing.
fn check_layers(layers: &[DecompositionTree], first: VertexId, last: VertexId) -> Result<(), String> {
    let k = layers.len();
    if k == 0 || layers[0].triple.u != first || layers[k - 1].triple.v != last {
        return Err("layers do not run between the expected ends".into());
    }
    for i in 0..k {
        let a = layers[i].triple.vertex_set();
        for j in i + 1..k {
            let common: Vec<VertexId> = a.intersection(&layers[j].triple.vertex_set()).copied().collect();
            let want = if j == i + 1 { vec![layers[i].triple.v] } else { vec![] };
            if common != want || (j == i + 1 && layers[j].triple.u != layers[i].triple.v) {
                return Err(format!("layers {} and {} share {common:?}", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

fn internal(path: &[VertexId], x: VertexId) -> bool {
    path.len() > 2 && path[1..path.len() - 1].contains(&x)
}

fn revalidate(t: &ScgTriple) -> Result<(), String> {
    validate_scg(t.graph.clone(), t.u, t.v)
        .map(|_| ())
        .map_err(|e| format!("sub-triple ({}, {}) is invalid: {e}", t.u, t.v))
}

/// Re-checks every node of the tree against the decomposition lemmas.
pub fn decomposition_sound(tree: &DecompositionTree) -> Result<(), String> {
    let edges = tree.triple.graph.edge_count();
    if tree.depth() > edges.max(1) {
        return Err(format!("depth {} exceeds the edge count {edges}", tree.depth()));
    }
    for node in tree.nodes() {
        let t = &node.triple;
        revalidate(t)?;
        match &node.kind {
            NodeKind::Trivial | NodeKind::Cycle => {
                if !node.children.is_empty() {
                    return Err("leaf with children".into());
                }
            }
            NodeKind::CaseA { shared_vertices } => {
                check_layers(&node.children, t.u, t.v)?;
                let joints: Vec<VertexId> = node.children[..node.children.len() - 1].iter().map(|c| c.triple.v).collect();
                if &joints != shared_vertices {
                    return Err("recorded shared vertices differ from the joints".into());
                }
            }
            NodeKind::CaseB {
                y1, y_ell, trivial_bridges, ..
            } => {
                let h = &node.children[0].triple;
                if h.graph.vertex_count() < 3 || h.u != t.u || h.v != *y1 {
                    return Err("H is not a strong circuit graph from u to y1 with three vertices".into());
                }
                if !internal(t.tau(), *y1) || t.tau()[t.tau().len() - 2] != *y1 || trivial_bridges.first() != Some(y1) {
                    return Err("y1 is not the vertex before v on the clockwise path".into());
                }
                if !internal(t.beta(), *y_ell) || !internal(h.beta(), *y_ell) {
                    return Err("y_ell is not internal to both counter-clockwise paths".into());
                }
                let distinct: std::collections::BTreeSet<_> = trivial_bridges.iter().collect();
                if distinct.len() != trivial_bridges.len() || trivial_bridges.iter().any(|y| !h.graph.contains(*y) || !t.graph.has_edge(*y, t.v)) {
                    return Err("trivial bridges are not distinct edges from H to v".into());
                }
                check_layers(&node.children[1..], *y_ell, t.v)?;
            }
        }
        let is_leaf = matches!(node.kind, NodeKind::Trivial | NodeKind::Cycle);
        if is_leaf != node.children.is_empty() || (node.case() == Case::Trivial && t.graph.vertex_count() != 2) {
            return Err("leaf kinds do not match".into());
        }
    }
    Ok(())
}
