use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::graph::{edge, Edge, Graph, Subgraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConnectivityError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("{{{0}, {1}}} is neither a 2-cut nor an edge")]
    NotACut(VertexId, VertexId),
}

/// A maximal 2-connected subgraph (or a bridge edge, or an isolated vertex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
}

impl Block {
    pub fn subgraph(&self) -> Subgraph {
        Subgraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        }
    }
}

/// Block-cut tree. `links` joins block indices to the cut vertices they contain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<VertexId>,
    pub links: Vec<(usize, VertexId)>,
}

impl BcTree {
    pub fn blocks_containing(&self, v: VertexId) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].vertices.contains(&v)).collect()
    }
}

/// Blocks by the Hopcroft–Tarjan low-point recursion, run iteratively.
pub fn bc_tree(g: &Graph) -> Result<BcTree, ConnectivityError> {
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let mut blocks = Vec::new();
    let Some(root) = g.vertices().next() else {
        return Ok(BcTree {
            blocks,
            cut_vertices: BTreeSet::new(),
            links: Vec::new(),
        });
    };
    if g.edge_count() == 0 {
        let block = Block {
            vertices: [root].into(),
            edges: BTreeSet::new(),
        };
        return Ok(BcTree {
            blocks: vec![block],
            cut_vertices: BTreeSet::new(),
            links: Vec::new(),
        });
    }
    let mut disc: HashMap<VertexId, usize> = HashMap::new();
    let mut low: HashMap<VertexId, usize> = HashMap::new();
    let mut edge_stack: Vec<Edge> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(root, None, 0)];
    disc.insert(root, 0);
    low.insert(root, 0);
    let mut time = 1;
    while let Some(&mut (x, parent, ref mut i)) = stack.last_mut() {
        let nbrs = g.neighbors(x);
        if *i < nbrs.len() {
            let y = nbrs[*i];
            *i += 1;
            if Some(y) == parent {
                continue;
            }
            match disc.get(&y) {
                None => {
                    edge_stack.push(edge(x, y));
                    disc.insert(y, time);
                    low.insert(y, time);
                    time += 1;
                    stack.push((y, Some(x), 0));
                }
                Some(&dy) if dy < disc[&x] => {
                    edge_stack.push(edge(x, y));
                    let l = low[&x].min(dy);
                    low.insert(x, l);
                }
                _ => {}
            }
        } else {
            stack.pop();
            if let Some(p) = parent {
                let lx = low[&x];
                let lp = low[&p].min(lx);
                low.insert(p, lp);
                if lx >= disc[&p] {
                    let stop = edge(p, x);
                    let mut b = Block {
                        vertices: BTreeSet::new(),
                        edges: BTreeSet::new(),
                    };
                    while let Some(e) = edge_stack.pop() {
                        b.vertices.insert(e.0);
                        b.vertices.insert(e.1);
                        b.edges.insert(e);
                        if e == stop {
                            break;
                        }
                    }
                    blocks.push(b);
                }
            }
        }
    }
    blocks.sort_by(|a, b| a.vertices.iter().next().cmp(&b.vertices.iter().next()).then(a.edges.cmp(&b.edges)));
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for b in &blocks {
        for &v in &b.vertices {
            *count.entry(v).or_default() += 1;
        }
    }
    let cut_vertices: BTreeSet<VertexId> = count.into_iter().filter(|&(_, c)| c > 1).map(|(v, _)| v).collect();
    let links = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.vertices.iter().filter(|v| cut_vertices.contains(v)).map(move |&v| (i, v)))
        .collect();
    Ok(BcTree { blocks, cut_vertices, links })
}

/// Cut vertices of a graph (of each component, if disconnected).
pub fn articulation_points(g: &Graph) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for comp in g.components() {
        let h = g.induced(&comp);
        if let Ok(t) = bc_tree(&h) {
            out.extend(t.cut_vertices);
        }
    }
    out
}

/// All vertex pairs `{a, b}` (with `a < b`) whose removal disconnects `g`.
pub fn find_2cuts(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    let vs: Vec<VertexId> = g.vertices().collect();
    for &a in &vs {
        let h = g.without(&[a]);
        if h.is_connected() {
            for b in articulation_points(&h) {
                if a < b {
                    out.push((a, b));
                }
            }
        } else {
            for &b in vs.iter().filter(|&&b| b > a) {
                if !h.without(&[b]).is_connected() {
                    out.push((a, b));
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    Trivial,
    NonTrivial,
}

/// An `{a,b}`-component or an H-bridge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
    /// For bridges: the vertices shared with the host.
    pub attachments: BTreeSet<VertexId>,
}

impl Piece {
    pub fn subgraph(&self) -> Subgraph {
        Subgraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Vertices of the piece that are not attachments.
    pub fn inner_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices.difference(&self.attachments).copied().collect()
    }
}

/// Connected components of `g` minus `removed`, each grown by its edges to `removed`.
fn components_with_attachments(g: &Graph, removed: &BTreeSet<VertexId>) -> Vec<Piece> {
    let keep: BTreeSet<VertexId> = g.vertices().filter(|v| !removed.contains(v)).collect();
    let rest = g.induced(&keep);
    rest.components()
        .into_iter()
        .map(|comp| {
            let mut vertices = comp.clone();
            let mut edges = BTreeSet::new();
            let mut attachments = BTreeSet::new();
            for &x in &comp {
                for &y in g.neighbors(x) {
                    if comp.contains(&y) || removed.contains(&y) {
                        edges.insert(edge(x, y));
                    }
                    if removed.contains(&y) {
                        vertices.insert(y);
                        attachments.insert(y);
                    }
                }
            }
            Piece {
                kind: PieceKind::NonTrivial,
                vertices,
                edges,
                attachments,
            }
        })
        .collect()
}

/// The `{a,b}`-components of `g`: the edge `ab` if present, then one piece per
/// component of `g − {a, b}`.
pub fn ab_components(g: &Graph, a: VertexId, b: VertexId) -> Result<Vec<Piece>, ConnectivityError> {
    let removed: BTreeSet<VertexId> = [a, b].into();
    let mut pieces = components_with_attachments(g, &removed);
    let has_ab = g.has_edge(a, b);
    if pieces.len() < 2 && !has_ab {
        return Err(ConnectivityError::NotACut(a, b));
    }
    for p in &mut pieces {
        p.vertices.insert(a);
        p.vertices.insert(b);
        p.attachments = removed.clone();
    }
    if has_ab {
        let trivial = Piece {
            kind: PieceKind::Trivial,
            vertices: removed.clone(),
            edges: [edge(a, b)].into(),
            attachments: removed,
        };
        pieces.insert(0, trivial);
    }
    Ok(pieces)
}

/// H-bridges of `g`: trivial ones first (by edge), then non-trivial ones by smallest inner vertex.
pub fn bridges_of(g: &Graph, h: &Subgraph) -> Vec<Piece> {
    let mut out: Vec<Piece> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| h.vertices.contains(&a) && h.vertices.contains(&b) && !h.edges.contains(&(a, b)))
        .map(|(a, b)| Piece {
            kind: PieceKind::Trivial,
            vertices: [a, b].into(),
            edges: [(a, b)].into(),
            attachments: [a, b].into(),
        })
        .collect();
    out.extend(components_with_attachments(g, &h.vertices));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn graph(n: u32, edges: &[(u32, u32)]) -> Graph {
        Graph::from_edges((0..n).map(v), edges.iter().map(|&(a, b)| (v(a), v(b)))).unwrap()
    }

    #[test]
    fn path_has_two_blocks() {
        let t = bc_tree(&graph(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, [v(1)].into());
        assert_eq!(t.links.len(), 2);
    }

    #[test]
    fn bowtie_has_two_blocks() {
        let t = bc_tree(&graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, [v(2)].into());
        assert!(t.blocks.iter().all(|b| b.edges.len() == 3));
    }

    #[test]
    fn disconnected_graph_has_no_bc_tree() {
        assert_eq!(bc_tree(&graph(3, &[(0, 1)])), Err(ConnectivityError::Disconnected));
    }

    #[test]
    fn two_cuts_of_small_graphs() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(find_2cuts(&k4).is_empty());
        let square = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(find_2cuts(&square), vec![(v(0), v(2)), (v(1), v(3))]);
    }

    #[test]
    fn ab_components_of_square_and_triangle() {
        let square = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = ab_components(&square, v(0), v(2)).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|p| p.kind == PieceKind::NonTrivial && p.edges.len() == 2));
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let c = ab_components(&tri, v(0), v(1)).unwrap();
        assert_eq!(c.iter().map(|p| p.kind).collect::<Vec<_>>(), vec![PieceKind::Trivial, PieceKind::NonTrivial]);
        assert_eq!(ab_components(&square, v(0), v(1)).map(|c| c.len()), Ok(2));
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(ab_components(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), v(1), v(3)).is_err());
        assert_eq!(ab_components(&k4, v(0), v(1)).map(|c| c.len()), Ok(2));
    }

    #[test]
    fn theta_graph_has_three_components() {
        // Poles 0 and 1 joined by three paths of length two.
        let theta = graph(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let c = ab_components(&theta, v(0), v(1)).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn bridges_of_triangle_edge_and_wheel_rim() {
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let h = Subgraph {
            vertices: [v(0), v(1)].into(),
            edges: [(v(0), v(1))].into(),
        };
        let b = bridges_of(&tri, &h);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, PieceKind::NonTrivial);
        assert_eq!(b[0].attachments, [v(0), v(1)].into());
        assert!(bridges_of(&tri, &Subgraph::of_graph(&tri)).is_empty());
        // Wheel with hub 0 and rim 1..5.
        let mut e: Vec<(u32, u32)> = (1..=5).map(|i| (0, i)).collect();
        e.extend((1..=5).map(|i| (i, i % 5 + 1)));
        let w = graph(6, &e);
        let rim = Subgraph {
            vertices: (1..=5).map(v).collect(),
            edges: (1..=5).map(|i| edge(v(i), v(i % 5 + 1))).collect(),
        };
        let b = bridges_of(&w, &rim);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].attachments, (1..=5).map(v).collect());
    }
}
