//! Brute-force reference implementations for the connectivity routines.
//! They share nothing with the library beyond the graph type.

use std::collections::BTreeSet;

use greedydraw::plane_graph::{edge, Edge, Graph, Subgraph, VertexId};
use rand::Rng;

pub fn v(i: u32) -> VertexId {
    VertexId(i)
}

/// A random connected graph on `n` vertices: a random tree plus each other pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: u32, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for i in 1..n {
        edges.insert(edge(v(rng.gen_range(0..i)), v(i)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert(edge(v(a), v(b)));
            }
        }
    }
    Graph::from_edges((0..n).map(v), edges).unwrap()
}

fn edge_list(g: &Graph) -> Vec<Edge> {
    g.edges()
}

/// Components of the graph on `keep` using only edges of `g`, by repeated relaxation.
pub fn components(g: &Graph, keep: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
    let edges = edge_list(g);
    let mut label: Vec<(VertexId, VertexId)> = keep.iter().map(|&x| (x, x)).collect();
    loop {
        let mut changed = false;
        for &(a, b) in &edges {
            if !keep.contains(&a) || !keep.contains(&b) {
                continue;
            }
            let la = label.iter().find(|p| p.0 == a).unwrap().1;
            let lb = label.iter().find(|p| p.0 == b).unwrap().1;
            if la != lb {
                let (lo, hi) = (la.min(lb), la.max(lb));
                for p in label.iter_mut() {
                    if p.1 == hi {
                        p.1 = lo;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let roots: BTreeSet<VertexId> = label.iter().map(|p| p.1).collect();
    roots.into_iter().map(|r| label.iter().filter(|p| p.1 == r).map(|p| p.0).collect()).collect()
}

fn all_but(g: &Graph, removed: &[VertexId]) -> BTreeSet<VertexId> {
    g.vertices().filter(|x| !removed.contains(x)).collect()
}

pub fn cut_vertices(g: &Graph) -> BTreeSet<VertexId> {
    let base = components(g, &g.vertex_set()).len();
    g.vertices().filter(|&x| components(g, &all_but(g, &[x])).len() > base).collect()
}

pub fn two_cuts(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if components(g, &all_but(g, &[a, b])).len() >= 2 {
                out.push((a, b));
            }
        }
    }
    out
}

fn induced_edges(g: &Graph, s: &BTreeSet<VertexId>) -> BTreeSet<Edge> {
    edge_list(g).into_iter().filter(|(a, b)| s.contains(a) && s.contains(b)).collect()
}

/// `s` spans a connected subgraph with no cut vertex and at least one edge.
fn biconnected(g: &Graph, s: &BTreeSet<VertexId>) -> bool {
    let h = Graph::from_edges(s.iter().copied(), induced_edges(g, s)).unwrap();
    if h.edge_count() == 0 || components(&h, s).len() != 1 {
        return false;
    }
    s.len() == 2 || cut_vertices(&h).is_empty()
}

/// Blocks as maximal biconnected vertex subsets, found by enumerating all subsets.
pub fn blocks(g: &Graph) -> BTreeSet<(BTreeSet<VertexId>, BTreeSet<Edge>)> {
    let vs: Vec<VertexId> = g.vertices().collect();
    assert!(vs.len() <= 14, "subset enumeration is exponential");
    let good: Vec<BTreeSet<VertexId>> = (1u32..1 << vs.len())
        .map(|mask| {
            vs.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| s.len() >= 2 && biconnected(g, s))
        .collect();
    let mut out: BTreeSet<(BTreeSet<VertexId>, BTreeSet<Edge>)> = good
        .iter()
        .filter(|s| !good.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .map(|s| (s.clone(), induced_edges(g, s)))
        .collect();
    for x in g.vertices().filter(|&x| g.degree(x) == 0) {
        out.insert(([x].into(), BTreeSet::new()));
    }
    out
}

/// A piece as (kind is trivial, vertices, edges, attachments).
pub type PieceKey = (bool, BTreeSet<VertexId>, BTreeSet<Edge>, BTreeSet<VertexId>);

/// `{a,b}`-components by definition, or `None` when `{a, b}` is neither a 2-cut nor an edge.
pub fn ab_pieces(g: &Graph, a: VertexId, b: VertexId) -> Option<BTreeSet<PieceKey>> {
    let comps = components(g, &all_but(g, &[a, b]));
    let ab = g.has_edge(a, b);
    if comps.len() < 2 && !ab {
        return None;
    }
    let attach: BTreeSet<VertexId> = [a, b].into();
    let mut out = BTreeSet::new();
    for c in comps {
        let mut vs = c.clone();
        vs.extend([a, b]);
        let es = edge_list(g)
            .into_iter()
            .filter(|(x, y)| (c.contains(x) || c.contains(y)) && vs.contains(x) && vs.contains(y))
            .collect();
        out.insert((false, vs, es, attach.clone()));
    }
    if ab {
        out.insert((true, attach.clone(), [edge(a, b)].into(), attach));
    }
    Some(out)
}

/// H-bridges as classes of edges outside `h`, two edges being related when
/// they share an endpoint outside `V(h)`.
pub fn bridges(g: &Graph, h: &Subgraph) -> BTreeSet<PieceKey> {
    let rest: Vec<Edge> = edge_list(g).into_iter().filter(|e| !h.edges.contains(e)).collect();
    let mut class: Vec<usize> = (0..rest.len()).collect();
    loop {
        let mut changed = false;
        for i in 0..rest.len() {
            for j in 0..rest.len() {
                let (e, f) = (rest[i], rest[j]);
                let shared = [e.0, e.1].into_iter().any(|x| !h.vertices.contains(&x) && (x == f.0 || x == f.1));
                if shared && class[i] != class[j] {
                    let (lo, hi) = (class[i].min(class[j]), class[i].max(class[j]));
                    class.iter_mut().filter(|c| **c == hi).for_each(|c| *c = lo);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = BTreeSet::new();
    for c in class.iter().copied().collect::<BTreeSet<_>>() {
        let es: BTreeSet<Edge> = (0..rest.len()).filter(|&i| class[i] == c).map(|i| rest[i]).collect();
        let vs: BTreeSet<VertexId> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
        let att: BTreeSet<VertexId> = vs.iter().copied().filter(|x| h.vertices.contains(x)).collect();
        let trivial = es.len() == 1 && vs.iter().all(|x| h.vertices.contains(x));
        out.insert((trivial, vs, es, att));
    }
    // Vertices outside H with no edges at all form bridges of their own.
    for x in g.vertices().filter(|x| !h.vertices.contains(x) && g.degree(*x) == 0) {
        out.insert((false, [x].into(), BTreeSet::new(), BTreeSet::new()));
    }
    out
}
