use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::graph::{edge, Graph, Subgraph, VertexId};

/// A directed edge `(tail, head)`.
pub type Dart = (VertexId, VertexId);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("vertex {0} lists neighbour {1} but not vice versa")]
    Asymmetric(VertexId, VertexId),
    #[error("vertex {0} lists neighbour {1} more than once")]
    RepeatedNeighbor(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("rotation of {0} mentions unknown vertex {1}")]
    UnknownVertex(VertexId, VertexId),
    #[error("outer dart {0}->{1} is not an edge")]
    MissingOuterDart(VertexId, VertexId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("rotation system is not planar: V - E + F = {vertices} - {edges} + {faces} != 2")]
    NonPlanarRotation { vertices: usize, edges: usize, faces: usize },
    #[error("vertex {0} is not on the outer face")]
    NotExternal(VertexId),
    #[error("boundary endpoints must be distinct (got {0} twice)")]
    SameVertex(VertexId),
    #[error("no dart of the parent outer face survives in the subgraph")]
    NoOuterDart,
}

/// Outer-face paths between two external vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPaths {
    /// Clockwise from `u` to `v`.
    pub tau: Vec<VertexId>,
    /// Counter-clockwise from `u` to `v`.
    pub beta: Vec<VertexId>,
}

/// A combinatorial plane embedding: clockwise rotations plus an outer dart.
///
/// Faces are traced by leaving `v` along `(v, w)` after arriving via `(u, v)`,
/// where `w` follows `u` clockwise around `v`. Each face lies to the left of
/// its darts, so inner faces run counter-clockwise and the outer walk runs
/// clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    outer: Dart,
}

impl PlaneGraph {
    /// Checks rotation consistency and the outer dart; planarity is checked by [`PlaneGraph::trace_faces`].
    pub fn new(rotation: BTreeMap<VertexId, Vec<VertexId>>, outer: Dart) -> Result<Self, EmbeddingError> {
        for (&v, list) in &rotation {
            let mut seen = HashSet::new();
            for &w in list {
                if w == v {
                    return Err(EmbeddingError::SelfLoop(v));
                }
                if !seen.insert(w) {
                    return Err(EmbeddingError::RepeatedNeighbor(v, w));
                }
                match rotation.get(&w) {
                    None => return Err(EmbeddingError::UnknownVertex(v, w)),
                    Some(back) if !back.contains(&v) => return Err(EmbeddingError::Asymmetric(v, w)),
                    _ => {}
                }
            }
        }
        if !rotation.get(&outer.0).is_some_and(|l| l.contains(&outer.1)) {
            return Err(EmbeddingError::MissingOuterDart(outer.0, outer.1));
        }
        Ok(PlaneGraph { rotation, outer })
    }

    /// Like [`PlaneGraph::new`], additionally requiring connectivity and Euler's formula.
    pub fn new_checked(rotation: BTreeMap<VertexId, Vec<VertexId>>, outer: Dart) -> Result<Self, EmbeddingError> {
        let g = PlaneGraph::new(rotation, outer)?;
        g.trace_faces()?;
        Ok(g)
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.rotation.get(&a).is_some_and(|l| l.contains(&b))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.rotation
            .iter()
            .flat_map(|(&a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.vertices(), self.edges()).expect("rotation system is a simple graph")
    }

    /// Neighbour of `v` that follows `w` clockwise.
    pub fn succ(&self, v: VertexId, w: VertexId) -> VertexId {
        let l = self.rotation(v);
        let i = l.iter().position(|&x| x == w).expect("w is a neighbour of v");
        l[(i + 1) % l.len()]
    }

    /// Neighbour of `v` that precedes `w` clockwise.
    pub fn pred(&self, v: VertexId, w: VertexId) -> VertexId {
        let l = self.rotation(v);
        let i = l.iter().position(|&x| x == w).expect("w is a neighbour of v");
        l[(i + l.len() - 1) % l.len()]
    }

    pub fn next_dart(&self, (a, b): Dart) -> Dart {
        (b, self.succ(b, a))
    }

    /// Darts of the face to the left of `start`, beginning with `start`.
    pub fn face_darts(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.next_dart(start);
        while d != start {
            out.push(d);
            d = self.next_dart(d);
        }
        out
    }

    /// Partitions all darts into face walks and checks Euler's formula.
    pub fn trace_faces(&self) -> Result<Vec<Vec<Dart>>, EmbeddingError> {
        if !self.graph().is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let mut seen: HashSet<Dart> = HashSet::new();
        let mut faces = Vec::new();
        for (&a, l) in &self.rotation {
            for &b in l {
                if seen.contains(&(a, b)) {
                    continue;
                }
                let f = self.face_darts((a, b));
                seen.extend(f.iter().copied());
                faces.push(f);
            }
        }
        let (v, e) = (self.vertex_count(), self.edge_count());
        let f = faces.len().max(1);
        if v + f != e + 2 {
            return Err(EmbeddingError::NonPlanarRotation {
                vertices: v,
                edges: e,
                faces: f,
            });
        }
        Ok(faces)
    }

    /// Vertices of the outer walk in clockwise order, starting at the outer dart's tail.
    pub fn outer_walk(&self) -> Vec<VertexId> {
        if self.edge_count() == 0 {
            return self.vertices().collect();
        }
        self.face_darts(self.outer).into_iter().map(|d| d.0).collect()
    }

    pub fn outer_darts(&self) -> Vec<Dart> {
        if self.edge_count() == 0 {
            return Vec::new();
        }
        self.face_darts(self.outer)
    }

    pub fn external_vertices(&self) -> BTreeSet<VertexId> {
        self.outer_walk().into_iter().collect()
    }

    /// τ and β between `u` and `v` on the outer walk (a simple cycle for 2-connected graphs).
    pub fn boundary_paths(&self, u: VertexId, v: VertexId) -> Result<BoundaryPaths, EmbeddingError> {
        if u == v {
            return Err(EmbeddingError::SameVertex(u));
        }
        let walk = self.outer_walk();
        let iu = walk.iter().position(|&x| x == u).ok_or(EmbeddingError::NotExternal(u))?;
        let iv = walk.iter().position(|&x| x == v).ok_or(EmbeddingError::NotExternal(v))?;
        let n = walk.len();
        let mut tau = vec![u];
        let mut i = iu;
        while i != iv {
            i = (i + 1) % n;
            tau.push(walk[i]);
        }
        let mut beta = vec![u];
        let mut i = iu;
        while i != iv {
            i = (i + n - 1) % n;
            beta.push(walk[i]);
        }
        Ok(BoundaryPaths { tau, beta })
    }

    /// Embedding of a subgraph obtained by deleting everything else.
    ///
    /// The outer dart is the smallest surviving dart of this graph's outer walk.
    pub fn restrict(&self, sub: &Subgraph) -> Result<PlaneGraph, EmbeddingError> {
        let rotation: BTreeMap<VertexId, Vec<VertexId>> = sub
            .vertices
            .iter()
            .map(|&v| {
                let l = self.rotation(v).iter().copied().filter(|&w| sub.edges.contains(&edge(v, w))).collect();
                (v, l)
            })
            .collect();
        let outer = self
            .outer_darts()
            .into_iter()
            .filter(|&(a, b)| sub.edges.contains(&edge(a, b)))
            .min()
            .ok_or(EmbeddingError::NoOuterDart)?;
        PlaneGraph::new(rotation, outer)
    }

    /// Adds edge `a b` through the outer face so that `a` immediately precedes `b`
    /// on the new outer walk. Both vertices must appear exactly once on the outer walk.
    pub fn with_outer_chord(&self, a: VertexId, b: VertexId) -> Result<PlaneGraph, EmbeddingError> {
        let darts = self.outer_darts();
        let arrive = |x: VertexId| darts.iter().find(|d| d.1 == x).map(|d| d.0).ok_or(EmbeddingError::NotExternal(x));
        let before_a = arrive(a)?;
        let before_b = arrive(b)?;
        let mut rotation = self.rotation.clone();
        for (x, after, new) in [(a, before_a, b), (b, before_b, a)] {
            let l = rotation.get_mut(&x).unwrap();
            let i = l.iter().position(|&w| w == after).unwrap();
            l.insert(i + 1, new);
        }
        PlaneGraph::new(rotation, (a, b))
    }
}
