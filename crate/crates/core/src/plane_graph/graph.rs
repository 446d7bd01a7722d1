use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Opaque vertex identifier. Subgraphs keep the ids of their parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge stored with the smaller endpoint first.
pub type Edge = (VertexId, VertexId);

pub fn edge(a: VertexId, b: VertexId) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(VertexId),
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_edges(vertices: impl IntoIterator<Item = VertexId>, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for x in [a, b] {
                if !g.adj.contains_key(&x) {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if g.has_edge(a, b) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.insert_edge(a, b);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    fn insert_edge(&mut self, a: VertexId, b: VertexId) {
        for (x, y) in [(a, b), (b, a)] {
            let list = self.adj.entry(x).or_default();
            if let Err(pos) = list.binary_search(&y) {
                list.insert(pos, y);
            }
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|l| l.binary_search(&b).is_ok())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.adj
            .iter()
            .flat_map(|(&a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, l)| (v, l.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        Graph { adj }
    }

    pub fn without(&self, removed: &[VertexId]) -> Graph {
        let keep = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Connected components, each as a sorted vertex set, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for &y in self.neighbors(x) {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// The empty graph and a single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A subgraph given by explicit vertex and edge sets over parent ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
}

impl Subgraph {
    pub fn of_graph(g: &Graph) -> Self {
        Subgraph {
            vertices: g.vertex_set(),
            edges: g.edges().into_iter().collect(),
        }
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.vertices.iter().copied(), self.edges.iter().copied()).expect("subgraph edges join subgraph vertices")
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&edge(a, b))
    }
}
