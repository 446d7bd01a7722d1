//! JSON documents for graphs, drawings and decomposition trees.
//!
//! Numbers that carry geometry are decimal strings so that generic JSON
//! tooling cannot round them through binary floats.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arith::Real;
use crate::decomposition::{Case, DecompositionTree, NodeKind};
use crate::geometry::Point;
use crate::layout::{Drawing, LayoutBudget, NodeRecord, ParamRule, Witnesses};
use crate::plane_graph::{PlaneGraph, VertexId};

pub const GRAPH_VERSION: &str = "greedydraw-graph/1";
pub const DRAWING_VERSION: &str = "greedydraw-drawing/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn field(path: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field {
        path: path.into(),
        message: message.into(),
    }
}

/// Deserializes `text`, reporting the path of the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        field(if path.is_empty() { ".".to_string() } else { path }, e.into_inner().to_string())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub version: String,
    pub vertices: Vec<VertexEntry>,
    /// Clockwise neighbour lists.
    pub rotations: BTreeMap<u32, Vec<u32>>,
    pub outer_dart: [u32; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<u32>,
}

impl GraphDocument {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        let (a, b) = g.outer_dart();
        GraphDocument {
            version: GRAPH_VERSION.to_string(),
            vertices: g.vertices().map(|v| VertexEntry { id: v.0, label: None }).collect(),
            rotations: g.rotations().iter().map(|(v, l)| (v.0, l.iter().map(|w| w.0).collect())).collect(),
            outer_dart: [a.0, b.0],
            u: None,
            v: None,
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph, InputError> {
        if self.version != GRAPH_VERSION {
            return Err(field("version", format!("expected {GRAPH_VERSION:?}, got {:?}", self.version)));
        }
        let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (i, entry) in self.vertices.iter().enumerate() {
            if rotation.insert(VertexId(entry.id), Vec::new()).is_some() {
                return Err(field(format!("vertices[{i}].id"), format!("vertex {} listed twice", entry.id)));
            }
        }
        for (&v, list) in &self.rotations {
            match rotation.get_mut(&VertexId(v)) {
                Some(slot) => *slot = list.iter().map(|&w| VertexId(w)).collect(),
                None => return Err(field(format!("rotations.{v}"), "not a listed vertex")),
            }
        }
        let outer = (VertexId(self.outer_dart[0]), VertexId(self.outer_dart[1]));
        PlaneGraph::new_checked(rotation, outer).map_err(|e| field("rotations", e.to_string()))
    }

    pub fn designated_pair(&self) -> Option<(VertexId, VertexId)> {
        Some((VertexId(self.u?), VertexId(self.v?)))
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, InputError> {
    parse_json(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub parent: Option<usize>,
    pub case: String,
    pub u: u32,
    pub v: u32,
    pub vertex_count: usize,
    pub alpha: String,
    pub rule: ParamRule,
    pub budget: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub to_v: BTreeMap<u32, Vec<u32>>,
    pub to_u: BTreeMap<u32, Vec<u32>>,
    /// Each path runs from its first to its last vertex.
    pub pairs: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDocument {
    pub version: String,
    pub alpha: String,
    pub delta: String,
    pub precision_bits: u32,
    pub u: u32,
    pub v: u32,
    pub tau: Vec<u32>,
    pub beta: Vec<u32>,
    pub positions: BTreeMap<u32, PointDoc>,
    pub provenance: Vec<NodeDoc>,
    pub witnesses: WitnessDoc,
    pub graph: GraphDocument,
}

fn ids(p: &[VertexId]) -> Vec<u32> {
    p.iter().map(|v| v.0).collect()
}

fn vids(p: &[u32]) -> Vec<VertexId> {
    p.iter().map(|&v| VertexId(v)).collect()
}

fn case_name(c: Case) -> &'static str {
    match c {
        Case::Trivial => "trivial",
        Case::Cycle => "cycle",
        Case::CaseA => "case_a",
        Case::CaseB => "case_b",
    }
}

fn parse_case(s: &str) -> Option<Case> {
    Some(match s {
        "trivial" => Case::Trivial,
        "cycle" => Case::Cycle,
        "case_a" => Case::CaseA,
        "case_b" => Case::CaseB,
        _ => return None,
    })
}

impl DrawingDocument {
    pub fn from_drawing(d: &Drawing) -> Self {
        let digits = Real::round_trip_digits(d.precision);
        let dec = |r: &Real| r.to_decimal(digits);
        let mut graph = GraphDocument::from_graph(&d.graph);
        graph.u = Some(d.u.0);
        graph.v = Some(d.v.0);
        DrawingDocument {
            version: DRAWING_VERSION.to_string(),
            alpha: dec(&d.alpha),
            delta: dec(&d.delta),
            precision_bits: d.precision,
            u: d.u.0,
            v: d.v.0,
            tau: ids(&d.tau),
            beta: ids(&d.beta),
            positions: d.positions.iter().map(|(v, p)| (v.0, PointDoc { x: dec(&p.x), y: dec(&p.y) })).collect(),
            provenance: d
                .provenance
                .iter()
                .map(|r| NodeDoc {
                    parent: r.parent,
                    case: case_name(r.case).to_string(),
                    u: r.u.0,
                    v: r.v.0,
                    vertex_count: r.vertex_count,
                    alpha: dec(&r.alpha),
                    rule: r.rule,
                    budget: r.budget.entries().into_iter().map(|(k, v)| (k.to_string(), dec(v))).collect(),
                })
                .collect(),
            witnesses: WitnessDoc {
                to_v: d.witnesses.to_v.iter().map(|(v, p)| (v.0, ids(p))).collect(),
                to_u: d.witnesses.to_u.iter().map(|(v, p)| (v.0, ids(p))).collect(),
                pairs: d.witnesses.pairs.values().map(|p| ids(p)).collect(),
            },
            graph,
        }
    }

    pub fn to_drawing(&self) -> Result<Drawing, InputError> {
        if self.version != DRAWING_VERSION {
            return Err(field("version", format!("expected {DRAWING_VERSION:?}, got {:?}", self.version)));
        }
        let prec = self.precision_bits;
        if prec < 16 {
            return Err(field("precision_bits", "must be at least 16"));
        }
        let num = |path: String, s: &str| Real::parse_decimal(s, prec).map_err(|e| field(path, e.to_string()));
        let graph = self.graph.to_graph().map_err(|e| match e {
            InputError::Field { path, message } => field(format!("graph.{path}"), message),
            other => other,
        })?;
        let mut positions = BTreeMap::new();
        for (&v, p) in &self.positions {
            let x = num(format!("positions.{v}.x"), &p.x)?;
            let y = num(format!("positions.{v}.y"), &p.y)?;
            positions.insert(VertexId(v), Point::new(x, y));
        }
        if let Some(missing) = graph.vertices().find(|x| !positions.contains_key(x)) {
            return Err(field("positions", format!("vertex {missing} has no position")));
        }
        let mut provenance = Vec::new();
        for (i, n) in self.provenance.iter().enumerate() {
            let case = parse_case(&n.case).ok_or_else(|| field(format!("provenance[{i}].case"), "unknown case"))?;
            let mut budget = LayoutBudget::default();
            for (k, v) in &n.budget {
                let val = Some(num(format!("provenance[{i}].budget.{k}"), v)?);
                match k.as_str() {
                    "eps_star" => budget.eps_star = val,
                    "y_depth" => budget.y_depth = val,
                    "eps" => budget.eps = val,
                    "tan_phi" => budget.tan_phi = val,
                    "beta" => budget.beta = val,
                    "rho" => budget.rho = val,
                    "d_star" => budget.d_star = val,
                    "alpha_prime" => budget.alpha_prime = val,
                    "d_y1v" => budget.d_y1v = val,
                    "delta" => budget.delta = val,
                    _ => return Err(field(format!("provenance[{i}].budget.{k}"), "unknown budget entry")),
                }
            }
            provenance.push(NodeRecord {
                parent: n.parent,
                case,
                u: VertexId(n.u),
                v: VertexId(n.v),
                vertex_count: n.vertex_count,
                alpha: num(format!("provenance[{i}].alpha"), &n.alpha)?,
                rule: n.rule,
                budget,
            });
        }
        let mut witnesses = Witnesses {
            to_v: self.witnesses.to_v.iter().map(|(&v, p)| (VertexId(v), vids(p))).collect(),
            to_u: self.witnesses.to_u.iter().map(|(&v, p)| (VertexId(v), vids(p))).collect(),
            pairs: BTreeMap::new(),
        };
        for (i, p) in self.witnesses.pairs.iter().enumerate() {
            let (Some(&a), Some(&b)) = (p.first(), p.last()) else {
                return Err(field(format!("witnesses.pairs[{i}]"), "empty path"));
            };
            witnesses.pairs.insert((VertexId(a), VertexId(b)), vids(p));
        }
        Ok(Drawing {
            graph,
            u: VertexId(self.u),
            v: VertexId(self.v),
            tau: vids(&self.tau),
            beta: vids(&self.beta),
            alpha: num("alpha".into(), &self.alpha)?,
            delta: num("delta".into(), &self.delta)?,
            precision: prec,
            positions,
            provenance,
            witnesses,
        })
    }
}

pub fn parse_drawing(text: &str) -> Result<DrawingDocument, InputError> {
    parse_json(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDoc {
    pub case: &'static str,
    pub u: u32,
    pub v: u32,
    pub vertices: Vec<u32>,
    pub tau: Vec<u32>,
    pub beta: Vec<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub shared_vertices: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_ell: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trivial_bridges: Vec<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeDoc>,
}

impl TreeDoc {
    pub fn from_tree(t: &DecompositionTree) -> Self {
        let mut doc = TreeDoc {
            case: case_name(t.case()),
            u: t.triple.u.0,
            v: t.triple.v.0,
            vertices: t.triple.graph.vertices().map(|v| v.0).collect(),
            tau: ids(t.triple.tau()),
            beta: ids(t.triple.beta()),
            shared_vertices: Vec::new(),
            y1: None,
            y_ell: None,
            trivial_bridges: Vec::new(),
            children: t.children.iter().map(TreeDoc::from_tree).collect(),
        };
        match &t.kind {
            NodeKind::CaseA { shared_vertices } => doc.shared_vertices = ids(shared_vertices),
            NodeKind::CaseB {
                y1,
                y_ell,
                trivial_bridges,
                shared_vertices,
                ..
            } => {
                doc.y1 = Some(y1.0);
                doc.y_ell = Some(y_ell.0);
                doc.trivial_bridges = ids(trivial_bridges);
                doc.shared_vertices = ids(shared_vertices);
            }
            NodeKind::Trivial | NodeKind::Cycle => {}
        }
        doc
    }
}
