//! Embedded test graphs: wheels, prisms, cycles, the platonic solids and
//! random 3-connected planar graphs.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::plane_graph::{Dart, PlaneGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Platonic {
    Tetra,
    Cube,
    Octa,
    Dodeca,
    Icosa,
}

impl FromStr for Platonic {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tetra" | "tetrahedron" => Platonic::Tetra,
            "cube" | "hexahedron" => Platonic::Cube,
            "octa" | "octahedron" => Platonic::Octa,
            "dodeca" | "dodecahedron" => Platonic::Dodeca,
            "icosa" | "icosahedron" => Platonic::Icosa,
            _ => return Err(GenerateError::BadSpec(format!("unknown platonic solid {s:?}"))),
        })
    }
}

impl fmt::Display for Platonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Platonic::Tetra => "tetra",
            Platonic::Cube => "cube",
            Platonic::Octa => "octa",
            Platonic::Dodeca => "dodeca",
            Platonic::Icosa => "icosa",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Hub plus an `n`-vertex rim.
    Wheel {
        n: usize,
    },
    /// Two `n`-gons joined by a perfect matching.
    Prism {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Platonic {
        solid: Platonic,
    },
    Random3c {
        n: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("bad generator spec: {0}")]
    BadSpec(String),
}

pub fn generate(spec: &GeneratorSpec) -> Result<PlaneGraph, GenerateError> {
    let bad = |m: &str| Err(GenerateError::BadSpec(m.into()));
    match *spec {
        GeneratorSpec::Wheel { n } if n < 3 => bad("a wheel needs at least 3 rim vertices"),
        GeneratorSpec::Prism { n } if n < 3 => bad("a prism needs n >= 3"),
        GeneratorSpec::Cycle { n } if n < 3 => bad("a cycle needs n >= 3"),
        GeneratorSpec::Random3c { n, .. } if n < 4 => bad("random3c needs n >= 4"),
        GeneratorSpec::Wheel { n } => Ok(wheel(n)),
        GeneratorSpec::Prism { n } => Ok(prism(n)),
        GeneratorSpec::Cycle { n } => Ok(cycle(n)),
        GeneratorSpec::Platonic { solid } => Ok(platonic(solid)),
        GeneratorSpec::Random3c { n, seed } => Ok(random3c(n, seed)),
    }
}

fn ring(n: usize, radius: f64, phase: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = phase + TAU * i as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

/// Builds the embedding of a straight-line planar drawing: rotations are the
/// clockwise angular order and the outer face is the unbounded one.
pub fn from_positions(points: &[(f64, f64)], edges: &[(usize, usize)]) -> PlaneGraph {
    let mut nbrs: BTreeMap<VertexId, Vec<(f64, VertexId)>> = (0..points.len()).map(|i| (VertexId(i as u32), Vec::new())).collect();
    for &(a, b) in edges {
        for (x, y) in [(a, b), (b, a)] {
            let angle = (points[y].1 - points[x].1).atan2(points[y].0 - points[x].0);
            nbrs.get_mut(&VertexId(x as u32)).unwrap().push((-angle, VertexId(y as u32)));
        }
    }
    let rotation: BTreeMap<VertexId, Vec<VertexId>> = nbrs
        .into_iter()
        .map(|(v, mut l)| {
            l.sort_by(|a, b| a.0.total_cmp(&b.0));
            (v, l.into_iter().map(|(_, w)| w).collect())
        })
        .collect();
    let first = edges[0];
    let probe = PlaneGraph::new(rotation.clone(), (VertexId(first.0 as u32), VertexId(first.1 as u32))).expect("consistent rotations");
    let faces = probe.trace_faces().expect("straight-line drawing is planar");
    let area = |f: &Vec<Dart>| -> f64 {
        f.iter()
            .map(|&(a, b)| {
                let (p, q) = (points[a.0 as usize], points[b.0 as usize]);
                p.0 * q.1 - p.1 * q.0
            })
            .sum()
    };
    let outer = faces.iter().min_by(|a, b| area(a).total_cmp(&area(b))).unwrap();
    PlaneGraph::new(rotation, *outer.iter().min().unwrap()).expect("consistent rotations")
}

pub fn wheel(n: usize) -> PlaneGraph {
    let mut pts = vec![(0.0, 0.0)];
    pts.extend(ring(n, 1.0, 0.3));
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    edges.extend((1..=n).map(|i| (i, i % n + 1)));
    from_positions(&pts, &edges)
}

pub fn prism(n: usize) -> PlaneGraph {
    let mut pts = ring(n, 2.0, 0.3);
    pts.extend(ring(n, 1.0, 0.3));
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    from_positions(&pts, &edges)
}

pub fn cycle(n: usize) -> PlaneGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_positions(&ring(n, 1.0, 0.3), &edges)
}

fn dodecahedron() -> PlaneGraph {
    // Outer pentagon, middle decagon, inner pentagon.
    let mut pts = ring(5, 3.0, 0.0);
    pts.extend(ring(10, 2.0, 0.0));
    pts.extend(ring(5, 1.0, TAU / 10.0));
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    from_positions(&pts, &edges)
}

/// The dual: one vertex per face, adjacent across each edge.
pub fn dual(g: &PlaneGraph) -> PlaneGraph {
    let faces = g.trace_faces().expect("planar embedding");
    let mut face_of: BTreeMap<Dart, usize> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &d in f {
            face_of.insert(d, i);
        }
    }
    let rotation: BTreeMap<VertexId, Vec<VertexId>> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let l = f.iter().rev().map(|&(a, b)| VertexId(face_of[&(b, a)] as u32)).collect();
            (VertexId(i as u32), l)
        })
        .collect();
    let first = rotation[&VertexId(0)][0];
    PlaneGraph::new_checked(rotation, (VertexId(0), first)).expect("dual of a 3-connected plane graph is simple")
}

pub fn platonic(solid: Platonic) -> PlaneGraph {
    match solid {
        Platonic::Tetra => wheel(3),
        Platonic::Cube => prism(4),
        Platonic::Octa => dual(&prism(4)),
        Platonic::Dodeca => dodecahedron(),
        Platonic::Icosa => dual(&dodecahedron()),
    }
}

/// Grows a 3-connected plane graph from `K4` by two moves that preserve
/// 3-connectivity: adding a vertex inside a face joined to at least three of
/// its corners, and splitting a vertex of degree at least 4 into two adjacent
/// vertices of degree at least 3. Deterministic in `seed`.
pub fn random3c(n: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = wheel(3);
    while g.vertex_count() < n {
        let fresh = VertexId(g.vertex_count() as u32);
        let candidates: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) >= 4).collect();
        g = if !candidates.is_empty() && rng.gen_bool(0.5) {
            let v = candidates[rng.gen_range(0..candidates.len())];
            split_vertex(&g, v, fresh, &mut rng)
        } else {
            let faces = g.trace_faces().expect("planar");
            let face = &faces[rng.gen_range(0..faces.len())];
            stellate_face(&g, face, fresh, &mut rng)
        };
    }
    g
}

fn stellate_face(g: &PlaneGraph, face: &[Dart], x: VertexId, rng: &mut ChaCha8Rng) -> PlaneGraph {
    let k = face.len();
    let want = rng.gen_range(3..=k);
    let mut picks: Vec<usize> = (0..k).collect();
    while picks.len() > want {
        picks.remove(rng.gen_range(0..picks.len()));
    }
    let mut rotation = g.rotations().clone();
    let corners: Vec<VertexId> = picks.iter().map(|&i| face[i].0).collect();
    for &i in &picks {
        // Arriving at c along the face from `prev`, the new vertex is the next neighbour clockwise.
        let (prev, c) = face[(i + k - 1) % k];
        let l = rotation.get_mut(&c).unwrap();
        let at = l.iter().position(|&w| w == prev).unwrap();
        l.insert(at + 1, x);
    }
    rotation.insert(x, corners.into_iter().rev().collect());
    PlaneGraph::new_checked(rotation, g.outer_dart()).expect("stellating a face keeps the embedding planar")
}

fn split_vertex(g: &PlaneGraph, v: VertexId, x: VertexId, rng: &mut ChaCha8Rng) -> PlaneGraph {
    let rot = g.rotation(v).to_vec();
    let d = rot.len();
    let start = rng.gen_range(0..d);
    let len = rng.gen_range(2..=d - 2);
    let moved: Vec<VertexId> = (0..len).map(|i| rot[(start + i) % d]).collect();
    let kept: Vec<VertexId> = (len..d).map(|i| rot[(start + i) % d]).collect();
    let mut rotation = g.rotations().clone();
    let mut v_list = kept;
    v_list.push(x);
    let mut x_list = moved.clone();
    x_list.push(v);
    rotation.insert(v, v_list);
    rotation.insert(x, x_list);
    for w in &moved {
        for y in rotation.get_mut(w).unwrap().iter_mut() {
            if *y == v {
                *y = x;
            }
        }
    }
    let (a, b) = g.outer_dart();
    let rename = |y: VertexId, other: VertexId| if y == v && moved.contains(&other) { x } else { y };
    let outer = (rename(a, b), rename(b, a));
    PlaneGraph::new_checked(rotation, outer).expect("splitting a vertex keeps the embedding planar")
}
