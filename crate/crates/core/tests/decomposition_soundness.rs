mod common;

use common::decomposition_sound;
use greedydraw::decomposition::{build_tree, classify, decompose_case_a, decompose_case_b, validate_scg, Case, DecompositionError, NodeKind};
use greedydraw::io::{cycle, generate, prepare_triple, prism, GeneratorSpec, Platonic};
use greedydraw::plane_graph::{edge, Subgraph};

fn corpus() -> Vec<GeneratorSpec> {
    let mut out: Vec<GeneratorSpec> = (4..=12).map(|n| GeneratorSpec::Wheel { n }).collect();
    out.extend((3..=8).map(|n| GeneratorSpec::Prism { n }));
    out.extend([Platonic::Tetra, Platonic::Cube, Platonic::Octa, Platonic::Dodeca, Platonic::Icosa].map(|solid| GeneratorSpec::Platonic { solid }));
    for n in [10, 20, 40] {
        out.extend((0..5).map(|seed| GeneratorSpec::Random3c { n, seed }));
    }
    out
}

#[test]
fn every_corpus_tree_is_sound() {
    for spec in corpus() {
        let t = prepare_triple(&generate(&spec).unwrap()).unwrap();
        let tree = build_tree(&t).unwrap();
        if let Err(e) = decomposition_sound(&tree) {
            panic!("{spec:?}: {e}");
        }
    }
}

#[test]
fn cycle_is_a_single_leaf() {
    let g = cycle(6);
    let w = g.outer_walk();
    let tree = build_tree(&validate_scg(g, w[0], w[1]).unwrap()).unwrap();
    assert_eq!(tree.kind, NodeKind::Cycle);
    assert_eq!(tree.node_count(), 1);
}

#[test]
fn k4_is_case_a_with_one_layer_and_some_depth() {
    let t = prepare_triple(&generate(&GeneratorSpec::Platonic { solid: Platonic::Tetra }).unwrap()).unwrap();
    assert_eq!(decompose_case_a(&t).unwrap().k(), 1);
    assert!(build_tree(&t).unwrap().depth() >= 2);
    assert!(matches!(decompose_case_b(&t), Err(DecompositionError::Precondition { .. })));
}

#[test]
fn dodecahedron_has_several_internal_nodes() {
    let t = prepare_triple(&generate(&GeneratorSpec::Platonic { solid: Platonic::Dodeca }).unwrap()).unwrap();
    let tree = build_tree(&t).unwrap();
    let internal = tree.nodes().iter().filter(|n| !n.children.is_empty()).count();
    assert!(internal > 1);
    assert!(tree
        .nodes()
        .iter()
        .filter(|n| n.children.is_empty())
        .all(|n| matches!(n.case(), Case::Trivial | Case::Cycle)));
}

#[test]
fn prism_minus_an_edge_can_end_in_a_single_edge_bridge() {
    let g = prism(3);
    let mut found = false;
    for e in g.edges() {
        let sub = Subgraph {
            vertices: g.vertices().collect(),
            edges: g.edges().into_iter().filter(|&f| f != edge(e.0, e.1)).collect(),
        };
        let Ok(h) = g.restrict(&sub) else { continue };
        let outer = h.outer_walk();
        for &u in &outer {
            for &v in &outer {
                let Ok(t) = validate_scg(h.clone(), u, v) else { continue };
                if u == v || classify(&t) != Case::CaseB {
                    continue;
                }
                let d = decompose_case_b(&t).unwrap();
                assert!(decomposition_sound(&build_tree(&t).unwrap()).is_ok());
                if d.chain.layers.len() == 1 && d.chain.layers[0].graph.edge_count() == 1 {
                    assert_eq!(d.trivial_bridges[0], d.y1);
                    found = true;
                }
            }
        }
    }
    assert!(found);
}
