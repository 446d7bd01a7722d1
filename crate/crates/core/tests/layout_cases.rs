use greedydraw::arith::{pi, tan};
use greedydraw::decomposition::{build_tree, classify, validate_scg, Case, NodeKind, ScgTriple};
use greedydraw::geometry::Point;
use greedydraw::io::{cycle, from_positions, generate, platonic, prepare_triple, wheel, GeneratorSpec, Platonic};
use greedydraw::layout::{draw, draw_tree, shift_u_left, transform, Drawing, ParamRule, DEFAULT_PRECISION};
use greedydraw::plane_graph::{PlaneGraph, VertexId};
use greedydraw::verifier::{check_greedy, check_parameter_cascade, verify};
use greedydraw::Real;
use proptest::prelude::*;

const P: u32 = DEFAULT_PRECISION;

/// `pi / q` at the working precision.
fn pi_over(q: i64) -> Real {
    pi(P + 32).mid(P + 32).div(&Real::from_i64(q), P, greedydraw::Rounding::Nearest)
}

fn outer_pair(g: PlaneGraph) -> ScgTriple {
    let w = g.outer_walk();
    validate_scg(g, w[0], w[1]).unwrap()
}

fn at(d: &Drawing, x: VertexId) -> (f64, f64) {
    d.positions[&x].to_f64()
}

fn assert_verified(d: &Drawing) {
    let r = verify(d);
    assert!(r.all_pass(), "{}", serde_json::to_string_pretty(&r).unwrap());
}

#[test]
fn triangle_apex_has_base_angles_alpha_half() {
    let t = outer_pair(cycle(3));
    let d = draw(&t, &pi_over(6), &Real::zero(), P).unwrap();
    let b = t.beta();
    assert_eq!(at(&d, b[0]), (0.0, 0.0));
    assert_eq!(at(&d, b[2]), (1.0, 0.0));
    let (x, y) = at(&d, b[1]);
    // tan(pi/12) = 2 - sqrt(3)
    assert!((x - 0.5).abs() < 1e-15 && (y + 0.5 * (2.0 - 3f64.sqrt())).abs() < 1e-15, "{x} {y}");
    let angle = |o: (f64, f64), p: (f64, f64), q: (f64, f64)| {
        let (a, c) = ((p.0 - o.0, p.1 - o.1), (q.0 - o.0, q.1 - o.1));
        ((a.0 * c.0 + a.1 * c.1) / (a.0.hypot(a.1) * c.0.hypot(c.1))).acos()
    };
    let pi12 = std::f64::consts::PI / 12.0;
    assert!((angle((0.0, 0.0), (x, y), (1.0, 0.0)) - pi12).abs() < 1e-12);
    assert!((angle((1.0, 0.0), (x, y), (0.0, 0.0)) - pi12).abs() < 1e-12);
    assert_verified(&d);
}

#[test]
fn square_places_third_vertex_at_midpoint() {
    let t = outer_pair(cycle(4));
    let d = draw(&t, &pi_over(6), &Real::zero(), P).unwrap();
    let b = t.beta();
    let mid = d.positions[&b[1]].add(&d.positions[&b[3]]).scale(&Real::one().half());
    let off = mid.sub(&d.positions[&b[2]]).norm2();
    assert!(off <= Real::pow2(-2 * (P as i64 - 2)), "{}", off.to_f64());
    assert_verified(&d);
}

#[test]
fn moving_u_keeps_properties() {
    let t = outer_pair(cycle(5));
    let base = draw(&t, &pi_over(6), &Real::zero(), P).unwrap();
    let d = draw(&t, &pi_over(6), &Real::from_i64(2), P).unwrap();
    for (x, p) in &d.positions {
        if *x == t.u {
            assert_eq!(p.x, &base.positions[x].x - &Real::from_i64(2));
            assert_eq!(p.y, base.positions[x].y);
        } else {
            assert_eq!(p, &base.positions[x]);
        }
    }
    assert_verified(&d);
}

#[test]
fn shift_by_zero_is_identity_and_by_one_moves_only_u() {
    let t = outer_pair(cycle(3));
    let d = draw(&t, &Real::one().half(), &Real::zero(), P).unwrap();
    assert_eq!(shift_u_left(&d, &Real::zero()).positions, d.positions);
    let moved = shift_u_left(&d, &Real::one());
    assert_eq!(at(&moved, t.u), (-1.0, 0.0));
    assert_eq!(moved.delta, Real::one());
    for x in t.graph.vertices().filter(|&x| x != t.u) {
        assert_eq!(moved.positions[&x], d.positions[&x]);
    }
}

#[test]
fn k4_and_c4_pass_the_verifier() {
    let k4 = prepare_triple(&platonic(Platonic::Tetra)).unwrap();
    assert_eq!(classify(&k4), Case::CaseA);
    let d = draw(&k4, &pi_over(5), &Real::zero(), P).unwrap();
    assert_verified(&d);
    assert_eq!(d.provenance[1].alpha, pi_over(5).half());
    assert_eq!(d.provenance[1].rule, ParamRule::Half);

    let c4 = outer_pair(cycle(4));
    assert_verified(&draw(&c4, &pi_over(6), &Real::zero(), P).unwrap());
}

#[test]
fn trivial_edge_is_a_unit_horizontal_segment() {
    let g = PlaneGraph::new(
        [(VertexId(0), vec![VertexId(1)]), (VertexId(1), vec![VertexId(0)])].into(),
        (VertexId(0), VertexId(1)),
    )
    .unwrap();
    let t = validate_scg(g, VertexId(0), VertexId(1)).unwrap();
    let d = draw(&t, &Real::one().half(), &Real::zero(), P).unwrap();
    assert_eq!(at(&d, VertexId(0)), (0.0, 0.0));
    assert_eq!(at(&d, VertexId(1)), (1.0, 0.0));
    assert_verified(&d);
}

/// Triangles hanging from `u` to `v` in a chain of `k`, closed by the edge `uv` on top.
fn triangle_chain(k: usize) -> ScgTriple {
    let joint = |j: usize| (2.0 * j as f64, if j == 0 || j == k { 0.0 } else { -2.0 });
    let mut pts = vec![joint(0)];
    let mut edges = Vec::new();
    for i in 1..=k {
        let (a, b) = (joint(i - 1), joint(i));
        pts.push(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0 - 1.0));
        pts.push(b);
        let (prev, apex, next) = (2 * i - 2, 2 * i - 1, 2 * i);
        edges.extend([(prev, apex), (apex, next), (prev, next)]);
    }
    edges.push((0, 2 * k));
    let g = from_positions(&pts, &edges);
    let (u, v) = (VertexId(0), VertexId(2 * k as u32));
    validate_scg(g.clone(), u, v).or_else(|_| validate_scg(g, v, u)).unwrap()
}

#[test]
fn chain_joints_line_up_and_v_lands_on_the_axis() {
    for k in [2, 3, 4] {
        let t = triangle_chain(k);
        assert_eq!(classify(&t), Case::CaseA);
        let tree = build_tree(&t).unwrap();
        let NodeKind::CaseA { shared_vertices } = &tree.kind else { panic!() };
        assert_eq!(shared_vertices.len(), k - 1);
        let alpha = Real::one().half();
        let d = draw(&t, &alpha, &Real::zero(), P).unwrap();
        assert!(d.positions[&t.v].y.is_zero());
        let joints: Vec<&Point> = shared_vertices.iter().chain([&t.v]).map(|x| &d.positions[x]).collect();
        let run = joints[joints.len() - 1].sub(joints[0]);
        for j in &joints[1..] {
            let off = run.cross(&j.sub(joints[0]));
            assert!(off.abs() < Real::pow2(-(P as i64) + 16), "joint off the line by {}", off.to_f64());
        }
        let want = tan(&alpha.half(), P).mid(P).to_f64();
        let (rx, ry) = run.to_f64();
        assert!((ry / rx - want).abs() < 1e-12, "slope {} vs {want}", ry / rx);
        assert_verified(&d);
    }
}

fn case_b_nodes(t: &ScgTriple) -> Vec<greedydraw::decomposition::DecompositionTree> {
    build_tree(t)
        .unwrap()
        .nodes()
        .into_iter()
        .filter(|n| n.case() == Case::CaseB)
        .cloned()
        .collect()
}

#[test]
fn wheel_with_far_ends_is_case_b() {
    let g = wheel(5);
    let w = g.outer_walk();
    let t = validate_scg(g, w[0], w[2]).unwrap();
    assert_eq!(classify(&t), Case::CaseB);
    let tree = build_tree(&t).unwrap();
    let NodeKind::CaseB { y1, .. } = tree.kind else { panic!() };
    assert_eq!(y1, w[1]);
    let d = draw(&t, &Real::one().half(), &Real::zero(), P).unwrap();
    assert!(d.positions[&t.v].x > d.positions[&y1].x);
    assert_verified(&d);
}

#[test]
fn case_b_geometry_on_corpus_nodes() {
    let alpha = Real::one().half();
    let mut seen = 0;
    for spec in [
        GeneratorSpec::Wheel { n: 7 },
        GeneratorSpec::Prism { n: 5 },
        GeneratorSpec::Platonic { solid: Platonic::Icosa },
        GeneratorSpec::Platonic { solid: Platonic::Dodeca },
        GeneratorSpec::Random3c { n: 15, seed: 1 },
        GeneratorSpec::Random3c { n: 20, seed: 3 },
    ] {
        let t = prepare_triple(&generate(&spec).unwrap()).unwrap();
        for node in case_b_nodes(&t) {
            seen += 1;
            let NodeKind::CaseB { y1, y_ell, .. } = node.kind else { unreachable!() };
            let d = draw_tree(&node, &alpha, &Real::zero(), P).unwrap();
            let pv = &d.positions[&node.triple.v];
            assert!(pv.x > d.positions[&y1].x, "{spec:?}: v is not right of y1");
            let root = &d.provenance[0].budget;
            let beta = root.beta.as_ref().unwrap();
            assert!(beta.mul_pow2(2) < alpha);
            if let Some(rho) = &root.rho {
                for layer in &node.children[1..] {
                    for x in layer.triple.graph.vertices().filter(|&x| x != y_ell) {
                        assert!(d.positions[&x].dist2(pv) < rho.square(), "{spec:?}: {x} is outside the disk around v");
                    }
                }
            }
            assert!(check_parameter_cascade(&d).is_pass());
        }
    }
    assert!(seen > 5, "only {seen} Case B nodes");
}

#[test]
fn bad_parameters_are_rejected() {
    let t = outer_pair(cycle(3));
    assert!(draw(&t, &Real::from_f64(0.8), &Real::zero(), P).is_err());
    assert!(draw(&t, &Real::zero(), &Real::zero(), P).is_err());
    assert!(draw(&t, &Real::one().half(), &Real::from_i64(-1), P).is_err());
}

#[test]
fn transform_identity_and_quarter_turn() {
    let t = outer_pair(cycle(3));
    let d = draw(&t, &Real::one().half(), &Real::zero(), P).unwrap();
    let same = transform(&d, &Real::one(), &Real::zero(), &Point::origin());
    assert_eq!(same.positions, d.positions);

    let g = PlaneGraph::new(
        [(VertexId(0), vec![VertexId(1)]), (VertexId(1), vec![VertexId(0)])].into(),
        (VertexId(0), VertexId(1)),
    )
    .unwrap();
    let e = draw(&validate_scg(g, VertexId(0), VertexId(1)).unwrap(), &Real::one().half(), &Real::zero(), P).unwrap();
    let r = transform(&e, &Real::one(), &pi_over(2), &Point::origin());
    let (x, y) = at(&r, VertexId(1));
    assert!(x.abs() < 1e-60 && (y - 1.0).abs() < 1e-60, "{x} {y}");
}

fn small_drawings() -> &'static [Drawing] {
    static CELL: std::sync::OnceLock<Vec<Drawing>> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        [
            GeneratorSpec::Platonic { solid: Platonic::Octa },
            GeneratorSpec::Wheel { n: 6 },
            GeneratorSpec::Random3c { n: 10, seed: 4 },
        ]
        .iter()
        .map(|s| draw(&prepare_triple(&generate(s).unwrap()).unwrap(), &Real::one().half(), &Real::zero(), P).unwrap())
        .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn greedy_survives_similarity_transforms(which in 0usize..3, scale in 0.01f64..100.0, angle in -3.2f64..3.2, tx in -50.0f64..50.0, ty in -50.0f64..50.0) {
        let d = &small_drawings()[which];
        let moved = transform(d, &Real::from_f64(scale), &Real::from_f64(angle), &Point::from_f64(tx, ty));
        prop_assert!(check_greedy(&moved.positions, &moved.graph).is_pass());
    }
}
