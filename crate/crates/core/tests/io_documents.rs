use greedydraw::decomposition::validate_scg;
use greedydraw::io::{
    cycle, from_positions, generate, parse_drawing, parse_graph, platonic, prepare_triple, random3c, render_svg, wheel, DrawingDocument, GeneratorSpec,
    GraphDocument, InputError, Platonic, PrepareError, SvgOptions,
};
use greedydraw::layout::{draw, DEFAULT_PRECISION};
use greedydraw::plane_graph::VertexId;
use greedydraw::verifier::verify;
use greedydraw::Real;

fn field_path(e: InputError) -> String {
    match e {
        InputError::Field { path, .. } => path,
        other => panic!("expected a field error, got {other}"),
    }
}

#[test]
fn graph_documents_round_trip() {
    for g in [wheel(5), platonic(Platonic::Icosa), random3c(18, 4)] {
        let text = serde_json::to_string_pretty(&GraphDocument::from_graph(&g)).unwrap();
        assert_eq!(parse_graph(&text).unwrap().to_graph().unwrap(), g);
    }
}

#[test]
fn drawing_documents_round_trip_bit_for_bit() {
    for spec in [
        GeneratorSpec::Platonic { solid: Platonic::Tetra },
        GeneratorSpec::Prism { n: 4 },
        GeneratorSpec::Random3c { n: 12, seed: 5 },
    ] {
        let t = prepare_triple(&generate(&spec).unwrap()).unwrap();
        let d = draw(&t, &Real::from_f64(0.5), &Real::from_f64(1.5), DEFAULT_PRECISION).unwrap();
        let text = serde_json::to_string(&DrawingDocument::from_drawing(&d)).unwrap();
        let back = parse_drawing(&text).unwrap().to_drawing().unwrap();
        assert_eq!(back.positions, d.positions);
        assert_eq!(back.provenance, d.provenance);
        assert_eq!(back.witnesses, d.witnesses);
        assert_eq!((&back.alpha, &back.delta, back.precision), (&d.alpha, &d.delta, d.precision));
        assert_eq!((back.u, back.v, &back.tau, &back.beta), (d.u, d.v, &d.tau, &d.beta));
        assert_eq!(back.graph, d.graph);
        assert!(verify(&back).all_pass());
    }
}

#[test]
fn malformed_input_names_the_field() {
    let good = serde_json::to_value(GraphDocument::from_graph(&wheel(4))).unwrap();

    let mut bad = good.clone();
    bad["rotations"]["1"][0] = serde_json::json!("two");
    assert_eq!(field_path(parse_graph(&bad.to_string()).unwrap_err()), "rotations.1[0]");

    let mut bad = good.clone();
    bad.as_object_mut().unwrap().remove("outer_dart");
    assert_eq!(field_path(parse_graph(&bad.to_string()).unwrap_err()), ".");

    let mut bad = good.clone();
    bad["version"] = serde_json::json!("greedydraw-graph/0");
    assert_eq!(field_path(parse_graph(&bad.to_string()).unwrap().to_graph().unwrap_err()), "version");

    let mut bad = good;
    bad["rotations"]["9"] = serde_json::json!([0]);
    assert_eq!(field_path(parse_graph(&bad.to_string()).unwrap().to_graph().unwrap_err()), "rotations.9");

    let t = prepare_triple(&wheel(4)).unwrap();
    let d = draw(&t, &Real::from_f64(0.5), &Real::zero(), DEFAULT_PRECISION).unwrap();
    let mut doc = serde_json::to_value(DrawingDocument::from_drawing(&d)).unwrap();
    doc["positions"]["2"]["x"] = serde_json::json!("1.2.3");
    let parsed = parse_drawing(&doc.to_string()).unwrap();
    assert_eq!(field_path(parsed.to_drawing().unwrap_err()), "positions.2.x");

    assert!(parse_graph("{ not json").is_err());
}

fn count(svg: &str, tag: &str) -> usize {
    svg.matches(&format!("<{tag} ")).count()
}

#[test]
fn svg_has_one_line_per_edge_and_one_circle_per_vertex() {
    let g = from_positions(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
    let d = draw(
        &validate_scg(g, VertexId(0), VertexId(1)).unwrap(),
        &Real::from_f64(0.5),
        &Real::zero(),
        DEFAULT_PRECISION,
    )
    .unwrap();
    let svg = render_svg(&d, &SvgOptions::default());
    assert_eq!((count(&svg, "line"), count(&svg, "circle")), (1, 2));

    let w = cycle(5).outer_walk();
    let t = validate_scg(cycle(5), w[0], w[1]).unwrap();
    let d = draw(&t, &Real::from_f64(0.5), &Real::zero(), DEFAULT_PRECISION).unwrap();
    let svg = render_svg(&d, &SvgOptions::default());
    assert_eq!((count(&svg, "line"), count(&svg, "circle")), (5, 5));
    assert_eq!(svg.matches("#c0392b").count(), 1, "exactly the tau edge is highlighted");

    let t = prepare_triple(&platonic(Platonic::Tetra)).unwrap();
    let d = draw(&t, &Real::from_f64(0.5), &Real::zero(), DEFAULT_PRECISION).unwrap();
    let svg = render_svg(
        &d,
        &SvgOptions {
            show_axis: true,
            ..SvgOptions::default()
        },
    );
    assert_eq!((count(&svg, "line"), count(&svg, "circle")), (7, 4));
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn prepare_triple_checks_connectivity() {
    let g = platonic(Platonic::Tetra);
    let w = g.outer_walk();
    let i = (0..w.len()).min_by_key(|&i| w[i]).unwrap();
    let k4 = prepare_triple(&g).unwrap();
    assert_eq!((k4.u, k4.v), (w[i], w[(i + 1) % w.len()]));
    assert!(matches!(prepare_triple(&cycle(4)), Err(PrepareError::Not3Connected { cut }) if cut.len() == 2));
    assert!(matches!(prepare_triple(&cycle(3)), Err(PrepareError::TooSmall)));
    prepare_triple(&platonic(Platonic::Octa)).unwrap();
}

#[test]
fn random_generator_is_reproducible() {
    let a = random3c(30, 7);
    assert_eq!(a, random3c(30, 7));
    assert_eq!(a.vertex_count(), 30);
    prepare_triple(&a).unwrap();
    let doc = |g| serde_json::to_string(&GraphDocument::from_graph(g)).unwrap();
    assert_eq!(doc(&a), doc(&generate(&GeneratorSpec::Random3c { n: 30, seed: 7 }).unwrap()));
}
