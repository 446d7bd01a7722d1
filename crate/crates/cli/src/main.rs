use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use greedydraw::decomposition::{build_tree, validate_scg, ScgTriple};
use greedydraw::io::{
    generate, parse_drawing, parse_graph, prepare_triple, render_svg, DrawingDocument, GeneratorSpec, GraphDocument, Platonic, SvgOptions, TreeDoc,
};
use greedydraw::layout::{LayoutError, DEFAULT_PRECISION};
use greedydraw::pipeline::{draw_escalating, precision_cap, PipelineError};
use greedydraw::verifier::{check_perturbation, perturbation_radius, verify};
use greedydraw::{PlaneGraph, Real};

#[derive(Parser)]
#[command(name = "greedydraw", version, about = "Planar greedy drawings of 3-connected planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a graph document and write the drawing document.
    Draw {
        /// Graph document; standard input when absent or `-`.
        input: Option<PathBuf>,
        /// Angle parameter in radians, 0 < alpha < pi/4.
        #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
        alpha: String,
        /// How far to move `u` to the left.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta: String,
        /// Starting precision in bits; doubled on demand up to GREEDYDRAW_PRECISION_CAP.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a drawing document and write a report.
    Verify {
        /// Drawing document; standard input when absent or `-`.
        drawing: Option<PathBuf>,
        /// Graph document the drawing must embed.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 32)]
        perturb_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the decomposition tree of a graph document.
    Decompose {
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a graph document.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// tetra, cube, octa, dodeca or icosa.
        #[arg(long)]
        solid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Wheel,
    Prism,
    Cycle,
    Platonic,
    Random3c,
}

enum Failure {
    /// Verification ran and something failed; the report has been written.
    Verification,
    Input(String),
    Exhausted,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.write_all(b"\n")?;
            Ok(())
        }
    }
}

macro_rules! to_json {
    ($value:expr) => {
        serde_json::to_string_pretty($value).expect("documents serialize")
    };
}

fn load_graph(text: &str) -> Result<(GraphDocument, PlaneGraph), Failure> {
    let doc = parse_graph(text).map_err(|e| Failure::Input(format!("graph document: {e}")))?;
    let g = doc.to_graph().map_err(|e| Failure::Input(format!("graph document: {e}")))?;
    Ok((doc, g))
}

fn triple_of(doc: &GraphDocument, g: PlaneGraph) -> Result<ScgTriple, Failure> {
    match doc.designated_pair() {
        Some((u, v)) => validate_scg(g, u, v).map_err(|e| Failure::Input(format!("designated pair ({u}, {v}): {e}"))),
        None => prepare_triple(&g).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn parse_real(name: &str, text: &str, prec: u32) -> Result<Real, Failure> {
    Real::parse_decimal(text, prec).map_err(|e| Failure::Input(format!("--{name}: {e}")))
}

fn run_draw(input: Option<&Path>, alpha: &str, delta: &str, precision: u32, out: Option<&Path>, svg: Option<&Path>) -> Result<(), Failure> {
    let prec = precision.max(16);
    let alpha = parse_real("alpha", alpha, prec)?;
    let delta = parse_real("delta", delta, prec)?;
    let (doc, g) = load_graph(&read_input(input)?)?;
    let t = triple_of(&doc, g)?;
    let cap = precision_cap().max(prec);
    let (d, attempts) = match draw_escalating(&t, &alpha, &delta, prec, cap) {
        Ok(r) => r,
        Err(PipelineError::Exhausted(e)) => {
            eprintln!("greedydraw: {e}");
            let report = serde_json::json!({ "status": "precision_exhausted", "cap": e.cap, "last": e.last, "attempts": e.attempts });
            emit(out, &to_json!(&report))?;
            return Err(Failure::Exhausted);
        }
        Err(PipelineError::Layout(e @ (LayoutError::BadAlpha(_) | LayoutError::NegativeDelta(_)))) => return Err(Failure::Input(e.to_string())),
        Err(PipelineError::Layout(e)) => return Err(Failure::Input(format!("cannot draw this graph: {e}"))),
    };
    if attempts.len() > 1 {
        eprintln!("greedydraw: needed {} bits", d.precision);
    }
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&d, &SvgOptions::default())).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    emit(out, &to_json!(&DrawingDocument::from_drawing(&d)))
}

fn run_verify(drawing: Option<&Path>, graph: Option<&Path>, samples: usize, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let doc = parse_drawing(&read_input(drawing)?).map_err(|e| Failure::Input(format!("drawing document: {e}")))?;
    let d = doc.to_drawing().map_err(|e| Failure::Input(format!("drawing document: {e}")))?;
    if let Some(path) = graph {
        let (_, g) = load_graph(&read_input(Some(path))?)?;
        if g != d.graph {
            return Err(Failure::Input(format!("{} is not the graph embedded in the drawing", path.display())));
        }
    }
    let mut report = verify(&d);
    if samples > 0 {
        if let Some(radius) = perturbation_radius(&d) {
            report.perturbation = Some(check_perturbation(&d, samples, seed, &radius));
        }
    }
    let pass = report.all_pass();
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["all_pass"] = pass.into();
    emit(out, &to_json!(&value))?;
    if pass {
        Ok(())
    } else {
        eprintln!("greedydraw: verification failed");
        Err(Failure::Verification)
    }
}

fn run_decompose(input: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    let (doc, g) = load_graph(&read_input(input)?)?;
    let t = triple_of(&doc, g)?;
    let tree = build_tree(&t).map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, &to_json!(&TreeDoc::from_tree(&tree)))
}

fn run_gen(family: Family, n: Option<usize>, seed: u64, solid: Option<&str>, out: Option<&Path>) -> Result<(), Failure> {
    let need_n = || n.ok_or_else(|| Failure::Input("--n is required for this family".into()));
    let spec = match family {
        Family::Wheel => GeneratorSpec::Wheel { n: need_n()? },
        Family::Prism => GeneratorSpec::Prism { n: need_n()? },
        Family::Cycle => GeneratorSpec::Cycle { n: need_n()? },
        Family::Random3c => GeneratorSpec::Random3c { n: need_n()?, seed },
        Family::Platonic => {
            let name = solid.ok_or_else(|| Failure::Input("--solid is required for platonic".into()))?;
            GeneratorSpec::Platonic {
                solid: name.parse::<Platonic>().map_err(|e| Failure::Input(e.to_string()))?,
            }
        }
    };
    let g = generate(&spec).map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, &to_json!(&GraphDocument::from_graph(&g)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Draw {
            input,
            alpha,
            delta,
            precision,
            out,
            svg,
        } => run_draw(input.as_deref(), alpha, delta, *precision, out.as_deref(), svg.as_deref()),
        Command::Verify {
            drawing,
            graph,
            perturb_samples,
            seed,
            out,
        } => run_verify(drawing.as_deref(), graph.as_deref(), *perturb_samples, *seed, out.as_deref()),
        Command::Decompose { input, out } => run_decompose(input.as_deref(), out.as_deref()),
        Command::Gen { family, n, seed, solid, out } => run_gen(*family, *n, *seed, solid.as_deref(), out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("greedydraw: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exhausted) => ExitCode::from(3),
    }
}
