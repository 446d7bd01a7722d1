use std::fmt::Write;

use crate::layout::Drawing;
use crate::plane_graph::edge;

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Output width in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub show_paths: bool,
    pub show_axis: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 800.0,
            show_paths: true,
            show_axis: false,
        }
    }
}

/// Twelve significant digits.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let decimals = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Renders the drawing for display. Coordinates are flipped so that y grows upwards.
pub fn render_svg(d: &Drawing, opts: &SvgOptions) -> String {
    let pts: Vec<(u32, f64, f64)> = d.positions.iter().map(|(v, p)| (v.0, p.x.to_f64(), -p.y.to_f64())).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(_, x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-300);
    let (w, h) = ((x1 - x0).max(span * 0.05), (y1 - y0).max(span * 0.05));
    let (mx, my) = (w * 0.05, h * 0.05);
    let (vx, vy, vw, vh) = (x0 - mx, y0 - my, w + 2.0 * mx, h + 2.0 * my);
    let r = span * 0.012;
    let stroke = span * 0.004;
    let height = opts.width * vh / vw;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(opts.width),
        num(height),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    if opts.show_axis {
        let y = -d.positions[&d.u].y.to_f64();
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
            num(vx),
            num(y),
            num(vx + vw),
            num(y),
            num(stroke / 2.0),
            num(stroke * 4.0),
            num(stroke * 4.0)
        );
    }
    let highlighted = |a, b| {
        let e = edge(a, b);
        let on = |p: &[crate::plane_graph::VertexId]| p.windows(2).any(|w| edge(w[0], w[1]) == e);
        if !opts.show_paths {
            None
        } else if on(&d.tau) {
            Some("#c0392b")
        } else if on(&d.beta) {
            Some("#2471a3")
        } else {
            None
        }
    };
    for (a, b) in d.graph.edges() {
        let (pa, pb) = (&d.positions[&a], &d.positions[&b]);
        let color = highlighted(a, b).unwrap_or("#333");
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            num(pa.x.to_f64()),
            num(-pa.y.to_f64()),
            num(pb.x.to_f64()),
            num(-pb.y.to_f64()),
            color,
            num(stroke)
        );
    }
    for &(id, x, y) in &pts {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#fff" stroke="#000" stroke-width="{}"/>"##,
            num(x),
            num(y),
            num(r),
            num(stroke / 2.0)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            num(x),
            num(y),
            num(r * 1.2),
            id
        );
    }
    s.push_str("</svg>\n");
    s
}
