//! The recursive drawing construction.
//!
//! Every node is drawn in its own frame with `u` at the origin and `v` on the
//! positive x-axis. Children are drawn first and then scaled, rotated and
//! translated into place. All output coordinates are rounded to the working
//! precision; every inequality the construction relies on is then re-checked
//! on the rounded values, and a failure is reported as
//! [`LayoutError::PrecisionExhausted`] so the caller can retry with more bits.

mod eps;
mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{atan, pi, sin_cos, tan, Real, Rounding};
use crate::decomposition::{build_tree, Case, DecompositionError, DecompositionTree, NodeKind, ScgTriple};
use crate::geometry::{slope_in, Certainty, Point, SlopeRange};
use crate::plane_graph::{PlaneGraph, VertexId};

pub use eps::{eps_star, eps_star_along, DegenerateDrawing, PerturbationError};
pub use witness::Witnesses;

pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("alpha must satisfy 0 < alpha < pi/4, got {0}")]
    BadAlpha(String),
    #[error("delta must be non-negative, got {0}")]
    NegativeDelta(String),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("{precision} bits are not enough at node {node}: {reason}")]
    PrecisionExhausted { precision: u32, node: usize, reason: String },
}

/// How a node's angle parameter was derived from its parent's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamRule {
    Root,
    /// `α/2`
    Half,
    /// `α/3`, rounded down
    Third,
    /// `β/2` where `β` is the parent's wedge angle
    HalfBeta,
}

impl fmt::Display for ParamRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParamRule::Root => "root",
            ParamRule::Half => "alpha/2",
            ParamRule::Third => "alpha/3",
            ParamRule::HalfBeta => "beta/2",
        };
        f.write_str(s)
    }
}

/// Quantities computed at one node. Absent entries do not apply to the node's case.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayoutBudget {
    pub eps_star: Option<Real>,
    /// Smallest depth below the x-axis of a vertex of the first child.
    pub y_depth: Option<Real>,
    pub eps: Option<Real>,
    /// `tan φ`
    pub tan_phi: Option<Real>,
    pub beta: Option<Real>,
    pub rho: Option<Real>,
    pub d_star: Option<Real>,
    pub alpha_prime: Option<Real>,
    pub d_y1v: Option<Real>,
    pub delta: Option<Real>,
}

impl LayoutBudget {
    pub fn entries(&self) -> Vec<(&'static str, &Real)> {
        let all = [
            ("eps_star", &self.eps_star),
            ("y_depth", &self.y_depth),
            ("eps", &self.eps),
            ("tan_phi", &self.tan_phi),
            ("beta", &self.beta),
            ("rho", &self.rho),
            ("d_star", &self.d_star),
            ("alpha_prime", &self.alpha_prime),
            ("d_y1v", &self.d_y1v),
            ("delta", &self.delta),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_ref().map(|v| (k, v))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    pub parent: Option<usize>,
    pub case: Case,
    pub u: VertexId,
    pub v: VertexId,
    pub vertex_count: usize,
    pub alpha: Real,
    pub rule: ParamRule,
    pub budget: LayoutBudget,
}

#[derive(Clone, Debug)]
pub struct Drawing {
    pub graph: PlaneGraph,
    pub u: VertexId,
    pub v: VertexId,
    pub tau: Vec<VertexId>,
    pub beta: Vec<VertexId>,
    pub alpha: Real,
    pub delta: Real,
    pub precision: u32,
    pub positions: BTreeMap<VertexId, Point>,
    /// One record per decomposition node, in pre-order.
    pub provenance: Vec<NodeRecord>,
    pub witnesses: Witnesses,
}

impl Drawing {
    pub fn position(&self, x: VertexId) -> &Point {
        &self.positions[&x]
    }
}

fn check_alpha(alpha: &Real, prec: u32) -> Result<(), LayoutError> {
    if !alpha.is_positive() || alpha.mul_pow2(2) >= pi(prec.max(64)).lo {
        return Err(LayoutError::BadAlpha(alpha.to_decimal(12)));
    }
    Ok(())
}

/// Draws `t` with angle parameter `alpha`, then moves `u` left by `delta`.
pub fn draw(t: &ScgTriple, alpha: &Real, delta: &Real, prec: u32) -> Result<Drawing, LayoutError> {
    check_alpha(alpha, prec)?;
    let tree = build_tree(t)?;
    draw_tree(&tree, alpha, delta, prec)
}

pub fn draw_tree(tree: &DecompositionTree, alpha: &Real, delta: &Real, prec: u32) -> Result<Drawing, LayoutError> {
    check_alpha(alpha, prec)?;
    if delta.is_negative() {
        return Err(LayoutError::NegativeDelta(delta.to_decimal(12)));
    }
    let mut engine = Engine { prec, records: Vec::new() };
    let local = engine.draw_node(tree, alpha.clone(), ParamRule::Root, None)?;
    let t = &tree.triple;
    engine.records[0].budget.delta = Some(delta.clone());
    let base = Drawing {
        graph: t.graph.clone(),
        u: t.u,
        v: t.v,
        tau: t.tau().to_vec(),
        beta: t.beta().to_vec(),
        alpha: alpha.clone(),
        delta: Real::zero(),
        precision: prec,
        positions: local.pos,
        provenance: engine.records,
        witnesses: local.witnesses,
    };
    Ok(shift_u_left(&base, delta))
}

/// Moves `u` left by `delta`; nothing else changes.
pub fn shift_u_left(d: &Drawing, delta: &Real) -> Drawing {
    let mut out = d.clone();
    if let Some(p) = out.positions.get_mut(&d.u) {
        p.x = &p.x - delta;
    }
    out.delta = &d.delta + delta;
    out
}

/// Applies `p ↦ scale · R(angle) · p + translate` to every vertex.
pub fn transform(d: &Drawing, scale: &Real, angle: &Real, translate: &Point) -> Drawing {
    let prec = d.precision;
    let (s, c) = sin_cos(angle, prec + 16);
    let rot = Point::new(&c.mid(prec + 16) * scale, &s.mid(prec + 16) * scale);
    let mut out = d.clone();
    for p in out.positions.values_mut() {
        *p = p.rotate_by(&rot).add(translate).round(prec + 16);
    }
    out
}

struct Local {
    pos: BTreeMap<VertexId, Point>,
    witnesses: Witnesses,
    /// Smallest `-y` over vertices strictly below the x-axis.
    depth: Option<Real>,
}

struct Engine {
    prec: u32,
    records: Vec<NodeRecord>,
}

type Positions = BTreeMap<VertexId, Point>;

impl Engine {
    fn exhausted(&self, node: usize, reason: impl Into<String>) -> LayoutError {
        LayoutError::PrecisionExhausted {
            precision: self.prec,
            node,
            reason: reason.into(),
        }
    }

    fn require_positive(&self, node: usize, name: &str, x: &Real) -> Result<(), LayoutError> {
        if x.is_positive() {
            Ok(())
        } else {
            Err(self.exhausted(node, format!("{name} is not positive")))
        }
    }

    fn draw_node(&mut self, node: &DecompositionTree, alpha: Real, rule: ParamRule, parent: Option<usize>) -> Result<Local, LayoutError> {
        let idx = self.records.len();
        let t = &node.triple;
        self.records.push(NodeRecord {
            parent,
            case: node.case(),
            u: t.u,
            v: t.v,
            vertex_count: t.graph.vertex_count(),
            alpha: alpha.clone(),
            rule,
            budget: LayoutBudget::default(),
        });
        let (pos, witnesses, budget) = match &node.kind {
            NodeKind::Trivial => (unit_segment(t.u, t.v), witness::trivial(t.u, t.v), LayoutBudget::default()),
            NodeKind::Cycle => (self.cycle(t.beta(), &alpha), witness::cycle(t.beta()), LayoutBudget::default()),
            NodeKind::CaseA { .. } => self.case_a(node, &alpha, idx)?,
            NodeKind::CaseB { y1, y_ell, .. } => self.case_b(node, &alpha, idx, *y1, *y_ell)?,
        };
        let pos: Positions = pos.into_iter().map(|(x, p)| (x, p.round(self.prec))).collect();
        self.certify(idx, t, &pos, &alpha)?;
        self.records[idx].budget = budget;
        let depth = pos.values().filter(|p| p.y.is_negative()).map(|p| -&p.y).min();
        Ok(Local { pos, witnesses, depth })
    }

    /// Checks the τ and β invariants and distinctness on the rounded drawing.
    fn certify(&self, idx: usize, t: &ScgTriple, pos: &Positions, alpha: &Real) -> Result<(), LayoutError> {
        let distinct: BTreeSet<&Point> = pos.values().collect();
        if distinct.len() != pos.len() {
            return Err(self.exhausted(idx, "two vertices coincide"));
        }
        let tau = t.tau();
        if !pos[&tau[0]].x.is_zero() {
            return Err(self.exhausted(idx, "u left the origin"));
        }
        for w in tau.windows(2) {
            let (a, b) = (&pos[&w[0]], &pos[&w[1]]);
            if !a.y.is_zero() || !b.y.is_zero() || a.x >= b.x {
                return Err(self.exhausted(idx, format!("outer path edge {}-{} is not horizontal and rightward", w[0], w[1])));
            }
        }
        if t.graph.vertex_count() == 2 {
            return Ok(());
        }
        let tan_a = tan(alpha, self.prec + 16);
        for (i, w) in t.beta().windows(2).enumerate() {
            let range = if i == 0 { SlopeRange::Falling } else { SlopeRange::Rising };
            let d = pos[&w[1]].sub(&pos[&w[0]]);
            if slope_in(&d, range, &tan_a) != Certainty::Yes {
                return Err(self.exhausted(idx, format!("edge {}-{} of the lower path is not certified in {range}", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// `b_1` and `b_m` on the axis, `b_2` at the apex of the isosceles triangle
    /// with base angles `α/2`, and `b_3 .. b_{m-1}` equally spaced on `b_2 b_m`.
    fn cycle(&self, beta: &[VertexId], alpha: &Real) -> Positions {
        let prec = self.prec;
        let m = beta.len();
        let b1 = Point::origin();
        let bm = Point::new(Real::one(), Real::zero());
        let b2 = Point::new(Real::one().half(), -tan(&alpha.half(), prec + 16).mid(prec + 16).half());
        let mut pos = BTreeMap::from([(beta[0], b1), (beta[m - 1], bm.clone()), (beta[1], b2.clone())]);
        let run = bm.sub(&b2);
        let steps = Real::from_i64(m as i64 - 2);
        for (i, &x) in beta.iter().enumerate().take(m - 1).skip(2) {
            let f = Real::from_i64(i as i64 - 1).div(&steps, prec, Rounding::Nearest);
            pos.insert(x, b2.add(&run.scale(&f)));
        }
        pos
    }

    fn eps_star_of(&self, idx: usize, local: &Local, g: &PlaneGraph) -> Result<Real, LayoutError> {
        let paths = local.witnesses.pairs.values().map(Vec::as_slice);
        match eps_star_along(&local.pos, &g.edges(), paths, self.prec) {
            Ok(Some(e)) => Ok(e),
            Ok(None) => Err(self.exhausted(idx, "child drawing has a single vertex")),
            Err(e) => Err(self.exhausted(idx, e.to_string())),
        }
    }

    fn case_a(&mut self, node: &DecompositionTree, alpha: &Real, idx: usize) -> Result<(Positions, Witnesses, LayoutBudget), LayoutError> {
        let prec = self.prec;
        let k = node.children.len();
        let half = alpha.half();
        let tan_a = tan(alpha, prec + 16);
        let first = &node.children[0];
        let l1 = self.draw_node(first, half.clone(), ParamRule::Half, Some(idx))?;
        let c = first.triple.tau();
        let u1 = first.triple.v;
        let star = self.eps_star_of(idx, &l1, &first.triple.graph)?;
        let mut budget = LayoutBudget {
            eps_star: Some(star.clone()),
            y_depth: l1.depth.clone(),
            ..Default::default()
        };
        let mut bound = star;
        if let Some(y) = &l1.depth {
            bound = Real::min(&bound, y);
        }
        let mut pos = l1.pos.clone();
        let mut locals = vec![l1];

        if k == 1 {
            let x2 = pos[&c[1]].x.clone();
            let xt = pos[&u1].x.clone();
            bound = Real::min(&bound, &(&tan_a.lo * &x2));
            bound = Real::min(&bound, &(&tan_a.lo * &(&xt - &x2)));
            let eps = bound.half().round(prec, Rounding::Floor);
            self.require_positive(idx, "eps", &eps)?;
            let span = &xt - &x2;
            for &a in &c[1..c.len() - 1] {
                let xa = pos[&a].x.clone();
                let y = (&eps * &(&xt - &xa)).div(&span, prec, Rounding::Nearest);
                pos.get_mut(&a).unwrap().y = -y;
            }
            budget.eps = Some(eps);
        } else {
            let l1x = pos[&u1].x.clone();
            bound = Real::min(&bound, &(&tan_a.lo * &l1x));
            let eps = bound.half().round(prec, Rounding::Floor);
            self.require_positive(idx, "eps", &eps)?;
            for &a in &c[1..] {
                let xa = pos[&a].x.clone();
                let y = (&eps * &xa).div(&l1x, prec, Rounding::Nearest);
                pos.get_mut(&a).unwrap().y = -y;
            }
            let tan_half = tan(&half, prec + 16).mid(prec + 16);
            let pv = Point::new(
                (&l1x + &eps.div(&tan_half, prec, Rounding::Nearest)).round(prec, Rounding::Nearest),
                Real::zero(),
            );
            let start = pos[&u1].clone();
            let w = pv.sub(&start);
            let fracs: Vec<Real> = (0..k)
                .map(|i| Real::from_i64(i as i64).div(&Real::from_i64(k as i64 - 1), prec, Rounding::Nearest))
                .collect();
            let mut joints: Vec<Point> = fracs.iter().map(|f| start.add(&w.scale(f)).round(prec)).collect();
            joints[0] = start;
            joints[k - 1] = pv;
            let third = alpha.div(&Real::from_i64(3), prec, Rounding::Floor);
            for i in 1..k {
                let child = &node.children[i];
                let li = self.draw_node(child, third.clone(), ParamRule::Third, Some(idx))?;
                let len = li.pos[&child.triple.v].x.clone();
                let g = (&fracs[i] - &fracs[i - 1]).div(&len, prec, Rounding::Nearest);
                place(
                    &mut pos,
                    &li.pos,
                    child.triple.u,
                    child.triple.v,
                    &joints[i - 1],
                    &joints[i],
                    &w.scale(&g),
                    false,
                );
                locals.push(li);
            }
            budget.eps = Some(eps);
        }

        let taus: Vec<&[VertexId]> = node.children.iter().map(|c| c.triple.tau()).collect();
        let tables: Vec<&Witnesses> = locals.iter().map(|l| &l.witnesses).collect();
        let mut joints = vec![node.triple.u];
        joints.extend(node.children.iter().map(|c| c.triple.v));
        let chain = witness::Chain::new(joints, taus, tables, true);
        Ok((pos, witness::case_a(&chain), budget))
    }

    fn case_b(
        &mut self,
        node: &DecompositionTree,
        alpha: &Real,
        idx: usize,
        y1: VertexId,
        y_ell: VertexId,
    ) -> Result<(Positions, Witnesses, LayoutBudget), LayoutError> {
        let prec = self.prec;
        let v = node.triple.v;
        let h = &node.children[0];
        let lh = self.draw_node(h, alpha.half(), ParamRule::Half, Some(idx))?;
        let mut pos = lh.pos.clone();

        // Smallest slope over the rising part of β(H), compared exactly as fractions.
        let mut best: Option<(Real, Real)> = None;
        for w in h.triple.beta().windows(2).skip(1) {
            let d = pos[&w[1]].sub(&pos[&w[0]]);
            if !d.x.is_positive() || !d.y.is_positive() {
                return Err(self.exhausted(idx, "lower path of H is not rising"));
            }
            if best.as_ref().is_none_or(|(bx, by)| &d.y * bx < by * &d.x) {
                best = Some((d.x, d.y));
            }
        }
        let (bx, by) = best.ok_or_else(|| self.exhausted(idx, "lower path of H has a single edge"))?;
        let tan_phi = by.div(&bx, prec, Rounding::Floor);

        let pl = pos[&y_ell].clone();
        let py1 = pos[&y1].clone();
        let d_v = -&pl.y;
        let d_h = &py1.x - &pl.x;
        self.require_positive(idx, "depth of y_ell", &d_v)?;
        let three = Real::from_i64(3);
        let ratio = d_v.div(&(&(&d_v * &three) + &(&d_h * &three)), prec, Rounding::Floor);
        let m = Real::min(&tan_phi, &ratio);
        let beta = atan(&m, prec + 16).lo.half().round(prec, Rounding::Floor);
        self.require_positive(idx, "beta", &beta)?;
        let tan_beta = tan(&beta, prec + 16);
        let vx = (&pl.x + &d_v.div(&tan_beta.mid(prec + 16), prec, Rounding::Nearest)).round(prec, Rounding::Nearest);
        let pv = Point::new(vx, Real::zero());
        let d_y1v = (&pv.x - &py1.x).round(prec, Rounding::Floor);
        self.require_positive(idx, "d(y1, v)", &d_y1v)?;
        let alpha_prime = beta.half();
        let mut budget = LayoutBudget {
            y_depth: lh.depth.clone(),
            tan_phi: Some(tan_phi),
            beta: Some(beta),
            alpha_prime: Some(alpha_prime.clone()),
            d_y1v: Some(d_y1v.clone()),
            ..Default::default()
        };

        let layers = &node.children[1..];
        let k = layers.len();
        let w = pv.sub(&pl);
        let mut locals = Vec::new();
        if k == 1 && layers[0].case() == Case::Trivial {
            locals.push(self.draw_node(&layers[0], alpha_prime, ParamRule::HalfBeta, Some(idx))?);
        } else {
            let y = lh.depth.clone().ok_or_else(|| self.exhausted(idx, "H has no vertex below the axis"))?;
            let rho = Real::min(&d_y1v.div(&three, prec, Rounding::Floor), &y.half());
            self.require_positive(idx, "rho", &rho)?;
            let wn = w.norm2().sqrt(prec, Rounding::Ceil);
            let c = rho.div(&wn, prec, Rounding::Floor);
            let kk = Real::from_i64(k as i64);
            // Joint i sits at v - f_i w.
            let fracs: Vec<Real> = (0..=k)
                .map(|i| (&c * &Real::from_i64((k - i) as i64)).div(&kk, prec, Rounding::Nearest))
                .collect();
            let mut joints: Vec<Point> = fracs.iter().map(|f| pv.sub(&w.scale(f)).round(prec)).collect();
            joints[k] = pv.clone();
            budget.d_star = Some(joints[0].dist2(&pl).sqrt(prec, Rounding::Nearest));
            budget.rho = Some(rho);
            for i in 1..=k {
                let child = &layers[i - 1];
                let li = self.draw_node(child, alpha_prime.clone(), ParamRule::HalfBeta, Some(idx))?;
                let len = li.pos[&child.triple.v].x.clone();
                let g = (&fracs[i - 1] - &fracs[i]).div(&len, prec, Rounding::Nearest);
                place(
                    &mut pos,
                    &li.pos,
                    child.triple.u,
                    child.triple.v,
                    &joints[i - 1],
                    &joints[i],
                    &w.scale(&g),
                    i == 1,
                );
                locals.push(li);
            }
        }
        pos.insert(v, pv);

        let taus: Vec<&[VertexId]> = layers.iter().map(|c| c.triple.tau()).collect();
        let tables: Vec<&Witnesses> = locals.iter().map(|l| &l.witnesses).collect();
        let mut joints = vec![y_ell];
        joints.extend(layers.iter().map(|c| c.triple.v));
        let chain = witness::Chain::new(joints, taus, tables, false);
        Ok((pos, witness::case_b(&lh.witnesses, h.triple.tau(), &chain, v), budget))
    }
}

fn unit_segment(u: VertexId, v: VertexId) -> Positions {
    BTreeMap::from([(u, Point::origin()), (v, Point::new(Real::one(), Real::zero()))])
}

/// Copies a child drawing into `pos` by `p ↦ from + map·p` (complex product),
/// snapping its endpoints to `from` and `to`. With `keep_start` the child's `u`
/// keeps whatever position it already has.
#[allow(clippy::too_many_arguments)]
fn place(pos: &mut Positions, child: &Positions, cu: VertexId, cv: VertexId, from: &Point, to: &Point, map: &Point, keep_start: bool) {
    for (&x, p) in child {
        let q = if x == cu {
            if keep_start {
                continue;
            }
            from.clone()
        } else if x == cv {
            to.clone()
        } else {
            from.add(&p.rotate_by(map))
        };
        pos.insert(x, q);
    }
}
