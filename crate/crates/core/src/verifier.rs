//! Construction-agnostic checks on a finished drawing.
//!
//! Coordinates are dyadic, so planarity, greediness and distance comparisons
//! are decided exactly. Only comparisons against `tan α` go through an
//! interval enclosure and can come back undecided.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{atan, pi, tan, Interval, Real, Rounding};
use crate::geometry::{on_segment, segments_intersect, slope_f64, slope_in, Certainty, Point, SlopeRange};
use crate::layout::{eps_star_along, Drawing, ParamRule};
use crate::plane_graph::{PlaneGraph, VertexId};

type Positions = BTreeMap<VertexId, Point>;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Check<W> {
    Pass,
    Fail { witness: W },
    Indeterminate { reason: String },
}

impl<W> Check<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Check::Fail { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub first: (VertexId, VertexId),
    pub second: (VertexId, VertexId),
    /// Approximate common point, for display.
    pub at: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StuckPair {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeViolation {
    pub edge: (VertexId, VertexId),
    pub expected: SlopeRange,
    /// Approximate slope in radians.
    pub slope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathViolation {
    pub from: VertexId,
    pub to: VertexId,
    pub path: Vec<VertexId>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeViolation {
    pub node: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeReport {
    pub property2: Check<String>,
    pub property3: Check<SlopeViolation>,
    pub property4: Check<PathViolation>,
    pub property5: Check<PathViolation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub samples: usize,
    pub radius: f64,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub planar: Check<Crossing>,
    pub greedy: Check<StuckPair>,
    pub properties: SlopeReport,
    pub witness_paths: Check<PathViolation>,
    pub parameters: Check<CascadeViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationReport>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.planar.is_pass()
            && self.greedy.is_pass()
            && self.properties.property2.is_pass()
            && self.properties.property3.is_pass()
            && self.properties.property4.is_pass()
            && self.properties.property5.is_pass()
            && self.witness_paths.is_pass()
            && self.parameters.is_pass()
            && self.perturbation.as_ref().is_none_or(|p| p.failures == 0)
    }
}

/// Planarity and greediness only; usable for any positioned plane graph.
pub fn verify_basic(positions: &Positions, graph: &PlaneGraph) -> (Check<Crossing>, Check<StuckPair>) {
    (check_planar(positions, &graph.edges()), check_greedy(positions, graph))
}

pub fn verify(d: &Drawing) -> VerificationReport {
    VerificationReport {
        planar: check_planar(&d.positions, &d.graph.edges()),
        greedy: check_greedy(&d.positions, &d.graph),
        properties: check_slope_properties(d),
        witness_paths: check_witness_pairs(d),
        parameters: check_parameter_cascade(d),
        perturbation: None,
    }
}

fn approx_intersection(a: &Point, b: &Point, c: &Point, e: &Point) -> (f64, f64) {
    let (a, b, c, e) = (a.to_f64(), b.to_f64(), c.to_f64(), e.to_f64());
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (e.0 - c.0, e.1 - c.1);
    let den = r.0 * s.1 - r.1 * s.0;
    if den == 0.0 {
        return c;
    }
    let t = ((c.0 - a.0) * s.1 - (c.1 - a.1) * s.0) / den;
    (a.0 + t * r.0, a.1 + t * r.1)
}

/// No two edges share a point other than a common endpoint, no vertex lies on
/// an edge it is not incident to, and no two vertices coincide.
pub fn check_planar(positions: &Positions, edges: &[(VertexId, VertexId)]) -> Check<Crossing> {
    let mut seen: BTreeMap<&Point, VertexId> = BTreeMap::new();
    for (&x, p) in positions {
        if let Some(&y) = seen.get(p) {
            return Check::Fail {
                witness: Crossing {
                    first: (y, y),
                    second: (x, x),
                    at: p.to_f64(),
                },
            };
        }
        seen.insert(p, x);
    }
    for &(a, b) in edges {
        for (&x, p) in positions {
            if x != a && x != b && on_segment(p, &positions[&a], &positions[&b]) {
                return Check::Fail {
                    witness: Crossing {
                        first: (a, b),
                        second: (x, x),
                        at: p.to_f64(),
                    },
                };
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            let (pa, pb, pc, pe) = (&positions[&a], &positions[&b], &positions[&c], &positions[&e]);
            let shared = [a, b].into_iter().find(|x| *x == c || *x == e);
            let bad = match shared {
                Some(s) => {
                    let other1 = if a == s { pb } else { pa };
                    let other2 = if c == s { pe } else { pc };
                    let ps = &positions[&s];
                    on_segment(other1, ps, other2) || on_segment(other2, ps, other1)
                }
                None => segments_intersect(pa, pb, pc, pe),
            };
            if bad {
                return Check::Fail {
                    witness: Crossing {
                        first: (a, b),
                        second: (c, e),
                        at: approx_intersection(pa, pb, pc, pe),
                    },
                };
            }
        }
    }
    Check::Pass
}

/// Every ordered pair `(x, y)` has a neighbour of `x` strictly closer to `y`.
pub fn check_greedy(positions: &Positions, graph: &PlaneGraph) -> Check<StuckPair> {
    for (&x, px) in positions {
        for (&y, py) in positions {
            if x == y {
                continue;
            }
            let d = px.dist2(py);
            if !graph.rotation(x).iter().any(|w| positions[w].dist2(py) < d) {
                return Check::Fail {
                    witness: StuckPair { from: x, to: y },
                };
            }
        }
    }
    Check::Pass
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("greedy routing from {from} to {to} is stuck at {at}")]
pub struct Stuck {
    pub from: VertexId,
    pub to: VertexId,
    pub at: VertexId,
}

/// Greedy routing: always move to the neighbour closest to `y`, breaking ties by smaller id.
pub fn extract_greedy_path(positions: &Positions, graph: &PlaneGraph, x: VertexId, y: VertexId) -> Result<Vec<VertexId>, Stuck> {
    let target = &positions[&y];
    let mut path = vec![x];
    let mut cur = x;
    while cur != y {
        let here = positions[&cur].dist2(target);
        let best = graph
            .rotation(cur)
            .iter()
            .map(|&w| (positions[&w].dist2(target), w))
            .min()
            .filter(|(d, _)| *d < here)
            .ok_or(Stuck { from: x, to: y, at: cur })?;
        cur = best.1;
        path.push(cur);
    }
    Ok(path)
}

/// Whether each vertex of `path` is strictly closer to its last vertex than the one before.
pub fn is_distance_decreasing(positions: &Positions, path: &[VertexId]) -> bool {
    let Some(last) = path.last() else { return false };
    let target = &positions[last];
    path.windows(2).all(|w| positions[&w[1]].dist2(target) < positions[&w[0]].dist2(target))
}

fn is_path_in(graph: &PlaneGraph, path: &[VertexId]) -> bool {
    let distinct: BTreeSet<_> = path.iter().collect();
    distinct.len() == path.len() && path.windows(2).all(|w| graph.has_edge(w[0], w[1]))
}

fn slope_check(positions: &Positions, a: VertexId, b: VertexId, range: SlopeRange, tan_a: &Interval) -> Result<(), Result<SlopeViolation, String>> {
    let d = positions[&b].sub(&positions[&a]);
    match slope_in(&d, range, tan_a) {
        Certainty::Yes => Ok(()),
        Certainty::No => Err(Ok(SlopeViolation {
            edge: (a, b),
            expected: range,
            slope: slope_f64(&d),
        })),
        Certainty::Unknown => Err(Err(format!("slope of {a}-{b} too close to the boundary of {range}"))),
    }
}

fn tan_of(d: &Drawing) -> Interval {
    tan(&d.alpha, d.precision + 16)
}

/// Properties on the outer paths and on the recorded `P_x` and `Q_x`.
pub fn check_slope_properties(d: &Drawing) -> SlopeReport {
    let tan_a = tan_of(d);
    let pos = &d.positions;
    let trivial = d.graph.vertex_count() == 2;

    let property2 = {
        let y0 = &pos[&d.u].y;
        let bad = d
            .tau
            .windows(2)
            .find(|w| pos[&w[0]].y != *y0 || pos[&w[1]].y != *y0 || pos[&w[0]].x >= pos[&w[1]].x);
        match bad {
            Some(w) => Check::Fail {
                witness: format!("edge {}-{} of the upper path is not horizontal and rightward", w[0], w[1]),
            },
            None => Check::Pass,
        }
    };

    let property3 = if trivial {
        Check::Pass
    } else {
        let mut out = Check::Pass;
        for (i, w) in d.beta.windows(2).enumerate() {
            let range = if i == 0 { SlopeRange::Falling } else { SlopeRange::Rising };
            match slope_check(pos, w[0], w[1], range, &tan_a) {
                Ok(()) => {}
                Err(Ok(v)) => {
                    out = Check::Fail { witness: v };
                    break;
                }
                Err(Err(reason)) => out = Check::Indeterminate { reason },
            }
        }
        out
    };

    let path_property = |table: &BTreeMap<VertexId, Vec<VertexId>>, end: VertexId, range: SlopeRange| -> Check<PathViolation> {
        let mut out = Check::Pass;
        for &x in pos.keys() {
            let fail = |path: &[VertexId], reason: String| PathViolation {
                from: x,
                to: end,
                path: path.to_vec(),
                reason,
            };
            let Some(path) = table.get(&x) else {
                return Check::Fail {
                    witness: fail(&[], "no recorded path".into()),
                };
            };
            if path.first() != Some(&x) || path.last() != Some(&end) || !is_path_in(&d.graph, path) {
                return Check::Fail {
                    witness: fail(path, "not a simple path of the graph between the right ends".into()),
                };
            }
            if end == d.v && x != d.u && path.contains(&d.u) {
                return Check::Fail {
                    witness: fail(path, format!("passes through {}", d.u)),
                };
            }
            for w in path.windows(2) {
                match slope_check(pos, w[0], w[1], range, &tan_a) {
                    Ok(()) => {}
                    Err(Ok(v)) => {
                        return Check::Fail {
                            witness: fail(path, format!("edge {}-{} has slope {:.6} outside {range}", w[0], w[1], v.slope)),
                        }
                    }
                    Err(Err(reason)) => out = Check::Indeterminate { reason },
                }
            }
        }
        out
    };

    SlopeReport {
        property2,
        property3,
        property4: path_property(&d.witnesses.to_v, d.v, SlopeRange::East),
        property5: path_property(&d.witnesses.to_u, d.u, SlopeRange::West),
    }
}

/// Audits the recorded parameters: every node's `α` lies in `(0, π/4)` and
/// follows from its parent's by its rule, and every budget is positive and
/// within the bounds the construction promises.
pub fn check_parameter_cascade(d: &Drawing) -> Check<CascadeViolation> {
    let prec = d.precision;
    let quarter_pi = pi(prec + 16).lo.mul_pow2(-2);
    let records = &d.provenance;
    let fail = |node: usize, reason: String| Check::Fail {
        witness: CascadeViolation { node, reason },
    };
    for (i, r) in records.iter().enumerate() {
        if !r.alpha.is_positive() || r.alpha >= quarter_pi {
            return fail(i, format!("alpha {} is outside (0, pi/4)", r.alpha.to_decimal(12)));
        }
        let parent = r.parent.map(|p| &records[p]);
        let ok = match (r.rule, parent) {
            (ParamRule::Root, None) => r.alpha == d.alpha,
            (ParamRule::Half, Some(p)) => r.alpha == p.alpha.half(),
            (ParamRule::Third, Some(p)) => {
                // Rounded down to `prec` bits, so short of a third by less than one unit in the last place.
                let three = &r.alpha * &Real::from_i64(3);
                let ulp = Real::pow2(r.alpha.magnitude().unwrap_or(0) - prec as i64);
                three <= p.alpha && &p.alpha - &three < &ulp * &Real::from_i64(3)
            }
            (ParamRule::HalfBeta, Some(p)) => p
                .budget
                .beta
                .as_ref()
                .is_some_and(|b| r.alpha == b.half() && p.budget.alpha_prime.as_ref() == Some(&r.alpha)),
            _ => false,
        };
        if !ok {
            return fail(i, format!("alpha does not follow rule {}", r.rule));
        }
        let b = &r.budget;
        for (name, value) in b.entries() {
            let good = if name == "delta" { !value.is_negative() } else { value.is_positive() };
            if !good {
                return fail(i, format!("{name} = {} is not positive", value.to_decimal(12)));
            }
        }
        if let (Some(eps), Some(star)) = (&b.eps, &b.eps_star) {
            if eps.mul_pow2(1) > *star {
                return fail(i, "eps exceeds half of eps*".into());
            }
        }
        if let Some(beta) = &b.beta {
            if beta.mul_pow2(2) >= r.alpha {
                return fail(i, "beta is not below alpha/4".into());
            }
            if let Some(tan_phi) = &b.tan_phi {
                if *beta >= atan(tan_phi, prec + 16).lo {
                    return fail(i, "beta is not below phi".into());
                }
            }
            if b.alpha_prime.as_ref() != Some(&beta.half()) {
                return fail(i, "alpha' is not beta/2".into());
            }
        }
        if let Some(rho) = &b.rho {
            let over_d = b.d_y1v.as_ref().is_some_and(|d| &(rho * &Real::from_i64(3)) > d);
            let over_y = b.y_depth.as_ref().is_some_and(|y| &rho.mul_pow2(1) > y);
            if over_d || over_y {
                return fail(i, "rho exceeds min(d(y1, v)/3, Y/2)".into());
            }
        }
    }
    Check::Pass
}

/// Every recorded `P_xy` is a distance-decreasing path avoiding `u` unless `u` is an end.
pub fn check_witness_pairs(d: &Drawing) -> Check<PathViolation> {
    check_recorded_paths(&d.positions, d)
}

fn check_recorded_paths(pos: &Positions, d: &Drawing) -> Check<PathViolation> {
    for &x in pos.keys() {
        for &y in pos.keys() {
            if x == y {
                continue;
            }
            let fail = |path: &[VertexId], reason: &str| Check::Fail {
                witness: PathViolation {
                    from: x,
                    to: y,
                    path: path.to_vec(),
                    reason: reason.into(),
                },
            };
            let Some(path) = d.witnesses.pairs.get(&(x, y)) else {
                return fail(&[], "no recorded path");
            };
            if path.first() != Some(&x) || path.last() != Some(&y) || !is_path_in(&d.graph, path) {
                return fail(path, "not a simple path of the graph between the right ends");
            }
            if x != d.u && y != d.u && path.contains(&d.u) {
                return fail(path, "passes through u");
            }
            if !is_distance_decreasing(pos, path) {
                return fail(path, "not distance-decreasing");
            }
        }
    }
    Check::Pass
}

/// Independent search for a distance-decreasing `x`-`y` path that avoids `u`
/// whenever `x, y ≠ u`: a vertex may step to any neighbour strictly closer to `y`.
pub fn check_u_avoiding_paths(d: &Drawing) -> Check<StuckPair> {
    let pos = &d.positions;
    for (&y, py) in pos {
        let mut order: Vec<VertexId> = pos.keys().copied().collect();
        order.sort_by(|a, b| pos[a].dist2(py).cmp(&pos[b].dist2(py)));
        for avoid_u in [false, true] {
            if avoid_u && y == d.u {
                continue;
            }
            let mut reach: BTreeSet<VertexId> = [y].into();
            for &x in &order[1..] {
                if avoid_u && x == d.u {
                    continue;
                }
                let dx = pos[&x].dist2(py);
                if d.graph.rotation(x).iter().any(|w| reach.contains(w) && pos[w].dist2(py) < dx) {
                    reach.insert(x);
                } else {
                    return Check::Fail {
                        witness: StuckPair { from: x, to: y },
                    };
                }
            }
        }
    }
    Check::Pass
}

/// Sampled stability test: moves every vertex by at most `radius` and
/// re-checks planarity and every recorded pair path. A quarter of the samples
/// use displacements of exactly `radius`.
pub fn check_perturbation(d: &Drawing, samples: usize, seed: u64, radius: &Real) -> PerturbationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prec = d.precision + 32;
    let edges = d.graph.edges();
    let mut failures = 0;
    let mut first_failure = None;
    for s in 0..samples {
        let boundary = s % 4 == 0;
        let moved: Positions = d
            .positions
            .iter()
            .map(|(&x, p)| {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r: f64 = if boundary { 1.0 } else { rng.gen::<f64>().sqrt() };
                // Scale by slightly less than 1 so rounding cannot push the step past the radius.
                let f = r * (1.0 - 1e-9);
                let dx = radius * &Real::from_f64(f * theta.cos());
                let dy = radius * &Real::from_f64(f * theta.sin());
                (x, Point::new(&p.x + &dx, &p.y + &dy).round(prec))
            })
            .collect();
        let mut reason = None;
        if let Check::Fail { witness } = check_planar(&moved, &edges) {
            reason = Some(format!("sample {s}: edges {:?} and {:?} meet", witness.first, witness.second));
        } else if let Check::Fail { witness } = check_recorded_paths(&moved, d) {
            reason = Some(format!(
                "sample {s}: path {:?} from {} to {}: {}",
                witness.path, witness.from, witness.to, witness.reason
            ));
        }
        if let Some(r) = reason {
            failures += 1;
            first_failure.get_or_insert(r);
        }
    }
    PerturbationReport {
        samples,
        radius: radius.to_f64(),
        failures,
        first_failure,
    }
}

/// The perturbation radius of a drawing with respect to its recorded pair
/// paths, `None` for a single vertex or when a recorded path does not decrease.
pub fn perturbation_radius(d: &Drawing) -> Option<Real> {
    let paths = d.witnesses.pairs.values().map(Vec::as_slice);
    eps_star_along(&d.positions, &d.graph.edges(), paths, d.precision).ok().flatten()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WedgeVerdict {
    Pass,
    Fail { vertex: VertexId },
    HypothesisUnmet { reason: String },
}

/// Checks that every vertex other than `apex` lies strictly on `side` of the
/// directed line through `apex` with direction `s2`.
///
/// Directions are given as vectors `s1, s2, s3` whose slopes satisfy
/// `0 < s1 ≤ s2 ≤ s3 < π`. The hypothesis is that every edge of `paths`,
/// walked away from `apex`, has slope in `(s3 - π, s1)` for the right side and
/// in `(s3, s1 + π)` for the left side. It is checked and reported rather than
/// assumed.
pub fn check_wedge(positions: &Positions, paths: &[Vec<VertexId>], vertices: &[VertexId], apex: VertexId, s: [&Point; 3], side: Side) -> WedgeVerdict {
    let [s1, s2, s3] = s;
    if !(s1.y.is_positive() && s2.y.is_positive() && s3.y.is_positive()) || s1.cross(s2).is_negative() || s2.cross(s3).is_negative() {
        return WedgeVerdict::HypothesisUnmet {
            reason: "line slopes are not ordered within (0, pi)".into(),
        };
    }
    let neg = |p: &Point| Point::new(-&p.x, -&p.y);
    let (from, to) = match side {
        Side::Right => (neg(s3), s1.clone()),
        Side::Left => (s3.clone(), neg(s1)),
    };
    for path in paths {
        for w in path.windows(2) {
            let d = positions[&w[1]].sub(&positions[&w[0]]);
            if !(from.cross(&d).is_positive() && d.cross(&to).is_positive()) {
                return WedgeVerdict::HypothesisUnmet {
                    reason: format!("edge {}-{} leaves the slope range", w[0], w[1]),
                };
            }
        }
    }
    let pa = &positions[&apex];
    for &x in vertices {
        if x == apex {
            continue;
        }
        let c = s2.cross(&positions[&x].sub(pa));
        let ok = match side {
            Side::Right => c.is_negative(),
            Side::Left => c.is_positive(),
        };
        if !ok {
            return WedgeVerdict::Fail { vertex: x };
        }
    }
    WedgeVerdict::Pass
}

/// Smallest and largest squared distances, rounded outward, for reports.
pub fn distance_range(positions: &Positions, prec: u32) -> Option<(Real, Real)> {
    let pts: Vec<&Point> = positions.values().collect();
    let mut lo: Option<Real> = None;
    let mut hi: Option<Real> = None;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d = a.dist2(b);
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d.clone());
            }
            if hi.as_ref().is_none_or(|h| d > *h) {
                hi = Some(d);
            }
        }
    }
    Some((lo?.sqrt(prec, Rounding::Floor), hi?.sqrt(prec, Rounding::Ceil)))
}
