use std::collections::BTreeMap;

use crate::arith::{Real, Rounding};
use crate::geometry::{point_segment_dist2, Point};
use crate::plane_graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("vertices {0} and {1} coincide")]
pub struct DegenerateDrawing(pub VertexId, pub VertexId);

/// A certified lower bound on the perturbation radius `min(δ/3, γ/5)`.
///
/// `δ` is the smallest distance between two vertices or between a vertex and
/// an edge not incident to it. `γ` is the smallest positive difference
/// `d(x, z) - d(y, z)` over vertices `x, y, z`. Returns `None` when both sets
/// are empty (a single vertex).
pub fn eps_star(positions: &BTreeMap<VertexId, Point>, edges: &[(VertexId, VertexId)], prec: u32) -> Result<Option<Real>, DegenerateDrawing> {
    let feature2 = feature_bound2(positions, edges, prec)?;
    let mut gap: Option<Real> = None;
    for (z, pz) in positions {
        let mut ds: Vec<Real> = positions.iter().filter(|(x, _)| *x != z).map(|(_, p)| p.dist2(pz)).collect();
        ds.sort();
        ds.dedup();
        for pair in ds.windows(2) {
            keep_min(&mut gap, sqrt_gap(&pair[0], &pair[1], prec));
        }
    }
    Ok(combine(feature2, gap, prec))
}

/// Like [`eps_star`], but `γ` only ranges over the steps `d(x_i, y) > d(x_{i+1}, y)`
/// of the given paths `x_1 .. y`. Perturbing by less than this radius keeps the
/// drawing planar and those paths distance-decreasing, and it is not spoiled by
/// pairs of distances that are equal up to rounding.
pub fn eps_star_along<'a>(
    positions: &BTreeMap<VertexId, Point>,
    edges: &[(VertexId, VertexId)],
    paths: impl IntoIterator<Item = &'a [VertexId]>,
    prec: u32,
) -> Result<Option<Real>, PerturbationError> {
    let feature2 = feature_bound2(positions, edges, prec)?;
    let mut gap: Option<Real> = None;
    for path in paths {
        let Some(&y) = path.last() else { continue };
        let py = &positions[&y];
        for w in path.windows(2).take(path.len().saturating_sub(2)) {
            let (a, b) = (positions[&w[0]].dist2(py), positions[&w[1]].dist2(py));
            if b >= a {
                return Err(PerturbationError::NotDecreasing { from: w[0], next: w[1], to: y });
            }
            keep_min(&mut gap, sqrt_gap(&b, &a, prec));
        }
    }
    Ok(combine(feature2, gap, prec))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PerturbationError {
    #[error(transparent)]
    Degenerate(#[from] DegenerateDrawing),
    #[error("step {from} -> {next} does not get closer to {to}")]
    NotDecreasing { from: VertexId, next: VertexId, to: VertexId },
}

fn keep_min(slot: &mut Option<Real>, d: Real) {
    if slot.as_ref().is_none_or(|m| d < *m) {
        *slot = Some(d);
    }
}

/// Lower bound on `√b - √a` for `a < b`.
fn sqrt_gap(a: &Real, b: &Real, prec: u32) -> Real {
    let denom = a.sqrt(prec, Rounding::Ceil) + b.sqrt(prec, Rounding::Ceil);
    (b - a).div(&denom, prec, Rounding::Floor)
}

/// Squared `δ`, rounded down.
fn feature_bound2(positions: &BTreeMap<VertexId, Point>, edges: &[(VertexId, VertexId)], prec: u32) -> Result<Option<Real>, DegenerateDrawing> {
    let pts: Vec<(VertexId, &Point)> = positions.iter().map(|(&v, p)| (v, p)).collect();
    let mut feature2: Option<Real> = None;
    for (i, (a, pa)) in pts.iter().enumerate() {
        for (b, pb) in &pts[i + 1..] {
            let d = pa.dist2(pb);
            if d.is_zero() {
                return Err(DegenerateDrawing(*a, *b));
            }
            keep_min(&mut feature2, d);
        }
    }
    for (z, pz) in &pts {
        for &(a, b) in edges {
            if a == *z || b == *z {
                continue;
            }
            keep_min(&mut feature2, point_segment_dist2(pz, &positions[&a], &positions[&b], prec, Rounding::Floor));
        }
    }
    Ok(feature2)
}

fn combine(feature2: Option<Real>, gap: Option<Real>, prec: u32) -> Option<Real> {
    let a = feature2.map(|d2| d2.sqrt(prec, Rounding::Floor).div(&Real::from_i64(3), prec, Rounding::Floor));
    let b = gap.map(|g| g.div(&Real::from_i64(5), prec, Rounding::Floor));
    match (a, b) {
        (Some(a), Some(b)) => Some(Real::min(&a, &b)),
        (a, b) => a.or(b),
    }
}
