//! Points, exact predicates and slope tests over dyadic coordinates.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{Interval, Real, Rounding};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Real,
    pub y: Real,
}

impl Point {
    pub fn new(x: Real, y: Real) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point {
            x: Real::zero(),
            y: Real::zero(),
        }
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        Point {
            x: Real::from_f64(x),
            y: Real::from_f64(y),
        }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn scale(&self, f: &Real) -> Point {
        Point {
            x: &self.x * f,
            y: &self.y * f,
        }
    }

    pub fn round(&self, prec: u32) -> Point {
        Point {
            x: self.x.round(prec, Rounding::Nearest),
            y: self.y.round(prec, Rounding::Nearest),
        }
    }

    pub fn dot(&self, o: &Point) -> Real {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Real {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Real {
        self.dot(self)
    }

    pub fn dist2(&self, o: &Point) -> Real {
        self.sub(o).norm2()
    }

    /// Multiplication by the complex number `w`: rotates by arg(w) and scales by |w|.
    pub fn rotate_by(&self, w: &Point) -> Point {
        Point {
            x: &w.x * &self.x - &w.y * &self.y,
            y: &w.y * &self.x + &w.x * &self.y,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the turn `a -> b -> c`: positive when counter-clockwise.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    b.sub(a).cross(&c.sub(a)).signum().cmp(&0)
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == Ordering::Equal && p.sub(a).dot(&p.sub(b)).signum() <= 0
}

/// Whether closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Squared distance from `p` to segment `ab`, rounded with `mode` to `prec` bits.
pub fn point_segment_dist2(p: &Point, a: &Point, b: &Point, prec: u32, mode: Rounding) -> Real {
    let ab = b.sub(a);
    if ab.norm2().is_zero() || p.sub(a).dot(&ab).signum() <= 0 {
        return p.dist2(a).round(prec, mode);
    }
    if p.sub(b).dot(&ab).signum() >= 0 {
        return p.dist2(b).round(prec, mode);
    }
    let c = ab.cross(&p.sub(a));
    c.square().div(&ab.norm2(), prec, mode)
}

/// Open slope ranges used by the drawing invariants, for `0 < α < π/4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeRange {
    /// `(0, α)`
    Rising,
    /// `(-α, 0)`
    Falling,
    /// `(-α, α)`
    East,
    /// `(π - α, π + α)`
    West,
}

impl fmt::Display for SlopeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SlopeRange::Rising => "(0, a)",
            SlopeRange::Falling => "(-a, 0)",
            SlopeRange::East => "(-a, a)",
            SlopeRange::West => "(pi - a, pi + a)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    Yes,
    No,
    Unknown,
}

impl Certainty {
    fn from_bounds(strictly_inside: bool, outside: bool) -> Certainty {
        if strictly_inside {
            Certainty::Yes
        } else if outside {
            Certainty::No
        } else {
            Certainty::Unknown
        }
    }
}

/// Whether the direction of `d` lies in `range`, given an enclosure of `tan α`.
///
/// The sign tests are exact; only the comparison against `tan α` can be undecided.
pub fn slope_in(d: &Point, range: SlopeRange, tan_alpha: &Interval) -> Certainty {
    let (run, rise) = match range {
        SlopeRange::West => (-&d.x, d.y.clone()),
        _ => (d.x.clone(), d.y.clone()),
    };
    if !run.is_positive() {
        return Certainty::No;
    }
    let sign_ok = match range {
        SlopeRange::Rising => rise.is_positive(),
        SlopeRange::Falling => rise.is_negative(),
        SlopeRange::East | SlopeRange::West => true,
    };
    if !sign_ok {
        return Certainty::No;
    }
    let rise = rise.abs();
    Certainty::from_bounds(rise < &tan_alpha.lo * &run, rise >= &tan_alpha.hi * &run)
}

/// Approximate slope of `d` in radians, normalised to `[-π/2, 3π/2)`.
pub fn slope_f64(d: &Point) -> f64 {
    let (x, y) = d.to_f64();
    let a = y.atan2(x);
    if a < -std::f64::consts::FRAC_PI_2 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::tan;

    fn p(x: f64, y: f64) -> Point {
        Point::from_f64(x, y)
    }

    #[test]
    fn crossing_and_touching_segments() {
        assert!(segments_intersect(&p(0.0, 0.0), &p(1.0, 1.0), &p(0.0, 1.0), &p(1.0, 0.0)));
        assert!(segments_intersect(&p(0.0, 0.0), &p(2.0, 0.0), &p(1.0, 0.0), &p(1.0, 5.0)));
        assert!(!segments_intersect(&p(0.0, 0.0), &p(1.0, 0.0), &p(2.0, 0.0), &p(3.0, 0.0)));
        assert!(segments_intersect(&p(0.0, 0.0), &p(2.0, 0.0), &p(1.0, 0.0), &p(3.0, 0.0)));
    }

    #[test]
    fn point_to_segment_distance() {
        let d = point_segment_dist2(&p(0.5, 2.0), &p(0.0, 0.0), &p(1.0, 0.0), 64, Rounding::Nearest);
        assert_eq!(d, Real::from_i64(4));
        let d = point_segment_dist2(&p(3.0, 4.0), &p(-1.0, 0.0), &p(0.0, 0.0), 64, Rounding::Nearest);
        assert_eq!(d, Real::from_i64(25));
    }

    #[test]
    fn slope_ranges() {
        let t = tan(&Real::from_f64(0.5), 128);
        assert_eq!(slope_in(&p(1.0, 0.1), SlopeRange::Rising, &t), Certainty::Yes);
        assert_eq!(slope_in(&p(1.0, 0.6), SlopeRange::Rising, &t), Certainty::No);
        assert_eq!(slope_in(&p(1.0, -0.1), SlopeRange::Falling, &t), Certainty::Yes);
        assert_eq!(slope_in(&p(1.0, 0.0), SlopeRange::Rising, &t), Certainty::No);
        assert_eq!(slope_in(&p(-1.0, 0.3), SlopeRange::West, &t), Certainty::Yes);
        assert_eq!(slope_in(&p(1.0, 0.3), SlopeRange::West, &t), Certainty::No);
        assert_eq!(slope_in(&p(1.0, 0.0), SlopeRange::East, &t), Certainty::Yes);
        assert!((slope_f64(&p(-1.0, -1.0)) - 1.25 * std::f64::consts::PI).abs() < 1e-12);
    }
}
