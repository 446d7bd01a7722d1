use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::real::{Real, Rounding};

/// A closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation rounds the lower end down and the upper end up, so the
/// result encloses the exact image of the operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Real,
    pub hi: Real,
}

impl Interval {
    pub fn new(lo: Real, hi: Real) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Real) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_i64(v: i64) -> Self {
        Interval::point(Real::from_i64(v))
    }

    pub fn width(&self) -> Real {
        &self.hi - &self.lo
    }

    /// Midpoint rounded to nearest at `prec` bits.
    pub fn mid(&self, prec: u32) -> Real {
        (&self.lo + &self.hi).half().round(prec, Rounding::Nearest)
    }

    pub fn contains(&self, x: &Real) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Interval {
        Interval {
            lo: (&self.lo + &o.lo).round(prec, Rounding::Floor),
            hi: (&self.hi + &o.hi).round(prec, Rounding::Ceil),
        }
    }

    pub fn sub(&self, o: &Interval, prec: u32) -> Interval {
        Interval {
            lo: (&self.lo - &o.hi).round(prec, Rounding::Floor),
            hi: (&self.hi - &o.lo).round(prec, Rounding::Ceil),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().round(prec, Rounding::Floor);
        let hi = c.iter().max().unwrap().round(prec, Rounding::Ceil);
        Interval { lo, hi }
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, o: &Interval, prec: u32) -> Interval {
        assert!(o.lo.is_positive() || o.hi.is_negative(), "interval division by an interval containing zero");
        let mut lo: Option<Real> = None;
        let mut hi: Option<Real> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let d = a.div(b, prec, Rounding::Floor);
                let u = a.div(b, prec, Rounding::Ceil);
                if lo.as_ref().is_none_or(|l| &d < l) {
                    lo = Some(d);
                }
                if hi.as_ref().is_none_or(|h| &u > h) {
                    hi = Some(u);
                }
            }
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn sqrt(&self, prec: u32) -> Interval {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        Interval {
            lo: self.lo.sqrt(prec, Rounding::Floor),
            hi: self.hi.sqrt(prec, Rounding::Ceil),
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    fn widen(&self, r: &Real, prec: u32) -> Interval {
        Interval {
            lo: (&self.lo - r).round(prec, Rounding::Floor),
            hi: (&self.hi + r).round(prec, Rounding::Ceil),
        }
    }

    fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: Real::min(&self.lo, &o.lo),
            hi: Real::max(&self.hi, &o.hi),
        }
    }
}

/// Enclosure of π at `prec` bits (cached per precision).
pub fn pi(prec: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let w = prec + 16;
    // Machin: π = 16 atan(1/5) − 4 atan(1/239).
    let fifth = Interval::new(
        Real::one().div(&Real::from_i64(5), w, Rounding::Floor),
        Real::one().div(&Real::from_i64(5), w, Rounding::Ceil),
    );
    let inv239 = Interval::new(
        Real::one().div(&Real::from_i64(239), w, Rounding::Floor),
        Real::one().div(&Real::from_i64(239), w, Rounding::Ceil),
    );
    let a = atan_small(&fifth, w).mul_pow2(4);
    let b = atan_small(&inv239, w).mul_pow2(2);
    let p = a.sub(&b, prec);
    cache.lock().unwrap().insert(prec, p.clone());
    p
}

/// Enclosure of `atan(x)`.
pub fn atan(x: &Real, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Real::zero());
    }
    if x.is_negative() {
        return atan(&-x, prec).neg();
    }
    let w = prec + 16;
    if *x > Real::one() {
        let inv = Interval::new(x.recip(w, Rounding::Floor), x.recip(w, Rounding::Ceil));
        let half_pi = pi(w).mul_pow2(-1);
        return half_pi.sub(&atan_small(&inv, w), prec);
    }
    let r = atan_small(&Interval::point(x.clone()), w);
    Interval {
        lo: r.lo.round(prec, Rounding::Floor),
        hi: r.hi.round(prec, Rounding::Ceil),
    }
}

/// Enclosure of `atan` over an interval.
pub fn atan_interval(x: &Interval, prec: u32) -> Interval {
    Interval {
        lo: atan(&x.lo, prec).lo,
        hi: atan(&x.hi, prec).hi,
    }
}

/// `atan` on `0 <= x <= 1` by halving the angle and summing the Taylor series.
fn atan_small(x: &Interval, w: u32) -> Interval {
    let one = Interval::from_i64(1);
    let mut x = x.clone();
    let mut doublings = 0;
    let limit = Real::pow2(-8);
    while x.hi > limit {
        // atan(x) = 2 atan(x / (1 + sqrt(1 + x^2)))
        let den = one.add(&one.add(&x.mul(&x, w), w).sqrt(w), w);
        x = x.div(&den, w);
        doublings += 1;
    }
    if x.hi.is_zero() {
        return Interval::point(Real::zero());
    }
    let x2 = x.mul(&x, w);
    let mut pow = x.clone();
    let mut sum = x.clone();
    let threshold = x.lo.mul_pow2(-(w as i64) - 8);
    let mut n = 0i64;
    loop {
        n += 1;
        pow = pow.mul(&x2, w);
        let term = pow.div(&Interval::from_i64(2 * n + 1), w);
        sum = if n % 2 == 1 { sum.sub(&term, w) } else { sum.add(&term, w) };
        if term.hi < threshold {
            // Alternating series with decreasing terms: the tail is bounded by the next term.
            let next = (&pow.hi * &x2.hi).div(&Real::from_i64(2 * n + 3), w, Rounding::Ceil);
            sum = sum.widen(&next, w);
            break;
        }
    }
    sum.mul_pow2(doublings)
}

/// Enclosures of `sin(x)` and `cos(x)` for `|x| <= 8`.
pub fn sin_cos(x: &Real, prec: u32) -> (Interval, Interval) {
    if x.is_negative() {
        let (s, c) = sin_cos(&-x, prec);
        return (s.neg(), c);
    }
    if x.is_zero() {
        return (Interval::point(Real::zero()), Interval::from_i64(1));
    }
    let w = prec + 32;
    let halvings = (x.magnitude().unwrap() + 4).max(0);
    let t = Interval::point(x.mul_pow2(-halvings));
    let mut s = t.clone();
    let mut c = Interval::from_i64(1);
    let mut pow = t.clone();
    let threshold = t.lo.mul_pow2(-(w as i64) - 8);
    let mut k = 1i64;
    loop {
        // pow = t^k / k!
        pow = pow.mul(&t, w).div(&Interval::from_i64(k + 1), w);
        k += 1;
        let add = (k / 2) % 2 == 0;
        if k % 2 == 0 {
            c = if add { c.add(&pow, w) } else { c.sub(&pow, w) };
        } else {
            s = if add { s.add(&pow, w) } else { s.sub(&pow, w) };
        }
        if pow.hi < threshold && k > 2 {
            let next = (&pow.hi * &t.hi).div(&Real::from_i64(k + 1), w, Rounding::Ceil);
            s = s.widen(&next, w);
            c = c.widen(&next, w);
            break;
        }
    }
    let one = Interval::from_i64(1);
    for _ in 0..halvings {
        let s2 = s.mul(&c, w).mul_pow2(1);
        let c2 = one.sub(&s.mul(&s, w).mul_pow2(1), w);
        s = clamp_unit(&s2);
        c = clamp_unit(&c2);
    }
    let fin = |i: &Interval| Interval {
        lo: i.lo.round(prec, Rounding::Floor),
        hi: i.hi.round(prec, Rounding::Ceil),
    };
    (fin(&s), fin(&c))
}

fn clamp_unit(i: &Interval) -> Interval {
    let one = Real::one();
    let m1 = -Real::one();
    Interval {
        lo: Real::max(&i.lo, &m1),
        hi: Real::min(&i.hi, &one),
    }
}

/// Enclosure of `tan(x)` for `0 <= x < π/2`.
pub fn tan(x: &Real, prec: u32) -> Interval {
    let w = prec + 16;
    let (s, c) = sin_cos(x, w);
    assert!(c.is_positive(), "tan argument outside [0, π/2)");
    let t = s.div(&c, w);
    Interval {
        lo: t.lo.round(prec, Rounding::Floor),
        hi: t.hi.round(prec, Rounding::Ceil),
    }
}

/// Enclosure of `tan` over an interval inside `[0, π/2)`.
pub fn tan_interval(x: &Interval, prec: u32) -> Interval {
    tan(&x.lo, prec).hull(&tan(&x.hi, prec))
}
