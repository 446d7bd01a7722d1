use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for operations that cannot be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Floor,
    Ceil,
}

impl Rounding {
    fn flip(self) -> Self {
        match self {
            Rounding::Nearest => Rounding::Nearest,
            Rounding::Floor => Rounding::Ceil,
            Rounding::Ceil => Rounding::Floor,
        }
    }
}

/// A dyadic rational `mant * 2^exp`.
///
/// Addition, subtraction and multiplication are exact. Division and square
/// roots take a precision in bits and a rounding direction. The mantissa is
/// kept odd (or zero) so equal values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Real {
    mant: BigInt,
    exp: i64,
}

impl Real {
    pub fn zero() -> Self {
        Real { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Real::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Real::from_parts(BigInt::from(v), 0)
    }

    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Real::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Real { mant, exp }
        } else {
            Real {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    /// Exact conversion; panics on NaN or infinity.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Real::zero();
        }
        let bits = v.to_bits();
        let sign = bits >> 63;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
        let m = BigInt::from(m);
        Real::from_parts(if sign == 1 { -m } else { m }, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Real {
        Real {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|) + 1`, the position just above the leading bit.
    pub fn magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.bits() as i64 + self.exp)
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() {
            return Real::zero();
        }
        Real {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn half(&self) -> Real {
        self.mul_pow2(-1)
    }

    pub fn pow2(k: i64) -> Real {
        Real { mant: BigInt::one(), exp: k }
    }

    pub fn square(&self) -> Real {
        self * self
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Rounding) -> Real {
        if self.bits() <= prec as u64 {
            return self.clone();
        }
        round_parts(self.is_negative(), self.mant.magnitude().clone(), self.exp, false, prec, mode)
    }

    pub fn div(&self, other: &Real, prec: u32, mode: Rounding) -> Real {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero();
        }
        let neg = self.is_negative() != other.is_negative();
        let a = self.mant.magnitude();
        let b = other.mant.magnitude();
        let shift = (prec as i64 + 2 + b.bits() as i64 - a.bits() as i64).max(0) as u64;
        let (q, r) = (a << shift).div_rem(b);
        round_parts(neg, q, self.exp - other.exp - shift as i64, !r.is_zero(), prec, mode)
    }

    pub fn sqrt(&self, prec: u32, mode: Rounding) -> Real {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return Real::zero();
        }
        let m = self.mant.magnitude();
        let mut shift = (2 * prec as i64 + 4 - m.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n = m << shift as u64;
        let q = n.sqrt();
        let exact = &q * &q == n;
        round_parts(false, q, (self.exp - shift) / 2, !exact, prec, mode)
    }

    pub fn recip(&self, prec: u32, mode: Rounding) -> Real {
        Real::one().div(self, prec, mode)
    }

    pub fn min(a: &Real, b: &Real) -> Real {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Real, b: &Real) -> Real {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Approximate conversion; saturates to zero or infinity outside f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (m, e) = if bits > 64 {
            let cut = bits - 64;
            ((self.mant.abs() >> cut).to_f64().unwrap_or(0.0), self.exp + cut as i64)
        } else {
            (self.mant.abs().to_f64().unwrap_or(0.0), self.exp)
        };
        let v = if e > 2000 {
            f64::INFINITY
        } else if e < -2200 {
            0.0
        } else {
            let mut v = m;
            let mut e = e;
            while e != 0 {
                let step = e.clamp(-1000, 1000);
                v *= 2f64.powi(step as i32);
                e -= step;
            }
            v
        };
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Scientific decimal text with `digits` significant digits, rounded to nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let m = self.mant.magnitude().clone();
        // Initial guess for the decimal exponent of the leading digit.
        let lg = (self.bits() as i64 + self.exp) as f64 * std::f64::consts::LOG10_2;
        let mut e10 = lg.floor() as i64 - digits as i64 + 1;
        let (d, e10) = loop {
            let d = scaled_decimal(&m, self.exp, e10);
            let len = d.to_string().len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break (d, e10);
            }
        };
        let s = d.to_string();
        let exp10 = e10 + s.len() as i64 - 1;
        let trimmed = s.trim_end_matches('0');
        let (head, tail) = trimmed.split_at(1);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        if exp10 != 0 {
            out.push('e');
            out.push_str(&exp10.to_string());
        }
        out
    }

    /// Decimal digits that guarantee a round trip through [`Real::parse_decimal`] at `prec` bits.
    pub fn round_trip_digits(prec: u32) -> usize {
        (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
    }

    /// Parses `[-]digits[.digits][e[+-]digits]`, rounding to nearest at `prec` bits.
    pub fn parse_decimal(text: &str, prec: u32) -> Result<Real, ParseRealError> {
        let err = || ParseRealError(text.to_string());
        let s = text.trim();
        let (neg, s) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (num, exp_part) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], Some(&s[i + 1..])),
            None => (s, None),
        };
        let mut e10: i64 = match exp_part {
            Some(e) => e.parse().map_err(|_| err())?,
            None => 0,
        };
        let (int_part, frac_part) = match num.find('.') {
            Some(i) => (&num[..i], &num[i + 1..]),
            None => (num, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        e10 -= frac_part.len() as i64;
        let d: BigUint = if digits.is_empty() {
            BigUint::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        if d.is_zero() {
            return Ok(Real::zero());
        }
        let d = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, d);
        let value = if e10 >= 0 {
            Real::from_parts(d * BigInt::from(10u32).pow(e10 as u32), 0).round(prec, Rounding::Nearest)
        } else {
            let den = Real::from_parts(BigInt::from(10u32).pow((-e10) as u32), 0);
            Real::from_parts(d, 0).div(&den, prec, Rounding::Nearest)
        };
        Ok(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a decimal number: {0:?}")]
pub struct ParseRealError(pub String);

/// `round(m * 2^e / 10^e10)` to the nearest integer, ties to even.
fn scaled_decimal(m: &BigUint, e: i64, e10: i64) -> BigUint {
    let mut num = m.clone();
    let mut den = BigUint::one();
    if e >= 0 {
        num <<= e as u64;
    } else {
        den <<= (-e) as u64;
    }
    if e10 >= 0 {
        den *= BigUint::from(10u32).pow(e10 as u32);
    } else {
        num *= BigUint::from(10u32).pow((-e10) as u32);
    }
    let (q, r) = num.div_rem(&den);
    let twice = r << 1u32;
    match twice.cmp(&den) {
        Ordering::Greater => q + 1u32,
        Ordering::Equal if q.bit(0) => q + 1u32,
        _ => q,
    }
}

/// Rounds `(-1)^neg * mag * 2^exp` (plus a sticky tail below the last bit) to `prec` bits.
fn round_parts(neg: bool, mut mag: BigUint, mut exp: i64, sticky: bool, prec: u32, mode: Rounding) -> Real {
    let prec = prec.max(2) as u64;
    let bits = mag.bits();
    if bits <= prec {
        if !sticky {
            return signed(neg, mag, exp);
        }
        let pad = prec + 1 - bits;
        mag <<= pad;
        exp -= pad as i64;
    }
    let cut = mag.bits() - prec;
    let kept = &mag >> cut;
    let rem = &mag - (&kept << cut);
    let inexact = sticky || !rem.is_zero();
    let mode = if neg { mode.flip() } else { mode };
    let up = match mode {
        Rounding::Floor => false,
        Rounding::Ceil => inexact,
        Rounding::Nearest => {
            let half = BigUint::one() << (cut - 1);
            match rem.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => sticky || kept.bit(0),
            }
        }
    };
    let kept = if up { kept + 1u32 } else { kept };
    signed(neg, kept, exp + cut as i64)
}

fn signed(neg: bool, mag: BigUint, exp: i64) -> Real {
    Real::from_parts(BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag), exp)
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.magnitude().unwrap(), other.magnitude().unwrap());
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        (self - other).signum().cmp(&0)
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let shift = (hi.exp - lo.exp) as u64;
        Real::from_parts((&hi.mant << shift) + &lo.mant, lo.exp)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        self + &(-o)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        if self.is_zero() || o.is_zero() {
            return Real::zero();
        }
        Real {
            mant: &self.mant * &o.mant,
            exp: self.exp + o.exp,
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $f(self, o: Real) -> Real {
                (&self).$f(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $f(self, o: &Real) -> Real {
                (&self).$f(o)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $f(self, o: Real) -> Real {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(Real::round_trip_digits(self.bits().max(2) as u32)))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(Real::round_trip_digits(self.bits().max(2) as u32)))
    }
}

impl From<i64> for Real {
    fn from(v: i64) -> Self {
        Real::from_i64(v)
    }
}
