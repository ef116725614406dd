//! Midpoint-radius interval arithmetic over arbitrary-precision
//! floats. Midpoints carry the working precision; radii are magnitude
//! bookkeeping and live at a fixed small precision. Every operation
//! returns an interval that encloses the exact result for all inputs
//! inside the operands, with rounding of the midpoint and of the
//! radius arithmetic absorbed into the radius.
//!
//! Radii are floats rather than doubles because the quantities
//! enclosed here range over thousands of orders of magnitude, far
//! past the reach of an f64 exponent.

use rug::float::Round;
use rug::{Float, Rational};

/// Precision for radius arithmetic. Radii only need a sound order of
/// magnitude, not accuracy.
const RAD_PREC: u32 = 64;

/// Multiplicative padding absorbing nearest-rounding error in radius
/// computations. Each float operation is off by at most one part in
/// 2^63; a chain of a dozen stays far inside one part in 10^13.
const RAD_PAD: f64 = 1.0 + 1e-12;

/// Relative bound on the nearest-rounding error of a midpoint
/// operation at precision `p`: half an ulp is below `|x|·2^{1-p}`.
fn mid_slack(mid: &Float) -> Float {
    if mid.is_zero() {
        return Float::new(RAD_PREC);
    }
    let p = mid.prec() as i32;
    let mag = Float::with_val(RAD_PREC, mid.abs_ref());
    mag * RAD_PAD >> (p - 1)
}

/// A closed interval `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct Interval {
    mid: Float,
    rad: Float,
}

impl Interval {
    /// Wraps a float known exactly, with zero radius.
    pub fn exact(mid: Float) -> Self {
        Interval { mid, rad: Float::new(RAD_PREC) }
    }

    /// Builds from a midpoint and a certified error radius.
    pub fn new(mid: Float, rad: Float) -> Self {
        debug_assert!(rad.is_finite() && !rad.is_sign_negative());
        Interval { mid, rad: Float::with_val(RAD_PREC, rad * RAD_PAD) }
    }

    /// The exact zero interval.
    pub fn zero(prec: u32) -> Self {
        Interval::exact(Float::new(prec))
    }

    /// Rounds an exact rational to `prec` bits, with a radius
    /// covering the rounding unless the conversion was exact.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let (mid, dir) = Float::with_val_round(prec, r, Round::Nearest);
        let rad = if dir == std::cmp::Ordering::Equal {
            Float::new(RAD_PREC)
        } else {
            mid_slack(&mid)
        };
        Interval { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// True only for the exact point interval at zero.
    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    /// Sign certificate: `Some(1)` when the whole interval is
    /// positive, `Some(-1)` when negative, `Some(0)` for the exact
    /// zero point, and `None` when the interval straddles zero.
    ///
    /// A nearest-rounded endpoint that lands strictly on one side of
    /// zero certifies the true endpoint is on that side, because
    /// rounding moves a value by less than its own magnitude.
    pub fn certified_sign(&self) -> Option<i32> {
        if self.is_exact_zero() {
            return Some(0);
        }
        let lo = Float::with_val(RAD_PREC, &self.mid - &self.rad);
        if lo.is_sign_positive() && !lo.is_zero() {
            return Some(1);
        }
        let hi = Float::with_val(RAD_PREC, &self.mid + &self.rad);
        if hi.is_sign_negative() && !hi.is_zero() {
            return Some(-1);
        }
        None
    }

    /// True when zero cannot be excluded from the interval.
    pub fn contains_zero(&self) -> bool {
        !matches!(self.certified_sign(), Some(1) | Some(-1))
    }

    /// Upper bound on the magnitude of every point in the interval.
    pub fn abs_hi(&self) -> Float {
        let m = Float::with_val(RAD_PREC, self.mid.abs_ref());
        Float::with_val(RAD_PREC, m + &self.rad) * RAD_PAD
    }

    /// Lower bound on the magnitude, zero when the interval straddles.
    pub fn abs_lo(&self) -> Float {
        let m = Float::with_val(RAD_PREC, self.mid.abs_ref());
        let lo = Float::with_val(RAD_PREC, m - &self.rad) / RAD_PAD;
        if lo.is_sign_negative() {
            Float::new(RAD_PREC)
        } else {
            lo
        }
    }

    /// Certifies that every point of the interval is strictly below
    /// `bound`. `false` means not provable at this radius, not a
    /// disproof.
    pub fn certified_below(&self, bound: &Float) -> bool {
        let hi = Float::with_val(self.mid.prec(), &self.mid + &self.rad);
        let padded = Float::with_val(self.mid.prec(), &hi + mid_slack(&hi));
        padded < *bound
    }

    /// True when the other interval overlaps this one.
    pub fn overlaps(&self, other: &Interval) -> bool {
        let gap = Float::with_val(RAD_PREC, &self.mid - &other.mid).abs();
        let reach = Float::with_val(RAD_PREC, &self.rad + &other.rad) * RAD_PAD;
        gap <= reach
    }

    pub fn neg(&self) -> Interval {
        Interval {
            mid: Float::with_val(self.mid.prec(), -&self.mid),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let prec = self.mid.prec().max(other.mid.prec());
        let mid = Float::with_val(prec, &self.mid + &other.mid);
        let rad = (Float::with_val(RAD_PREC, &self.rad + &other.rad) + mid_slack(&mid)) * RAD_PAD;
        Interval { mid, rad }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let prec = self.mid.prec().max(other.mid.prec());
        let mid = Float::with_val(prec, &self.mid * &other.mid);
        let ma = Float::with_val(RAD_PREC, self.mid.abs_ref());
        let mb = Float::with_val(RAD_PREC, other.mid.abs_ref());
        let cross = Float::with_val(RAD_PREC, &ma * &other.rad)
            + Float::with_val(RAD_PREC, &mb * &self.rad)
            + Float::with_val(RAD_PREC, &self.rad * &other.rad);
        let rad = (cross + mid_slack(&mid)) * RAD_PAD;
        Interval { mid, rad }
    }

    /// Interval quotient. The divisor must have a certified sign, or
    /// `None` is returned.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        match other.certified_sign() {
            Some(1) | Some(-1) => {}
            _ => return None,
        }
        let prec = self.mid.prec().max(other.mid.prec());
        let mid = Float::with_val(prec, &self.mid / &other.mid);
        let mz = Float::with_val(RAD_PREC, mid.abs_ref());
        let den_lo = other.abs_lo();
        let num = Float::with_val(RAD_PREC, &self.rad + mz * &other.rad);
        let rad = (num / den_lo + mid_slack(&mid)) * RAD_PAD;
        Some(Interval { mid, rad })
    }

    /// Exact scaling by a power of two.
    pub fn shift(&self, e: i32) -> Interval {
        Interval {
            mid: Float::with_val(self.mid.prec(), &self.mid << e),
            rad: Float::with_val(RAD_PREC, &self.rad << e),
        }
    }

    /// Multiplication by an exact rational.
    pub fn scale_rat(&self, c: &Rational) -> Interval {
        self.mul(&Interval::from_rational(c, self.mid.prec()))
    }

    pub fn square(&self) -> Interval {
        self.mul(self)
    }
}
