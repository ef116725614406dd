//! Arbitrary-precision real evaluation: working-precision contexts, the
//! principal branch of the Lambert W function, an explicit incomplete
//! gamma tail majorant, and decimal serialization of big floats.

pub use rug::Float;
use rug::ops::Pow;

use crate::Error;

const LOG2_10: f64 = 3.321928094887362;

/// Requested decimal accuracy plus cancellation headroom; both together
/// fix the working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalContext {
    target_digits: u32,
    guard_digits: u32,
}

impl EvalContext {
    /// Context with the default guard of 30 digits.
    pub fn new(target_digits: u32) -> Self {
        EvalContext::with_guard(target_digits, 30)
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Self {
        assert!(target_digits >= 1, "need at least one digit");
        EvalContext { target_digits, guard_digits }
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Working precision in bits, at least 64.
    ///
    /// # Examples
    /// ```
    /// use xi_core::real::EvalContext;
    /// assert_eq!(EvalContext::new(20).working_bits(), 167);
    /// ```
    pub fn working_bits(&self) -> u32 {
        let bits = ((self.target_digits + self.guard_digits) as f64 * LOG2_10).ceil() as u32;
        bits.max(64)
    }

    /// The same target with `extra` more guard digits.
    pub fn widened(&self, extra: u32) -> Self {
        EvalContext::with_guard(self.target_digits, self.guard_digits + extra)
    }
}

/// Guard digits for values whose magnitude collapses like the n-th
/// coefficient family members: n/10 rounded up, plus 30.
pub fn guard_for_index(n: u32) -> u32 {
    n.div_ceil(10) + 30
}

/// Principal-branch Lambert W for x ≥ 0, by Halley iteration at working
/// precision from a coarse seed, with a fixed-point residual check
/// |W·e^W − x| ≤ x·10^{−target}.
///
/// # Errors
/// Negative input is a domain error; a residual that will not certify is
/// a precision error.
pub fn lambert_w(x: &Float, ctx: &EvalContext) -> Result<Float, Error> {
    let prec = ctx.working_bits();
    if *x < 0 {
        return Err(Error::Domain(format!("lambert_w of negative input {}", x.to_f64())));
    }
    if x.is_zero() {
        return Ok(Float::new(prec));
    }

    let e = Float::with_val(prec, 1).exp();
    let mut w = if *x <= e {
        // x/(1+x) is within a few tens of percent on (0, e]
        Float::with_val(prec, x / Float::with_val(prec, 1 + x))
    } else {
        let l1 = Float::with_val(prec, x.ln_ref());
        let l2 = Float::with_val(prec, l1.ln_ref());
        Float::with_val(prec, &l1 - &l2) + Float::with_val(prec, &l2 / &l1)
    };

    let step_tol = Float::with_val(prec, Float::u_pow_u(2, prec.saturating_sub(8))).recip();
    for _ in 0..200 {
        let ew = Float::with_val(prec, w.exp_ref());
        let f = Float::with_val(prec, &w * &ew) - x;
        if f.is_zero() {
            break;
        }
        let wp1 = Float::with_val(prec, &w + 1u32);
        let wp2 = Float::with_val(prec, &w + 2u32);
        let denom = Float::with_val(prec, &ew * &wp1)
            - Float::with_val(prec, &wp2 * &f) / Float::with_val(prec, 2 * &wp1);
        let step = f / denom;
        w -= &step;
        let rel = Float::with_val(prec, step.abs_ref()) / Float::with_val(prec, w.abs_ref());
        if rel < step_tol {
            break;
        }
    }

    let residual = (Float::with_val(prec, &w * Float::with_val(prec, w.exp_ref())) - x).abs();
    let tol = Float::with_val(prec, 10).pow(-(ctx.target_digits as i32)) * x;
    if residual > tol {
        return Err(Error::Precision(format!(
            "lambert_w residual {:e} exceeds tolerance {:e}",
            residual.to_f64(),
            tol.to_f64()
        )));
    }
    Ok(w)
}

/// Explicit majorant of the tail ∫_a^∞ e^{−cx} x^r dx:
/// c^{−r−1}·2^r·((ac)^r + Γ(r+1))·e^{−ac}.
///
/// # Errors
/// Requires a, r ≥ 0 and c > 0.
pub fn incomplete_gamma_tail_bound(
    a: &Float,
    r: &Float,
    c: &Float,
    ctx: &EvalContext,
) -> Result<Float, Error> {
    if *a < 0 || *r < 0 || *c <= 0 {
        return Err(Error::Input("tail bound wants a, r >= 0 and c > 0".into()));
    }
    let prec = ctx.working_bits();
    let ac = Float::with_val(prec, a * c);
    let power = if ac.is_zero() && r.is_zero() {
        Float::with_val(prec, 1)
    } else {
        Float::with_val(prec, (&ac).pow(r))
    };
    let gamma = Float::with_val(prec, r + 1u32).gamma();
    let two_r = Float::with_val(prec, r.exp2_ref());
    let decay = Float::with_val(prec, (-ac).exp_ref());
    let scale = Float::with_val(prec, c.pow(&Float::with_val(prec, r + 1u32))).recip();
    Ok(scale * two_r * (power + gamma) * decay)
}

/// The sandwich (1 − 1/W(x))·log c ≤ W(cx) − W(x) ≤ log c, returned as
/// the (lower, upper) pair. Panics if the evaluated middle ever escapes
/// the sandwich beyond rounding slack.
///
/// # Errors
/// Propagates Lambert W failures; requires x > 0 and c ≥ 1.
pub fn lambert_w_shift_bounds(
    x: &Float,
    c: &Float,
    ctx: &EvalContext,
) -> Result<(Float, Float), Error> {
    if *x <= 0 || *c < 1 {
        return Err(Error::Input("shift bounds want x > 0 and c >= 1".into()));
    }
    let prec = ctx.working_bits();
    let wx = lambert_w(x, ctx)?;
    let wcx = lambert_w(&Float::with_val(prec, c * x), ctx)?;
    let log_c = Float::with_val(prec, c.ln_ref());
    let lower = Float::with_val(prec, 1 - Float::with_val(prec, wx.recip_ref())) * &log_c;
    let middle = Float::with_val(prec, &wcx - &wx);
    let slack = Float::with_val(prec, 10).pow(-(ctx.target_digits as i32))
        * Float::with_val(prec, 1 + Float::with_val(prec, log_c.abs_ref()));
    assert!(
        middle >= Float::with_val(prec, &lower - &slack)
            && middle <= Float::with_val(prec, &log_c + &slack),
        "Lambert W shift sandwich violated: {} <= {} <= {} failed",
        lower.to_f64(),
        middle.to_f64(),
        log_c.to_f64()
    );
    Ok((lower, log_c))
}

/// Rounds to `digits` significant decimal digits in scientific notation,
/// e.g. `4.8450426112725879772e-2568`.
pub fn to_sci_string(x: &Float, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_f64().to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero float has an exponent") - 1;
    let sign = if neg { "-" } else { "" };
    if mantissa.len() == 1 {
        format!("{sign}{mantissa}e{exp}")
    } else {
        format!("{sign}{}.{}e{exp}", &mantissa[..1], &mantissa[1..])
    }
}

/// Parses a decimal (plain or scientific) string at the given precision.
///
/// # Errors
/// Unparseable input is an input error.
pub fn parse_decimal(s: &str, prec: u32) -> Result<Float, Error> {
    Float::parse(s)
        .map(|incomplete| Float::with_val(prec, incomplete))
        .map_err(|e| Error::Input(format!("bad decimal {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EvalContext {
        EvalContext::new(20)
    }

    fn f(prec: u32, v: f64) -> Float {
        Float::with_val(prec, v)
    }

    #[test]
    fn lambert_w_fixed_points() {
        let c = ctx();
        let prec = c.working_bits();
        assert!(lambert_w(&Float::new(prec), &c).unwrap().is_zero());

        let e = Float::with_val(prec, 1).exp();
        let we = lambert_w(&e, &c).unwrap();
        let err = Float::with_val(prec, &we - &Float::with_val(prec, 1)).abs();
        assert!(err < f(prec, 1e-19));

        let x = Float::with_val(prec, 3) * Float::with_val(prec, 3).exp();
        let w = lambert_w(&x, &c).unwrap();
        let err = Float::with_val(prec, &w - &Float::with_val(prec, 3)).abs();
        assert!(err < f(prec, 1e-18));
    }

    #[test]
    fn lambert_w_rejects_negatives() {
        let c = ctx();
        assert!(matches!(lambert_w(&f(c.working_bits(), -1.0), &c), Err(Error::Domain(_))));
    }

    #[test]
    fn tail_bound_known_values() {
        let c = ctx();
        let prec = c.working_bits();
        let b = incomplete_gamma_tail_bound(&f(prec, 0.0), &f(prec, 0.0), &f(prec, 1.0), &c)
            .unwrap();
        assert_eq!(b.to_f64(), 2.0);

        // closed form of the r = 0 tail is e^{-ac}/c
        let b = incomplete_gamma_tail_bound(&f(prec, 10.0), &f(prec, 0.0), &f(prec, 2.0), &c)
            .unwrap();
        let exact = f(prec, -20.0).exp() / 2u32;
        assert!(b >= exact);
        assert!(b <= Float::with_val(prec, &exact * &f(prec, 2.001)));
    }

    #[test]
    fn shift_bounds_equality_case() {
        let c = ctx();
        let prec = c.working_bits();
        let (lo, hi) =
            lambert_w_shift_bounds(&f(prec, 636.619), &f(prec, 1.0), &c).unwrap();
        assert!(lo.is_zero());
        assert!(hi.is_zero());
    }

    #[test]
    fn sci_string_round_trip() {
        let x = parse_decimal("4.8450426112725879772e-2568", 200).unwrap();
        assert_eq!(to_sci_string(&x, 20), "4.8450426112725879772e-2568");
        assert_eq!(to_sci_string(&x, 4), "4.845e-2568");
        let neg = parse_decimal("-2.5e3", 64).unwrap();
        assert_eq!(to_sci_string(&neg, 2), "-2.5e3");
        assert_eq!(to_sci_string(&Float::new(64), 5), "0");
    }

    #[test]
    fn context_precision_floor() {
        assert_eq!(EvalContext::with_guard(1, 1).working_bits(), 64);
        assert_eq!(guard_for_index(1000), 130);
        assert_eq!(guard_for_index(0), 30);
    }
}
