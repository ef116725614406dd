//! Tanh-sinh quadrature for integrals of the shape
//!
//! ```text
//!     ∫_0^∞ f(x) dx,   |f(x)| ≤ exp(K) · x^N · exp(c·x − A·e^{g·x} [− x²/16])
//! ```
//!
//! which covers every integral the oracle layer needs: a polynomial
//! factor, at most exponential growth, and doubly exponential decay.
//! The envelope is log-concave, so the integrand has a single peak.
//! The domain is cut off where an explicit majorant shows the tail is
//! below tolerance, the peak is made a node boundary by splitting the
//! interval there, and each piece is handled by tanh-sinh doubling
//! with interval-order parallel node evaluation.
//!
//! All error accounting is one-sided and explicit: the returned
//! `est_error` covers the quadrature truncation, the nodes skipped by
//! the fast pre-filter, and accumulated rounding, while `tail_bound`
//! covers the discarded domain `[X, ∞)`.

use crate::par;
use crate::Error;
use rug::float::Constant;
use rug::Float;

const LN_10: f64 = core::f64::consts::LN_10;
const PI_F: f64 = core::f64::consts::PI;

/// Extra working bits on top of the caller's precision, absorbing the
/// rounding noise of summing thousands of nodes.
const EXTRA_BITS: u32 = 64;

/// Hard cap on step halvings; `h` starts at 1/2 and is halved per level.
const MAX_LEVELS: u32 = 14;

/// Levels that must complete before the convergence test may stop the
/// doubling, so a single accidental small difference cannot end it.
const MIN_LEVELS: u32 = 3;

/// log of a pointwise upper bound for the integrand on `[0, ∞)`:
/// `K + N·ln x + c·x − A·e^{g·x}` minus `x²/16` when `gauss16` is set.
#[derive(Clone, Copy, Debug)]
pub struct Envelope {
    /// Exponent of the polynomial factor `x^N`.
    pub x_power: u32,
    /// Linear growth rate `c` in the exponent.
    pub lin: f64,
    /// Amplitude `A > 0` of the doubly exponential decay term.
    pub decay_a: f64,
    /// Rate `g > 0` inside the decay term `A·e^{g·x}`.
    pub decay_g: f64,
    /// Whether the bound carries an extra factor `e^{-x²/16}`.
    pub gauss16: bool,
    /// Additive log constant `K` in front of the bound.
    pub log_const: f64,
}

impl Envelope {
    /// Log of the envelope at `x ≥ 0`; `-inf` at `x = 0` when `N > 0`.
    pub fn log_value(&self, x: f64) -> f64 {
        let mut v = self.log_const + self.lin * x - self.decay_a * (self.decay_g * x).exp();
        if self.x_power > 0 {
            v += f64::from(self.x_power) * x.ln();
        }
        if self.gauss16 {
            v -= x * x / 16.0;
        }
        v
    }

    /// Derivative of `log_value`; strictly decreasing in `x`.
    fn slope(&self, x: f64) -> f64 {
        let mut d = self.lin - self.decay_a * self.decay_g * (self.decay_g * x).exp();
        if self.x_power > 0 {
            d += f64::from(self.x_power) / x;
        }
        if self.gauss16 {
            d -= x / 8.0;
        }
        d
    }

    /// Location of the envelope maximum. Zero when the envelope is
    /// decreasing from the start, which requires `c < A·g`.
    pub fn peak(&self) -> f64 {
        if self.x_power == 0 {
            debug_assert!(self.slope(0.0) <= 0.0);
            return 0.0;
        }
        let mut hi = 1.0;
        while self.slope(hi) > 0.0 {
            hi *= 2.0;
            assert!(hi < 1e9, "envelope has no interior peak below 1e9");
        }
        let mut lo = 1e-30;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// First `X` past the peak where the explicit tail majorant
    /// `env(X) / |d/dx log env(X)|` drops below `exp(ln_tol)`.
    /// Returns `(X, ln of the tail bound)`.
    ///
    /// Validity: the log-slope is decreasing, so for `x ≥ X` the
    /// envelope is below `env(X)·e^{-D·(x-X)}` with `D` the slope
    /// magnitude at `X`, and the tail integral is below `env(X)/D`.
    fn cutoff(&self, ln_tol: f64) -> Result<(f64, f64), Error> {
        let mut x = self.peak() + 1.0;
        for _ in 0..200_000 {
            let d = -self.slope(x);
            if d >= 1.0 {
                let ln_tail = self.log_value(x) - d.ln();
                if ln_tail <= ln_tol {
                    return Ok((x, ln_tail));
                }
            }
            x += 0.25;
        }
        Err(Error::Precision(
            "no domain cutoff found; envelope decays too slowly".into(),
        ))
    }

    /// Crude log-magnitude estimate of the full integral, from a
    /// coarse Riemann sum of the envelope in log space. Only used to
    /// seed tolerances, so a few percent either way is irrelevant.
    fn log_integral_estimate(&self) -> f64 {
        let p = self.peak();
        let top = self.log_value(p.max(1e-12));
        let h = 0.0625;
        let mut sum = 0.0f64;
        let mut x = 0.0f64;
        loop {
            let lv = self.log_value(x);
            sum += (lv - top).exp();
            if x > p && lv - top < -80.0 {
                break;
            }
            x += h;
            assert!(x < 1e7, "envelope mass did not localize");
        }
        top + (sum * h).ln()
    }
}

/// Outcome of one adaptive integration.
#[derive(Clone, Debug)]
pub struct QuadResult {
    /// The computed integral over `[0, X]`.
    pub value: Float,
    /// Bound on quadrature truncation, skipped nodes, and rounding.
    pub est_error: Float,
    /// Bound on the discarded tail `∫_X^∞`.
    pub tail_bound: Float,
    /// Number of integrand evaluations performed.
    pub nodes: u64,
    /// Deepest doubling level reached across the pieces.
    pub levels: u32,
}

impl QuadResult {
    /// Total absolute error bound: quadrature plus domain tail.
    pub fn total_error(&self) -> Float {
        Float::with_val(64, &self.est_error + &self.tail_bound)
    }
}

/// `ln cosh y` without overflow for large `y`.
fn ln_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - core::f64::consts::LN_2
}

/// Integrates `f` over `[0, ∞)` to roughly `target_digits` relative
/// accuracy, working at `prec + 64` bits. The integrand must respect
/// the envelope pointwise; the envelope drives domain truncation and
/// node pruning, while convergence is judged on the computed sums.
///
/// `f` is called as `f(x, working_precision)` and must return the
/// integrand value at that precision.
pub fn integrate_peaked<F>(
    f: &F,
    env: &Envelope,
    target_digits: u32,
    prec: u32,
) -> Result<QuadResult, Error>
where
    F: Fn(&Float, u32) -> Float + Sync,
{
    let work = prec + EXTRA_BITS;
    let ln_i = env.log_integral_estimate();
    let ln_tol_abs = ln_i - LN_10 * (f64::from(target_digits) + 8.0);

    let (x_cut, ln_tail) = env.cutoff(ln_tol_abs - 3.0)?;
    let tail_bound = Float::with_val(64, ln_tail + 1e-9).exp();

    let peak = env.peak();
    let log_mag = env.log_value(peak.max(0.0));
    let delta = (log_mag - ln_tol_abs).max(0.0);
    let tau_end = ((delta + 30.0) / PI_F).asinh() + 0.5;

    // Absolute stop: converged when a doubling changes the sum by
    // less than a hundredth of the node-level tolerance. The pruning
    // filter sits a factor e^12 below that, so skipped nodes cannot
    // hold the difference above the gate.
    let gate_abs = Float::with_val(64, ln_tol_abs).exp() / 100u32;

    let mut pieces: Vec<(f64, f64)> = Vec::new();
    if peak > 0.05 && peak < x_cut - 0.05 {
        pieces.push((0.0, peak));
        pieces.push((peak, x_cut));
    } else {
        pieces.push((0.0, x_cut));
    }

    let mut value = Float::new(work);
    let mut est_error = Float::new(64);
    let mut nodes = 0u64;
    let mut levels = 0u32;

    for &(a, b) in &pieces {
        let piece = tanh_sinh_piece(f, a, b, env, tau_end, ln_tol_abs, &gate_abs, work)?;
        value += piece.value;
        est_error += piece.est_error;
        nodes += piece.nodes;
        levels = levels.max(piece.levels);
    }

    // Rounding slack: every node addition can lose an ulp at `work`
    // bits relative to the running magnitude.
    let ulp_slack = Float::with_val(64, value.clone().abs())
        * Float::with_val(64, Float::u_pow_u(2, work - 10)).recip()
        * Float::with_val(64, nodes.max(1));
    est_error += ulp_slack;

    Ok(QuadResult {
        value,
        est_error,
        tail_bound,
        nodes,
        levels,
    })
}

struct PieceResult {
    value: Float,
    est_error: Float,
    nodes: u64,
    levels: u32,
}

/// Tanh-sinh integration of one finite piece `[a, b]` with step
/// doubling. Nodes are pruned with a fast `f64` filter when the
/// envelope says weight times magnitude is far below tolerance; the
/// skipped mass is charged to the error estimate.
fn tanh_sinh_piece<F>(
    f: &F,
    a: f64,
    b: f64,
    env: &Envelope,
    tau_end: f64,
    ln_tol_abs: f64,
    gate_abs: &Float,
    work: u32,
) -> Result<PieceResult, Error>
where
    F: Fn(&Float, u32) -> Float + Sync,
{
    let pi = Float::with_val(work, Constant::Pi);
    // Exact in Float, so adjacent pieces share their junction point
    // to the last bit; rounding the midpoint in f64 would leave a gap
    // of f64-epsilon width at the seam.
    let a_w = Float::with_val(work, a);
    let b_w = Float::with_val(work, b);
    let mid = Float::with_val(work, &a_w + &b_w) / 2u32;
    let half = Float::with_val(work, &b_w - &a_w) / 2u32;
    let half_f = 0.5 * (b - a);
    let ln_half = half_f.ln();
    let ln_pi_half = (PI_F / 2.0).ln();
    let mid_f = 0.5 * (a + b);

    let eval_node = |j: i64, h: &Float| -> Option<Float> {
        let tau = Float::with_val(work, h * j);
        let tau_f = tau.to_f64();

        let s_f = 0.5 * PI_F * tau_f.sinh();
        let ln_w = ln_half + ln_pi_half + ln_cosh(tau_f) - 2.0 * ln_cosh(s_f);
        // Near the lower endpoint the direct map `mid + half·tanh s`
        // cancels to zero in f64 long before the true node does, so
        // the distance from the endpoint is taken in log form via
        // x - a = half·2e^{2s}/(1 + e^{2s}).
        let lv = if a == 0.0 && env.x_power > 0 && s_f < -5.0 {
            let ln_x = ln_half + core::f64::consts::LN_2 + 2.0 * s_f - (2.0 * s_f).exp().ln_1p();
            let x_small = ln_x.exp();
            env.log_const + f64::from(env.x_power) * ln_x + env.lin * x_small
                - env.decay_a * (env.decay_g * x_small).exp()
                - if env.gauss16 { x_small * x_small / 16.0 } else { 0.0 }
        } else {
            env.log_value(mid_f + half_f * s_f.tanh())
        };
        if ln_w + lv < ln_tol_abs - 12.0 {
            return None;
        }

        let s = Float::with_val(work, tau.sinh_ref()) * &pi / 2u32;
        let cosh_tau = Float::with_val(work, tau.cosh_ref());
        let cosh_s = Float::with_val(work, s.cosh_ref());
        let tanh_s = Float::with_val(work, s.tanh_ref());
        let x = Float::with_val(work, &mid + &half * tanh_s);
        let weight =
            Float::with_val(work, &half * &pi) * cosh_tau / 2u32 / Float::with_val(work, cosh_s.square_ref());
        let val = weight * f(&x, work);
        if std::env::var("XI_QUAD_DUMP").is_ok() {
            let ln_val = Float::with_val(64, val.clone().abs()).ln().to_f64();
            eprintln!("node tau={tau_f:.8} ln|wf|={ln_val:.4}");
        }
        Some(val)
    };

    let mut h = Float::with_val(work, 0.5f64);
    let mut h_f = 0.5f64;

    let j_max = (tau_end / h_f).ceil() as i64;
    let js: Vec<i64> = (-j_max..=j_max).collect();
    let (sum0, count0) = par::sum_indexed(&js, |j| eval_node(j, &h), work);
    let mut total = Float::with_val(work, &sum0 * &h);
    let mut nodes = count0;
    let mut last_diff = Float::with_val(64, f64::INFINITY);
    let mut level = 0u32;

    loop {
        level += 1;
        if level > MAX_LEVELS {
            return Err(Error::Precision(format!(
                "tanh-sinh did not converge in {MAX_LEVELS} levels (last diff {:.3e})",
                last_diff.to_f64()
            )));
        }
        h /= 2u32;
        h_f *= 0.5;

        let j_max = (tau_end / h_f).ceil() as i64;
        let js: Vec<i64> = (-j_max..=j_max).filter(|j| j % 2 != 0).collect();
        let (sum_odd, count) = par::sum_indexed(&js, |j| eval_node(j, &h), work);
        nodes += count;

        let refined =
            Float::with_val(work, Float::with_val(work, &total / 2u32) + Float::with_val(work, &sum_odd * &h));
        let diff = Float::with_val(64, Float::with_val(work, &refined - &total).abs_ref());
        total = refined;
        last_diff = diff.clone();

        if std::env::var("XI_QUAD_DEBUG").is_ok() {
            eprintln!(
                "piece [{a:.3}, {b:.3}] level {level}: total {:.6e} diff {:.3e} gate {:.3e} nodes {count}",
                total.to_f64(),
                diff.to_f64(),
                gate_abs.to_f64()
            );
        }
        if level >= MIN_LEVELS {
            // Secondary stop at the working-precision noise floor, in
            // case the tolerance seeded from the envelope estimate is
            // far more demanding than `work` bits can resolve.
            let noise = Float::with_val(64, total.clone().abs())
                * Float::with_val(64, Float::u_pow_u(2, work - 16)).recip();
            if diff <= *gate_abs || diff <= noise {
                break;
            }
        }
    }

    let prune_slack = Float::with_val(64, ln_tol_abs - 12.0).exp() * (2.2 * tau_end + 2.0);
    let est_error = Float::with_val(64, 4u32 * last_diff + prune_slack);

    Ok(PieceResult {
        value: total,
        est_error,
        nodes,
        levels: level,
    })
}
