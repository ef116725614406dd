//! Certified reference values for the xi function's even derivatives
//! at the center, the Taylor coefficients γ(n), the Turán-Hermite
//! coefficients b₂ₙ, and Laplace-type integrals, all computed from
//! integral representations against the theta kernel
//!
//! ```text
//!     ω(t) = Σ_{m ≥ 1} (2π²m⁴t² − 3πm²t) e^{−πm²t},        t ≥ 1,
//! ```
//!
//! with every approximation step carrying an explicit bound: the
//! series truncation, the quadrature, and the discarded domain tail.
//! Results come back as value plus absolute error bound, and the
//! number of certified decimal digits is derived from that bound,
//! never assumed.
//!
//! Values are memoized in process memory and, when a cache directory
//! is configured, as one small JSON file per quantity so repeated
//! runs skip the integration entirely.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::RwLock;
use std::time::{SystemTime, UNIX_EPOCH};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::coeffs::SuitableFn;
use crate::quad::{integrate_peaked, Envelope};
use crate::real::{to_sci_string, EvalContext};
use crate::Error;

const LN_10: f64 = core::f64::consts::LN_10;
const PI_F: f64 = core::f64::consts::PI;

/// Number of theta-series terms needed so the truncation error stays
/// below `10^{-(digits + 10)}` relative to ω(t) for every `t ≥ 1`.
pub fn omega_series_terms(digits: u32) -> u32 {
    let m = ((f64::from(digits) + 10.0) * LN_10 / PI_F + 6.0).sqrt().ceil();
    m as u32
}

/// Relative truncation bound for the `terms`-term partial sum of ω,
/// valid uniformly in `t ≥ 1`.
///
/// Each dropped term is at most `2.005·π²m⁴t²e^{−πm²t}`, the dropped
/// sum is within a factor 1.01 of its first term, and `ω(t)` itself is
/// at least `10.3·t·e^{−πt}`; the quotient is decreasing in `t`, so
/// its value at `t = 1` bounds the lot.
pub fn omega_tail_rel(terms: u32) -> f64 {
    let m1 = f64::from(terms + 1);
    2.01 * m1.powi(4) * (-PI_F * (m1 * m1 - 1.0)).exp()
}

/// Evaluates the theta kernel ω(t) by direct summation of `terms`
/// terms at precision `prec`. Only defined on `t ≥ 1`, where the
/// series converges fast and every term is positive.
pub fn omega(t: &Float, terms: u32, prec: u32) -> Result<Float, Error> {
    if !(*t >= 1u32) {
        return Err(Error::Domain(format!(
            "omega(t) is evaluated only for t >= 1, got {:.6}",
            t.to_f64()
        )));
    }
    let pi = Float::with_val(prec, Constant::Pi);
    let t2 = Float::with_val(prec, t.square_ref());
    let two_pi2_t2 = Float::with_val(prec, pi.square_ref()) * &t2 * 2u32;
    let three_pi_t = Float::with_val(prec, &pi * t) * 3u32;

    let q = Float::with_val(prec, -(Float::with_val(prec, &pi * t))).exp();
    let q2 = Float::with_val(prec, q.square_ref());
    let mut q_m_sq = q.clone();
    let mut q_odd = q;

    let mut sum = Float::new(prec);
    for m in 1..=u64::from(terms) {
        let m2 = m * m;
        let m4 = m2 * m2;
        let coeff = Float::with_val(prec, &two_pi2_t2 * m4) - Float::with_val(prec, &three_pi_t * m2);
        sum += coeff * &q_m_sq;
        q_odd *= &q2;
        q_m_sq *= &q_odd;
    }
    Ok(sum)
}

/// ξ(1/2) through the product formula `−(1/8)·π^{−1/4}·Γ(1/4)·ζ(1/2)`,
/// an algebraically independent route from the integral
/// representations. Returns the value and an absolute error bound
/// covering the handful of correctly rounded operations.
pub fn reference_xi_half(ctx: &EvalContext) -> (Float, Float) {
    let prec = ctx.working_bits();
    let pi = Float::with_val(prec, Constant::Pi);
    let quarter = Float::with_val(prec, 0.25f64);
    let gamma_q = Float::with_val(prec, quarter.gamma_ref());
    let zeta_h = Float::with_val(prec, 0.5f64).zeta();
    let pi_pow = pi.pow(&Float::with_val(prec, -0.25f64));
    let value = Float::with_val(prec, &pi_pow * &gamma_q) * zeta_h / -8i32;
    let err = Float::with_val(64, value.abs_ref()) * Float::with_val(64, Float::u_pow_u(2, prec - 4)).recip();
    (value, err)
}

/// A certified value: the payload plus an absolute error bound that
/// every downstream consumer must respect.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// The computed quantity.
    pub value: Float,
    /// Absolute bound on the total error in `value`.
    pub error_bound: Float,
    /// Which quantity this is.
    pub kind: String,
    /// The index `n` of the quantity.
    pub n: u32,
}

impl OracleResult {
    /// Number of leading decimal digits guaranteed correct by the
    /// error bound, conservatively one less than the bound allows.
    pub fn certified_digits(&self) -> u32 {
        if self.value.is_zero() {
            return 0;
        }
        if self.error_bound.is_zero() {
            return u32::MAX / 2;
        }
        let ratio_ln = Float::with_val(64, self.error_bound.ln_ref()).to_f64()
            - Float::with_val(64, Float::with_val(64, self.value.abs_ref()).ln_ref()).to_f64();
        let digits = (-ratio_ln / LN_10).floor() - 1.0;
        if digits <= 0.0 {
            0
        } else {
            digits as u32
        }
    }

    /// Decimal rendering clamped to the certified digit count, so a
    /// printout never shows more digits than the bound supports.
    pub fn to_decimal(&self, digits: u32) -> String {
        let shown = digits.min(self.certified_digits()).max(1) as usize;
        to_sci_string(&self.value, shown)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    kind: String,
    n: u32,
    digits: u32,
    value: String,
    error: String,
    unix_time: u64,
}

#[derive(Clone)]
struct MemEntry {
    value: Float,
    error: Float,
    digits: u32,
}

/// Evaluator with two cache levels: a process-wide map and an
/// optional on-disk JSON store. Laplace integrals are memoized in
/// memory only, since their key space (index, rate, weight) is too
/// fine-grained to be worth files.
pub struct Oracle {
    cache_dir: Option<PathBuf>,
    mem: RwLock<HashMap<String, MemEntry>>,
}

impl Oracle {
    /// Creates an oracle, optionally backed by a cache directory.
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Oracle {
            cache_dir,
            mem: RwLock::new(HashMap::new()),
        }
    }

    /// The 2n-th derivative of ξ at 1/2 (odd derivatives vanish),
    /// computed as `2^{1−2n} ∫_0^∞ x^{2n} ω(e^x) e^{x/4} dx`.
    pub fn xi_even_deriv(&self, n: u32, ctx: &EvalContext) -> Result<OracleResult, Error> {
        let key = format!("xi_deriv:{n}");
        self.cached(&key, Some(("xi_deriv", n)), ctx, |digits, prec| {
            let env = Envelope {
                x_power: 2 * n,
                lin: 2.25,
                decay_a: PI_F,
                decay_g: 1.0,
                gauss16: false,
                log_const: (2.1 * PI_F * PI_F).ln(),
            };
            let terms = omega_series_terms(digits);
            let two_n = 2 * n;
            let f = move |x: &Float, w: u32| -> Float {
                let t = Float::with_val(w, x.exp_ref());
                let om = omega(&t, terms, w).expect("e^x >= 1 on the domain");
                let quarter = Float::with_val(w, x / 4u32).exp();
                om * quarter * Float::with_val(w, x.pow(two_n))
            };
            let q = integrate_peaked(&f, &env, digits, prec)?;
            let scale = Float::with_val(prec, Float::u_pow_u(2, 1)) >> (2 * n as i32);
            finish_positive_integral(q, &scale, terms, "xi_deriv", n)
        })
    }

    /// The same derivative through the even integrand on the whole
    /// line: `4 ∫_0^∞ y^{2n} e^{y/2} ω(e^{2y}) dy`. Exercises a
    /// different substitution and envelope, as a cross-check route.
    pub fn xi_even_deriv_via_phi(&self, n: u32, ctx: &EvalContext) -> Result<OracleResult, Error> {
        let key = format!("xi_deriv_phi:{n}");
        self.cached(&key, Some(("xi_deriv_phi", n)), ctx, |digits, prec| {
            let env = Envelope {
                x_power: 2 * n,
                lin: 4.5,
                decay_a: PI_F,
                decay_g: 2.0,
                gauss16: false,
                log_const: (4.0 * 2.1 * PI_F * PI_F).ln(),
            };
            let terms = omega_series_terms(digits);
            let two_n = 2 * n;
            let f = move |y: &Float, w: u32| -> Float {
                let t = Float::with_val(w, Float::with_val(w, y * 2u32).exp_ref());
                let om = omega(&t, terms, w).expect("e^{2y} >= 1 on the domain");
                let half = Float::with_val(w, y / 2u32).exp();
                om * half * Float::with_val(w, y.pow(two_n))
            };
            let q = integrate_peaked(&f, &env, digits, prec)?;
            let scale = Float::with_val(prec, 4u32);
            finish_positive_integral(q, &scale, terms, "xi_deriv_phi", n)
        })
    }

    /// Taylor coefficient γ(n) of the recentered xi function,
    /// `γ(n) = n!/(2n)! · ξ^{(2n)}(1/2)`, with the factorial ratio
    /// applied exactly.
    pub fn gamma(&self, n: u32, ctx: &EvalContext) -> Result<OracleResult, Error> {
        let deriv = self.xi_even_deriv(n, ctx)?;
        let ratio = Rational::from((
            Integer::factorial(n).complete(),
            Integer::factorial(2 * n).complete(),
        ));
        let prec = deriv.value.prec();
        let scale = Float::with_val(prec, &ratio);
        let value = Float::with_val(prec, &deriv.value * &scale);
        let error_bound = Float::with_val(64, &deriv.error_bound * &scale)
            + Float::with_val(64, value.abs_ref()) * Float::with_val(64, Float::u_pow_u(2, prec - 4)).recip();
        Ok(OracleResult {
            value,
            error_bound,
            kind: "gamma".into(),
            n,
        })
    }

    /// Turán-Hermite coefficient
    /// `b_{2n} = (2^{4n−1}(2n)!)^{-1} ∫_0^∞ x^{2n} ω(e^x) e^{x/4} e^{−x²/16} dx`.
    pub fn b2n(&self, n: u32, ctx: &EvalContext) -> Result<OracleResult, Error> {
        let key = format!("b2n:{n}");
        self.cached(&key, Some(("b2n", n)), ctx, |digits, prec| {
            let env = Envelope {
                x_power: 2 * n,
                lin: 2.25,
                decay_a: PI_F,
                decay_g: 1.0,
                gauss16: true,
                log_const: (2.1 * PI_F * PI_F).ln(),
            };
            let terms = omega_series_terms(digits);
            let two_n = 2 * n;
            let f = move |x: &Float, w: u32| -> Float {
                let t = Float::with_val(w, x.exp_ref());
                let om = omega(&t, terms, w).expect("e^x >= 1 on the domain");
                let expo = Float::with_val(w, x / 4u32) - Float::with_val(w, x.square_ref()) / 16u32;
                om * expo.exp() * Float::with_val(w, x.pow(two_n))
            };
            let q = integrate_peaked(&f, &env, digits, prec)?;
            let fact = Float::with_val(prec, Integer::factorial(2 * n).complete());
            let scale = (fact << (4 * n as i32 - 1)).recip();
            finish_positive_integral(q, &scale, terms, "b2n", n)
        })
    }

    /// Laplace-type integral `∫_1^∞ (log t)^n e^{−αt} f(t) dt` for a
    /// weight `f(t) = t^β` or `t^β e^{−(log t)²/16}`. Memoized in
    /// memory only.
    pub fn laplace(
        &self,
        n: u32,
        alpha: &Float,
        f: &SuitableFn,
        ctx: &EvalContext,
    ) -> Result<OracleResult, Error> {
        if !(alpha.is_finite() && *alpha > 0u32) {
            return Err(Error::Input(format!(
                "laplace rate must be positive and finite, got {:.6}",
                alpha.to_f64()
            )));
        }
        let beta = f.beta().clone();
        let gauss = f.lambda() == 1;
        let key = format!(
            "laplace:{n}:{}:{}:{}",
            alpha.to_string_radix(16, None),
            beta,
            gauss
        );
        self.cached(&key, None, ctx, |digits, prec| {
            let beta_f = beta.to_f64();
            let alpha_lo = alpha.to_f64_round(Round::Down) * (1.0 - 1e-12);
            let env = Envelope {
                x_power: n,
                lin: 1.0 + beta_f + 1e-9,
                decay_a: alpha_lo,
                decay_g: 1.0,
                gauss16: gauss,
                log_const: 0.0,
            };
            let work = prec + 64;
            let alpha_w = Float::with_val(work, alpha);
            let onep_beta = Float::with_val(work, 1u32) + Float::with_val(work, &beta);
            let f = move |x: &Float, w: u32| -> Float {
                let ex = Float::with_val(w, x.exp_ref());
                let mut expo = Float::with_val(w, &onep_beta * x) - Float::with_val(w, &alpha_w * &ex);
                if gauss {
                    expo -= Float::with_val(w, x.square_ref()) / 16u32;
                }
                if n == 0 {
                    expo.exp()
                } else {
                    expo.exp() * Float::with_val(w, x.pow(n))
                }
            };
            let q = integrate_peaked(&f, &env, digits, prec)?;
            let scale = Float::with_val(prec, 1u32);
            finish_positive_integral(q, &scale, 0, "laplace", n)
        })
    }

    /// Number of records and total bytes in the on-disk cache.
    pub fn cache_stats(&self) -> std::io::Result<(usize, u64)> {
        let Some(dir) = &self.cache_dir else {
            return Ok((0, 0));
        };
        let mut files = 0;
        let mut bytes = 0;
        if dir.is_dir() {
            for entry in fs::read_dir(dir)? {
                let entry = entry?;
                if entry.path().extension().is_some_and(|e| e == "json") {
                    files += 1;
                    bytes += entry.metadata()?.len();
                }
            }
        }
        Ok((files, bytes))
    }

    /// Removes every record from the on-disk cache; returns how many
    /// files were deleted. The in-memory map is cleared as well.
    pub fn clear_cache(&self) -> std::io::Result<usize> {
        self.mem.write().expect("cache lock poisoned").clear();
        let Some(dir) = &self.cache_dir else {
            return Ok(0);
        };
        let mut removed = 0;
        if dir.is_dir() {
            for entry in fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    fs::remove_file(&path)?;
                    removed += 1;
                }
            }
        }
        Ok(removed)
    }

    /// Two-level lookup around a compute closure. The closure gets
    /// the digit goal and the base precision and must return a value
    /// whose error bound certifies at least the requested digits.
    fn cached<C>(
        &self,
        key: &str,
        file_id: Option<(&str, u32)>,
        ctx: &EvalContext,
        compute: C,
    ) -> Result<OracleResult, Error>
    where
        C: FnOnce(u32, u32) -> Result<(Float, Float), Error>,
    {
        let digits = ctx.target_digits() + ctx.guard_digits();
        let mut parts = key.split(':');
        let kind = parts.next().unwrap_or("value").to_string();
        let n: u32 = parts.next().and_then(|s| s.parse().ok()).unwrap_or(0);

        if let Some(hit) = self.mem_lookup(key, digits) {
            return Ok(OracleResult {
                value: hit.value,
                error_bound: hit.error,
                kind,
                n,
            });
        }

        if let Some((file_kind, file_n)) = file_id {
            if let Some(entry) = self.disk_lookup(file_kind, file_n, digits) {
                self.mem_store(key, &entry);
                return Ok(OracleResult {
                    value: entry.value,
                    error_bound: entry.error,
                    kind,
                    n,
                });
            }
        }

        let (value, error_bound) = compute(digits, ctx.working_bits())?;
        let result = OracleResult {
            value,
            error_bound,
            kind,
            n,
        };
        let entry = MemEntry {
            value: result.value.clone(),
            error: result.error_bound.clone(),
            digits: result.certified_digits(),
        };
        if entry.digits < ctx.target_digits() {
            return Err(Error::Precision(format!(
                "{key}: certified only {} of {} requested digits",
                entry.digits,
                ctx.target_digits()
            )));
        }
        self.mem_store(key, &entry);
        if let Some((file_kind, file_n)) = file_id {
            self.disk_store(file_kind, file_n, &entry);
        }
        Ok(result)
    }

    fn mem_lookup(&self, key: &str, digits: u32) -> Option<MemEntry> {
        let map = self.mem.read().expect("cache lock poisoned");
        map.get(key).filter(|e| e.digits >= digits).cloned()
    }

    fn mem_store(&self, key: &str, entry: &MemEntry) {
        let mut map = self.mem.write().expect("cache lock poisoned");
        let slot = map.entry(key.to_string());
        use std::collections::hash_map::Entry;
        match slot {
            Entry::Occupied(mut o) => {
                if o.get().digits < entry.digits {
                    o.insert(entry.clone());
                }
            }
            Entry::Vacant(v) => {
                v.insert(entry.clone());
            }
        }
    }

    fn record_path(&self, kind: &str, n: u32) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{kind}_{n:05}.json")))
    }

    fn disk_lookup(&self, kind: &str, n: u32, digits: u32) -> Option<MemEntry> {
        let path = self.record_path(kind, n)?;
        let text = fs::read_to_string(path).ok()?;
        let record: CacheRecord = serde_json::from_str(&text).ok()?;
        if record.digits < digits || record.kind != kind || record.n != n {
            return None;
        }
        let prec = crate::real::EvalContext::new(record.digits).working_bits();
        let value = crate::real::parse_decimal(&record.value, prec).ok()?;
        let error = crate::real::parse_decimal(&record.error, 64).ok()?;
        Some(MemEntry {
            value,
            error,
            digits: record.digits,
        })
    }

    fn disk_store(&self, kind: &str, n: u32, entry: &MemEntry) {
        let Some(path) = self.record_path(kind, n) else {
            return;
        };
        let Some(dir) = path.parent() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let record = CacheRecord {
            kind: kind.to_string(),
            n,
            digits: entry.digits,
            value: to_sci_string(&entry.value, entry.digits as usize + 12),
            error: to_sci_string(&entry.error, 3),
            unix_time: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let Ok(text) = serde_json::to_string_pretty(&record) else {
            return;
        };
        let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

/// Assembles value and total error bound for a positive integrand:
/// quadrature estimate, domain tail, series truncation (relative to
/// the value, scaled by 1.1 for the quadrature's own slack), and the
/// exact prefactor.
fn finish_positive_integral(
    q: crate::quad::QuadResult,
    scale: &Float,
    series_terms: u32,
    kind: &str,
    n: u32,
) -> Result<(Float, Float), Error> {
    if !(q.value > 0u32) {
        return Err(Error::Precision(format!(
            "{kind}({n}): positive integrand produced a non-positive value"
        )));
    }
    let prec = q.value.prec();
    let value = Float::with_val(prec, &q.value * scale);
    let mut err = Float::with_val(64, q.total_error()) * Float::with_val(64, scale.abs_ref());
    if series_terms > 0 {
        let rel = omega_tail_rel(series_terms) * 1.1;
        err += Float::with_val(64, value.abs_ref()) * Float::with_val(64, rel);
    }
    Ok((value, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_needs_t_at_least_one() {
        let t = Float::with_val(64, 0.5f64);
        assert!(matches!(omega(&t, 5, 64), Err(Error::Domain(_))));
    }

    #[test]
    fn omega_truncation_is_self_consistent() {
        let t = Float::with_val(256, 1u32);
        let coarse = omega(&t, 10, 256).unwrap();
        let fine = omega(&t, 30, 256).unwrap();
        let gap = Float::with_val(64, Float::with_val(256, &coarse - &fine).abs_ref());
        assert!(gap < Float::with_val(64, 1e-40f64));
        assert!(coarse > 0u32);
    }

    #[test]
    fn series_terms_meet_their_budget() {
        for digits in [20u32, 50, 100, 200] {
            let m = omega_series_terms(digits);
            let budget = 10f64.powi(-(digits as i32 + 10));
            assert!(
                omega_tail_rel(m) <= budget,
                "M = {m} misses the budget at {digits} digits"
            );
        }
    }

    #[test]
    fn product_formula_value_is_the_known_one() {
        let (v, err) = reference_xi_half(&EvalContext::new(30));
        assert!((v.to_f64() - 0.497120778).abs() < 1e-8);
        assert!(err < Float::with_val(64, 1e-25f64));
    }

    #[test]
    fn integral_route_meets_product_route_at_the_center() {
        let ctx = EvalContext::new(25);
        let oracle = Oracle::new(None);
        let integral = oracle.xi_even_deriv(0, &ctx).unwrap();
        let (product, perr) = reference_xi_half(&ctx);
        let gap = Float::with_val(
            64,
            Float::with_val(integral.value.prec(), &integral.value - &product).abs_ref(),
        );
        let allowed = Float::with_val(64, &integral.error_bound + &perr);
        assert!(gap <= allowed, "gap {:.3e} vs bound {:.3e}", gap.to_f64(), allowed.to_f64());
        assert!(integral.certified_digits() >= 25);
    }

    #[test]
    fn first_turan_coefficient_sits_below_the_center_value() {
        let ctx = EvalContext::new(20);
        let oracle = Oracle::new(None);
        let b0 = oracle.b2n(0, &ctx).unwrap();
        let (xi_half, _) = reference_xi_half(&ctx);
        assert!(b0.value > 0u32);
        assert!(b0.value < xi_half);
    }

    #[test]
    fn laplace_matches_incomplete_gamma() {
        let ctx = EvalContext::new(40);
        let oracle = Oracle::new(None);
        let alpha = Float::with_val(256, 1u32);
        let weight = SuitableFn::Power(Rational::new());
        let r = oracle.laplace(1, &alpha, &weight, &ctx).unwrap();
        let exact = Float::new(300).gamma_inc(&Float::with_val(300, 1u32));
        let gap = Float::with_val(64, Float::with_val(300, &r.value - &exact).abs_ref());
        assert!(gap <= r.error_bound, "gap {:.3e}", gap.to_f64());
        assert!(r.certified_digits() >= 40);
    }

    #[test]
    fn memory_cache_round_trips() {
        let ctx = EvalContext::new(15);
        let oracle = Oracle::new(None);
        let first = oracle.xi_even_deriv(1, &ctx).unwrap();
        let second = oracle.xi_even_deriv(1, &ctx).unwrap();
        assert_eq!(first.value, second.value);
    }

    #[test]
    fn rejects_nonpositive_laplace_rate() {
        let ctx = EvalContext::new(10);
        let oracle = Oracle::new(None);
        let alpha = Float::with_val(64, -1f64);
        let weight = SuitableFn::Power(Rational::new());
        assert!(matches!(
            oracle.laplace(1, &alpha, &weight, &ctx),
            Err(Error::Input(_))
        ));
    }
}
