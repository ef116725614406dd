//! Numerical evaluation of the complete asymptotic expansions, with
//! the symbolic correction coefficients evaluated at the Lambert W
//! point for the requested index. The conventions match the exact
//! layer: an expansion of order `K` uses the main term times
//! `1 + Σ_{k=1}^{K-1} coeff_k(w)/n^k`, so `K = 1` is the bare main
//! term.
//!
//! Floats never enter the symbolic layer; this module is the bridge
//! that takes its exact rational functions and evaluates them at
//! arbitrary precision.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complete, Float, Integer};

use crate::coeffs::{a_coeff_f, c_coeff, mu_coeff, tau_coeff, SuitableFn};
use crate::poly::Poly;
use crate::ratfunc::RationalFunction;
use crate::real::{lambert_w, EvalContext};
use crate::Error;

/// Indices below this are flagged as outside the asymptotic regime;
/// the expansion still evaluates, but its error term has no reason to
/// be small.
const REGIME_FLOOR: u32 = 10;

/// Horner evaluation of an exact polynomial at a floating point.
pub fn eval_poly(p: &Poly, x: &Float, prec: u32) -> Float {
    let mut acc = Float::new(prec);
    for c in p.coeffs().iter().rev() {
        acc *= x;
        acc += Float::with_val(prec, c);
    }
    acc
}

/// Evaluation of an exact rational function at a floating point.
/// Fails only if the denominator vanishes at `x` to working
/// precision, which no coefficient family here can do for `x > 0`.
pub fn eval_ratfunc(r: &RationalFunction, x: &Float, prec: u32) -> Result<Float, Error> {
    let den = eval_poly(r.den(), x, prec);
    if den.is_zero() {
        return Err(Error::Domain(format!(
            "denominator of {} vanishes at {:.6}",
            r.canonical_text(),
            x.to_f64()
        )));
    }
    Ok(eval_poly(r.num(), x, prec) / den)
}

/// One evaluated asymptotic approximation.
#[derive(Clone, Debug)]
pub struct ExpansionResult {
    /// Main term times the full correction factor.
    pub value: Float,
    /// The order-one prefactor alone.
    pub main_term: Float,
    /// The individual correction terms `coeff_k(w)/n^k` for
    /// `k = 1 .. order-1`, in order.
    pub corrections: Vec<Float>,
    /// The Lambert W value the expansion was evaluated at.
    pub w: Float,
    /// False when the index is too small for the error term to be
    /// meaningful.
    pub in_regime: bool,
}

impl ExpansionResult {
    fn assemble(main_term: Float, corrections: Vec<Float>, w: Float, n: u32) -> Self {
        let prec = main_term.prec();
        let mut factor = Float::with_val(prec, 1u32);
        for c in &corrections {
            factor += c;
        }
        ExpansionResult {
            value: Float::with_val(prec, &main_term * &factor),
            main_term,
            corrections,
            w,
            in_regime: n >= REGIME_FLOOR,
        }
    }
}

fn check_args(n: u32, order: u32) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Input(
            "asymptotic expansions need a positive index".into(),
        ));
    }
    if order == 0 {
        return Err(Error::Input("expansion order must be at least 1".into()));
    }
    Ok(())
}

/// Shared correction series: `coeff_k(w)/n^k` for `k = 1..order-1`.
fn correction_terms<G>(
    order: u32,
    w: &Float,
    n: u32,
    prec: u32,
    coeff: G,
) -> Result<Vec<Float>, Error>
where
    G: Fn(u32) -> RationalFunction,
{
    let mut terms = Vec::new();
    for k in 1..order {
        let ck = eval_ratfunc(&coeff(k), w, prec)?;
        let nk = Float::with_val(prec, Integer::from(n).pow(k));
        terms.push(ck / nk);
    }
    Ok(terms)
}

/// Asymptotic value of the 2n-th xi derivative at the center:
/// `4π²e^{7w/4}√(2w/(w+1))·(w/(2e^{1/w}))^{2n}` times the μ-series,
/// with `w = W(2n/π)`.
pub fn expand_xi_deriv(n: u32, order: u32, ctx: &EvalContext) -> Result<ExpansionResult, Error> {
    check_args(n, order)?;
    let prec = ctx.working_bits();
    let pi = Float::with_val(prec, Constant::Pi);
    let x = Float::with_val(prec, 2 * n) / &pi;
    let w = lambert_w(&x, ctx)?;

    let four_pi2 = Float::with_val(prec, pi.square_ref()) * 4u32;
    let growth = (Float::with_val(prec, &w * 7u32) / 4u32).exp();
    let root = (Float::with_val(prec, &w * 2u32) / Float::with_val(prec, &w + 1u32)).sqrt();
    let base = Float::with_val(prec, &w / 2u32) / Float::with_val(prec, w.recip_ref()).exp();
    let power = base.pow(2 * n);
    let main = four_pi2 * growth * root * power;

    let corrections = correction_terms(order, &w, n, prec, mu_coeff)?;
    Ok(ExpansionResult::assemble(main, corrections, w, n))
}

/// Asymptotic value of the Taylor coefficient γ(n):
/// `4π²e^{7w/4}√(w/(w+1))·(ew²/(16n·e^{2/w}))^n` times the c-series,
/// with `w = W(2n/π)`.
pub fn expand_gamma(n: u32, order: u32, ctx: &EvalContext) -> Result<ExpansionResult, Error> {
    check_args(n, order)?;
    let prec = ctx.working_bits();
    let pi = Float::with_val(prec, Constant::Pi);
    let x = Float::with_val(prec, 2 * n) / &pi;
    let w = lambert_w(&x, ctx)?;

    let four_pi2 = Float::with_val(prec, pi.square_ref()) * 4u32;
    let growth = (Float::with_val(prec, &w * 7u32) / 4u32).exp();
    let root = (Float::with_val(prec, &w) / Float::with_val(prec, &w + 1u32)).sqrt();
    let expo = Float::with_val(prec, 1u32) - Float::with_val(prec, w.recip_ref()) * 2u32;
    let base = expo.exp() * Float::with_val(prec, w.square_ref()) / Float::with_val(prec, 16 * n);
    let power = base.pow(n);
    let main = four_pi2 * growth * root * power;

    let corrections = correction_terms(order, &w, n, prec, c_coeff)?;
    Ok(ExpansionResult::assemble(main, corrections, w, n))
}

/// Asymptotic value of the Turán-Hermite coefficient b₂ₙ:
/// `4π²(e^{7w/4−w²/16}/(2n)!)√(2w/(w+1))·(w/(4e^{1/w}))^{2n}` times
/// the τ-series, with `w = W(2n/π)`.
pub fn expand_b2n(n: u32, order: u32, ctx: &EvalContext) -> Result<ExpansionResult, Error> {
    check_args(n, order)?;
    let prec = ctx.working_bits();
    let pi = Float::with_val(prec, Constant::Pi);
    let x = Float::with_val(prec, 2 * n) / &pi;
    let w = lambert_w(&x, ctx)?;

    let four_pi2 = Float::with_val(prec, pi.square_ref()) * 4u32;
    let expo = Float::with_val(prec, &w * 7u32) / 4u32 - Float::with_val(prec, w.square_ref()) / 16u32;
    let growth = expo.exp();
    let fact = Float::with_val(prec, Integer::factorial(2 * n).complete());
    let root = (Float::with_val(prec, &w * 2u32) / Float::with_val(prec, &w + 1u32)).sqrt();
    let base = Float::with_val(prec, &w / 4u32) / Float::with_val(prec, w.recip_ref()).exp();
    let power = base.pow(2 * n);
    let main = four_pi2 * growth * root * power / fact;

    let corrections = correction_terms(order, &w, n, prec, tau_coeff)?;
    Ok(ExpansionResult::assemble(main, corrections, w, n))
}

/// Asymptotic value of the Laplace-type integral
/// `∫_1^∞ (log t)^n e^{−αt} f(t) dt` for a power or power-Gaussian
/// weight: `√(2π)·u^{n+1}f(e^u)e^{u−n/u}/√((1+u)n)` times the
/// a-series for `f`, with `u = W(n/α)`.
pub fn expand_laplace(
    n: u32,
    alpha: &Float,
    f: &SuitableFn,
    order: u32,
    ctx: &EvalContext,
) -> Result<ExpansionResult, Error> {
    check_args(n, order)?;
    if !(alpha.is_finite() && *alpha > 0u32) {
        return Err(Error::Input(format!(
            "laplace rate must be positive and finite, got {:.6}",
            alpha.to_f64()
        )));
    }
    let prec = ctx.working_bits();
    let pi = Float::with_val(prec, Constant::Pi);
    let x = Float::with_val(prec, n) / alpha;
    let u = lambert_w(&x, ctx)?;

    let two_pi_sqrt = Float::with_val(prec, &pi * 2u32).sqrt();
    let u_pow = Float::with_val(prec, (&u).pow(n + 1));
    let beta_u = Float::with_val(prec, f.beta()) * &u;
    let mut f_at = beta_u;
    if f.lambda() == 1 {
        f_at -= Float::with_val(prec, u.square_ref()) / 16u32;
    }
    let expo = Float::with_val(prec, &u - Float::with_val(prec, n) / &u) + f_at;
    let den = (Float::with_val(prec, &u + 1u32) * Float::with_val(prec, n)).sqrt();
    let main = two_pi_sqrt * u_pow * expo.exp() / den;

    let corrections = correction_terms(order, &u, n, prec, |r| a_coeff_f(r, f))?;
    Ok(ExpansionResult::assemble(main, corrections, u, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{guard_for_index, to_sci_string};
    use rug::Rational;

    fn table_ctx() -> EvalContext {
        EvalContext::with_guard(20, guard_for_index(1000))
    }

    #[test]
    fn gamma_expansion_reproduces_reference_orders() {
        let expected = [
            (1, "4.8460204243211378239e-2568"),
            (3, "4.8450426111532216799e-2568"),
            (5, "4.8450426112725884216e-2568"),
            (7, "4.8450426112725879772e-2568"),
        ];
        let ctx = table_ctx();
        for (order, text) in expected {
            let r = expand_gamma(1000, order, &ctx).unwrap();
            assert_eq!(
                to_sci_string(&r.value, 20),
                text,
                "order {order} disagrees"
            );
            assert!(r.in_regime);
        }
    }

    #[test]
    fn turan_expansion_reproduces_reference_orders() {
        let expected = [
            (1, "2.3786738117568138992e-5738"),
            (3, "2.3732111799604212549e-5738"),
            (5, "2.3732111791829324664e-5738"),
            (7, "2.3732111791829329059e-5738"),
        ];
        let ctx = table_ctx();
        for (order, text) in expected {
            let r = expand_b2n(1000, order, &ctx).unwrap();
            assert_eq!(
                to_sci_string(&r.value, 20),
                text,
                "order {order} disagrees"
            );
        }
    }

    #[test]
    fn corrections_shrink_geometrically_in_the_regime() {
        let ctx = EvalContext::new(40);
        let r = expand_gamma(500, 5, &ctx).unwrap();
        assert_eq!(r.corrections.len(), 4);
        for pair in r.corrections.windows(2) {
            let a = Float::with_val(64, pair[0].abs_ref());
            let b = Float::with_val(64, pair[1].abs_ref());
            assert!(b < a, "terms must decrease");
        }
    }

    #[test]
    fn xi_and_gamma_expansions_are_consistent() {
        let ctx = EvalContext::new(40);
        let n = 300u32;
        let xi = expand_xi_deriv(n, 6, &ctx).unwrap();
        let ga = expand_gamma(n, 6, &ctx).unwrap();
        let ratio = Rational::from((
            Integer::factorial(n).complete(),
            Integer::factorial(2 * n).complete(),
        ));
        let prec = xi.value.prec();
        let via_xi = Float::with_val(prec, &xi.value) * Float::with_val(prec, &ratio);
        let rel = (Float::with_val(prec, &via_xi / &ga.value) - 1u32).abs();
        assert!(
            rel < Float::with_val(64, 1e-12f64),
            "routes differ by {:.3e}",
            rel.to_f64()
        );
    }

    #[test]
    fn small_index_is_flagged() {
        let ctx = EvalContext::new(20);
        let r = expand_gamma(3, 2, &ctx).unwrap();
        assert!(!r.in_regime);
    }

    #[test]
    fn zero_arguments_are_rejected() {
        let ctx = EvalContext::new(20);
        assert!(matches!(expand_gamma(0, 3, &ctx), Err(Error::Input(_))));
        assert!(matches!(expand_gamma(5, 0, &ctx), Err(Error::Input(_))));
        let alpha = Float::with_val(64, 0f64);
        let f = SuitableFn::Power(Rational::new());
        assert!(matches!(
            expand_laplace(5, &alpha, &f, 2, &ctx),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn ratfunc_evaluation_matches_rational_arithmetic() {
        let r = crate::coeffs::mu_coeff(1);
        let x = Rational::from((7, 3));
        let exact = r.eval_rat(&x).unwrap();
        let approx = eval_ratfunc(&r, &Float::with_val(256, &x), 256).unwrap();
        let gap = Float::with_val(64, (approx - Float::with_val(256, &exact)).abs_ref());
        assert!(gap < Float::with_val(64, 1e-70f64));
    }
}
