//! End-to-end checks of the quadrature oracle: route agreement, a
//! resummation identity against an independently computed constant,
//! honesty of the error bounds, and cache round trips.

mod common;

use std::path::PathBuf;

use common::ORACLE;
use rug::{Complete, Float, Integer};
use xi_core::oracle::{omega, omega_series_terms, omega_tail_rel, reference_xi_half, Oracle};
use xi_core::real::{to_sci_string, EvalContext};

#[test]
fn both_integral_routes_agree_for_small_indices() {
    let ctx = EvalContext::new(25);
    for n in 0..=30u32 {
        let direct = ORACLE.xi_even_deriv(n, &ctx).unwrap();
        let via_phi = ORACLE.xi_even_deriv_via_phi(n, &ctx).unwrap();
        let gap = Float::with_val(200, &direct.value - &via_phi.value).abs();
        let allowed = Float::with_val(200, &direct.error_bound + &via_phi.error_bound);
        assert!(
            gap <= allowed,
            "routes disagree at n = {n}: gap {:.3e} over {:.3e}",
            gap.to_f64(),
            allowed.to_f64()
        );
    }
}

/// Σ_n b₂ₙ·(2n)!/n! telescopes to the central value: the Hermite series
/// evaluated at the origin, where H₂ₙ(0) = (−1)ⁿ(2n)!/n!.
#[test]
fn hermite_resummation_recovers_the_central_value() {
    let ctx = EvalContext::new(30);
    let prec = ctx.working_bits();
    let mut sum = Float::new(prec);
    let mut slack = Float::new(prec);
    for n in 0..=40u32 {
        let b = ORACLE.b2n(n, &ctx).unwrap();
        let weight = Integer::factorial(2 * n).complete() / Integer::factorial(n).complete();
        let weight = Float::with_val(prec, weight);
        sum += Float::with_val(prec, &b.value * &weight);
        slack += Float::with_val(prec, &b.error_bound * &weight);
    }
    let (reference, ref_err) = reference_xi_half(&ctx);
    let gap = Float::with_val(prec, &sum - &reference).abs();
    let allowed = Float::with_val(prec, 1e-10f64) * Float::with_val(prec, reference.abs_ref())
        + &slack
        + &ref_err;
    assert!(
        gap <= allowed,
        "resummed {} vs reference {}",
        to_sci_string(&sum, 16),
        to_sci_string(&reference, 16)
    );
}

#[test]
fn error_bounds_are_honest_for_gamma() {
    let coarse = EvalContext::new(15);
    let fine = EvalContext::new(40);
    for n in [0u32, 1, 7, 25] {
        let lo = ORACLE.gamma(n, &coarse).unwrap();
        let hi = ORACLE.gamma(n, &fine).unwrap();
        let gap = Float::with_val(200, &lo.value - &hi.value).abs();
        let allowed = Float::with_val(200, &lo.error_bound + &hi.error_bound);
        assert!(
            gap <= allowed,
            "claimed bound too small at n = {n}: gap {:.3e} over {:.3e}",
            gap.to_f64(),
            allowed.to_f64()
        );
        assert!(lo.certified_digits() >= 15);
    }
}

#[test]
fn omega_truncation_bound_is_respected() {
    let prec = 256u32;
    let one = Float::with_val(prec, 1);
    let full_terms = omega_series_terms(60);
    let full = omega(&one, full_terms, prec).unwrap();
    for few in [2u32, 3, 5, 8] {
        let part = omega(&one, few, prec).unwrap();
        let gap = Float::with_val(prec, &full - &part).abs();
        let allowed = Float::with_val(prec, omega_tail_rel(few)) * Float::with_val(prec, full.abs_ref());
        assert!(
            gap <= allowed,
            "tail bound fails at {few} terms: gap {:.3e} over {:.3e}",
            gap.to_f64(),
            allowed.to_f64()
        );
    }
    assert!(omega(&Float::with_val(prec, 0.5f64), 5, prec).is_err());
}

#[test]
fn disk_cache_round_trips() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cache-roundtrip");
    if dir.exists() {
        std::fs::remove_dir_all(&dir).unwrap();
    }
    let ctx = EvalContext::new(20);

    let first = Oracle::new(Some(dir.clone()));
    let fresh = first.gamma(5, &ctx).unwrap();
    let (files, bytes) = first.cache_stats().unwrap();
    assert!(files >= 1 && bytes > 0);

    let second = Oracle::new(Some(dir.clone()));
    let replayed = second.gamma(5, &ctx).unwrap();
    assert_eq!(
        to_sci_string(&fresh.value, 20),
        to_sci_string(&replayed.value, 20)
    );
    assert!(replayed.certified_digits() >= 20);

    let removed = second.clear_cache().unwrap();
    assert!(removed >= 1);
    let (files, bytes) = second.cache_stats().unwrap();
    assert_eq!((files, bytes), (0, 0));

    let recomputed = second.gamma(5, &ctx).unwrap();
    assert_eq!(
        to_sci_string(&fresh.value, 20),
        to_sci_string(&recomputed.value, 20)
    );
}
