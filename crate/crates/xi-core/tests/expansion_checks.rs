//! Asymptotic expansions against the quadrature oracle: the n = 1000
//! reference values at every printed order, Laplace-integral convergence
//! rates, and the derivative-scale route.

mod common;

use common::ORACLE;
use rug::ops::Pow;
use rug::Float;
use xi_core::coeffs::SuitableFn;
use xi_core::expand::{expand_b2n, expand_gamma, expand_laplace, expand_xi_deriv};
use xi_core::rational::rat;
use xi_core::real::{guard_for_index, to_sci_string, EvalContext};

#[test]
fn gamma_reference_row_matches_at_every_order() {
    let ctx = EvalContext::with_guard(20, guard_for_index(1000));
    let expected = [
        (1u32, "4.8460204243211378239e-2568"),
        (3, "4.8450426111532216799e-2568"),
        (5, "4.8450426112725884216e-2568"),
        (7, "4.8450426112725879772e-2568"),
    ];
    for (order, text) in expected {
        let r = expand_gamma(1000, order, &ctx).unwrap();
        assert_eq!(to_sci_string(&r.value, 20), text, "order {order}");
        assert!(r.in_regime);
    }
    let oracle = ORACLE.gamma(1000, &ctx).unwrap();
    assert!(oracle.certified_digits() >= 20);
    assert_eq!(
        to_sci_string(&oracle.value, 20),
        "4.8450426112725879772e-2568"
    );
}

#[test]
fn b2n_reference_row_matches_at_every_order() {
    let ctx = EvalContext::with_guard(20, guard_for_index(1000));
    let expected = [
        (1u32, "2.3786738117568138992e-5738"),
        (3, "2.3732111799604212549e-5738"),
        (5, "2.3732111791829324664e-5738"),
        (7, "2.3732111791829329059e-5738"),
    ];
    for (order, text) in expected {
        let r = expand_b2n(1000, order, &ctx).unwrap();
        assert_eq!(to_sci_string(&r.value, 20), text, "order {order}");
        assert!(r.in_regime);
    }
    let oracle = ORACLE.b2n(1000, &ctx).unwrap();
    assert!(oracle.certified_digits() >= 20);
    assert_eq!(
        to_sci_string(&oracle.value, 20),
        "2.3732111791829329059e-5738"
    );
}

fn rel_gap(approx: &Float, reference: &Float) -> Float {
    let prec = reference.prec();
    (Float::with_val(prec, approx - reference) / reference).abs()
}

#[test]
fn laplace_orders_tighten_monotonically() {
    let ctx = EvalContext::new(30);
    let prec = ctx.working_bits();
    let unit = SuitableFn::Power(rat(0, 1));
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let cases = [
        (200u32, Float::with_val(prec, 1)),
        (500, pi.clone()),
        (1000, Float::with_val(prec, &pi / 2u32)),
    ];
    for (n, alpha) in cases {
        let reference = ORACLE.laplace(n, &alpha, &unit, &ctx).unwrap();
        let mut last = Float::with_val(prec, 1);
        for order in 1..=4u32 {
            let r = expand_laplace(n, &alpha, &unit, order, &ctx).unwrap();
            let rel = rel_gap(&r.value, &reference.value);
            assert!(
                rel < last,
                "order {order} did not tighten at n = {n}: {:.3e} vs {:.3e}",
                rel.to_f64(),
                last.to_f64()
            );
            last = rel;
        }
        let log_over_n = Float::with_val(prec, n).ln() / Float::with_val(prec, n);
        let ceiling = Float::with_val(prec, log_over_n.pow(4u32)) * 1000u32;
        assert!(
            last < ceiling,
            "order 4 at n = {n}: rel {:.3e} over ceiling {:.3e}",
            last.to_f64(),
            ceiling.to_f64()
        );
    }
}

#[test]
fn derivative_scale_expansion_tracks_the_oracle() {
    let ctx = EvalContext::new(25);
    let reference = ORACLE.xi_even_deriv(120, &ctx).unwrap();
    let coarse = expand_xi_deriv(120, 2, &ctx).unwrap();
    let fine = expand_xi_deriv(120, 5, &ctx).unwrap();
    let rel_coarse = rel_gap(&coarse.value, &reference.value);
    let rel_fine = rel_gap(&fine.value, &reference.value);
    assert!(rel_fine < rel_coarse);
    assert!(rel_fine < 1e-6, "rel {:.3e}", rel_fine.to_f64());
}
