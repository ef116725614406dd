//! Exact-form checks for the symbolic correction coefficients, plus
//! numeric validation of the Stirling layer against true factorials.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use xi_core::coeffs::{
    a_coeff, a_coeff_f, c_coeff, e_poly_coeffs, ell_coeff, kappa_star, mu_coeff, pq_coeffs,
    stirling_kappa, tau_coeff, SuitableFn,
};
use xi_core::poly::Poly;
use xi_core::ratfunc::{RationalFunction, Var};
use xi_core::rational::{factorial, rat};

fn rf(num: &[i64], den: &[i64], var: Var) -> RationalFunction {
    RationalFunction::new(Poly::from_int_coeffs(num), Poly::from_int_coeffs(den), var)
}

#[test]
fn first_correction_coefficients_have_their_closed_forms() {
    assert_eq!(ell_coeff(1), rf(&[1], &[0, 1], Var::U));
    assert_eq!(ell_coeff(2), rf(&[-1, -1], &[0, 0, 2], Var::U));
    assert_eq!(ell_coeff(3), rf(&[2, 3, 2], &[0, 0, 0, 6], Var::U));
    assert_eq!(a_coeff(0), RationalFunction::one(Var::V));
    assert_eq!(
        a_coeff(1),
        rf(&[2, 6, 16, 9, 2], &[24, 72, 72, 24], Var::V)
    );
    assert_eq!(
        mu_coeff(1),
        rf(&[8, 0, -53, -66, -1], &[192, 576, 576, 192], Var::W)
    );
    assert_eq!(
        tau_coeff(1),
        rf(
            &[32, 0, -284, -468, -217, -78, 3],
            &[768, 2304, 2304, 768],
            Var::W
        )
    );
    assert_eq!(
        c_coeff(1),
        rf(&[16, 24, -29, -58, -1], &[192, 576, 576, 192], Var::W)
    );
    assert_eq!(
        c_coeff(2),
        rf(
            &[
                256, 768, -2080, -13712, -29911, -40124, -21682, -7804, -1295
            ],
            &[73728, 442368, 1105920, 1474560, 1105920, 442368, 73728],
            Var::W
        )
    );
}

#[test]
fn tau_degree_grows_cubically() {
    assert_eq!(tau_coeff(1).leading_ratio(), Some(rat(1, 256)));
    for k in 1..=3u32 {
        assert_eq!(tau_coeff(k).degree_delta(), Some(3 * i64::from(k)));
    }
}

#[test]
fn stirling_series_matches_factorials_numerically() {
    let prec = 200u32;
    let n = 30u32;
    let fact = Float::with_val(prec, factorial(n));
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let over_e = Float::with_val(prec, n) / Float::with_val(prec, 1u32).exp();
    let main = Float::with_val(prec, 2 * pi * n).sqrt() * over_e.pow(n);
    let mut acc = Float::with_val(prec, 0);
    let mut last_rel = Float::with_val(prec, 1);
    for m in 0..=6u32 {
        acc += Float::with_val(prec, stirling_kappa(m))
            / Float::with_val(prec, Integer::from(n).pow(m));
        let approx = Float::with_val(prec, &main * &acc);
        let rel = (Float::with_val(prec, &approx - &fact) / &fact).abs();
        assert!(rel < last_rel, "order {m} did not improve the estimate");
        last_rel = rel;
    }
    assert!(last_rel < 1e-12, "six orders left rel {:.3e}", last_rel.to_f64());
}

#[test]
fn stirling_series_is_formally_invertible() {
    for k in 1..=8u32 {
        let mut acc = Rational::new();
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += Rational::from(sign) * stirling_kappa(j) * stirling_kappa(k - j);
        }
        assert_eq!(acc, 0, "κ(x)·κ(−x) has a nonzero order-{k} term");
    }
}

#[test]
fn factorial_ratio_series_matches_exact_ratios() {
    let prec = 200u32;
    let n = 30u32;
    let ratio = Float::with_val(prec, factorial(n)) / Float::with_val(prec, factorial(2 * n));
    let e = Float::with_val(prec, 1u32).exp();
    let base = Float::with_val(prec, &e / Float::with_val(prec, 4 * n)).pow(n)
        / Float::with_val(prec, 2u32).sqrt();
    let mut acc = Float::with_val(prec, 0);
    let mut last_rel = Float::with_val(prec, 1);
    for k in 0..=6u32 {
        acc += Float::with_val(prec, kappa_star(k))
            / Float::with_val(prec, Integer::from(n).pow(k));
        let approx = Float::with_val(prec, &base * &acc);
        let rel = (Float::with_val(prec, &approx - &ratio) / &ratio).abs();
        if k <= 5 {
            assert!(rel < last_rel, "order {k} did not improve the estimate");
        }
        last_rel = last_rel.min(&rel);
    }
    assert!(last_rel < 1e-12, "six orders left rel {:.3e}", last_rel.to_f64());
}

#[test]
fn weighted_family_reduces_when_weight_is_trivial() {
    let unit = SuitableFn::Power(rat(0, 1));
    for r in 0..=4u32 {
        assert_eq!(a_coeff_f(r, &unit), a_coeff(r));
    }
}

#[test]
fn local_weight_polynomials_respect_the_growth_index() {
    let betas = [rat(5, 4), rat(1, 4), rat(0, 1), rat(2, 1)];
    for beta in &betas {
        for f in [
            SuitableFn::Power(beta.clone()),
            SuitableFn::PowerGauss(beta.clone()),
        ] {
            assert_eq!(f.f_poly(0), Poly::one());
            let lambda = f.lambda() as usize;
            for m in 1..=8u32 {
                let deg = f.f_poly(m).degree().map_or(0, |d| d);
                assert!(
                    deg <= lambda * m as usize,
                    "{f:?} at m={m}: degree {deg} over the index bound"
                );
            }
        }
    }
}

#[test]
fn exponential_correction_polynomials_base_cases() {
    assert_eq!(e_poly_coeffs(0), vec![RationalFunction::one(Var::U)]);
    assert_eq!(e_poly_coeffs(1), vec![RationalFunction::zero(Var::U)]);
    assert_eq!(e_poly_coeffs(2), vec![RationalFunction::zero(Var::U)]);
    let e3 = e_poly_coeffs(3);
    assert_eq!(e3.len(), 2);
    assert!(e3[0].is_zero());
    assert_eq!(e3[1], ell_coeff(3));
    let e4 = e_poly_coeffs(4);
    assert!(e4[0].is_zero());
    assert_eq!(e4[1], ell_coeff(4));
    let e6 = e_poly_coeffs(6);
    assert_eq!(e6.len(), 3);
    let half_ell3_sq = (&ell_coeff(3) * &ell_coeff(3)).scale(&rat(1, 2));
    assert_eq!(e6[2], half_ell3_sq);
}

#[test]
fn gaussian_split_base_cases() {
    let (p1, q1) = pq_coeffs(1);
    assert_eq!(p1, Poly::from_coeffs(vec![rat(0, 1), rat(-1, 8)]));
    assert_eq!(q1, rat(0, 1));
    let (p2, q2) = pq_coeffs(2);
    assert_eq!(
        p2,
        Poly::from_coeffs(vec![rat(0, 1), rat(1, 16), rat(1, 128)])
    );
    assert_eq!(q2, rat(-1, 16));
}

#[test]
fn gamma_corrections_differ_from_derivative_corrections_by_a_constant() {
    let diff = &c_coeff(1) - &mu_coeff(1);
    assert_eq!(diff, RationalFunction::constant(rat(1, 24), Var::W));
}
