//! The exact coefficient families appearing in the asymptotic expansions:
//! ℓᵢ(u), aᵣ(v), aᵣ(f;v), μₖ(w), τₖ(w), the Stirling numbers κₘ and κ*ₖ,
//! and the combined cₖ(w).
//!
//! Everything here is exact rational-function arithmetic; no floating
//! point. All families are memoized, and the caches allow concurrent
//! readers with serialized inserts.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{LazyLock, RwLock};

use crate::bell::bell_partial_ordinary;
use crate::poly::Poly;
use crate::rational::{
    binomial_rat, double_factorial_odd, factorial, log_series_coeffs, rat, Integer, Rational,
};
use crate::ratfunc::{RationalFunction, Var};

fn memoized<K, V, F>(cache: &RwLock<HashMap<K, V>>, key: K, compute: F) -> V
where
    K: Eq + Hash,
    V: Clone,
    F: FnOnce() -> V,
{
    if let Some(v) = cache.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute();
    cache.write().unwrap().entry(key).or_insert(v).clone()
}

static ELL: LazyLock<RwLock<HashMap<u32, RationalFunction>>> = LazyLock::new(Default::default);
static A: LazyLock<RwLock<HashMap<u32, RationalFunction>>> = LazyLock::new(Default::default);
static PQ: LazyLock<RwLock<HashMap<u32, (Poly, Rational)>>> = LazyLock::new(Default::default);
static AF: LazyLock<RwLock<HashMap<(u32, SuitableFn), RationalFunction>>> =
    LazyLock::new(Default::default);
static MU: LazyLock<RwLock<HashMap<u32, RationalFunction>>> = LazyLock::new(Default::default);
static TAU: LazyLock<RwLock<HashMap<u32, RationalFunction>>> = LazyLock::new(Default::default);
static KAPPA: LazyLock<RwLock<HashMap<u32, Rational>>> = LazyLock::new(Default::default);
static KAPPA_STAR: LazyLock<RwLock<HashMap<u32, Rational>>> = LazyLock::new(Default::default);
static C: LazyLock<RwLock<HashMap<u32, RationalFunction>>> = LazyLock::new(Default::default);

/// The weight functions f(t) whose Laplace integrals admit a full
/// expansion. `Power(β)` is t^β; `PowerGauss(β)` is t^β·e^{−(log t)²/16}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SuitableFn {
    Power(Rational),
    PowerGauss(Rational),
}

impl SuitableFn {
    pub fn beta(&self) -> &Rational {
        match self {
            SuitableFn::Power(b) | SuitableFn::PowerGauss(b) => b,
        }
    }

    /// The growth index λ: deg fₘ ≤ λ·m.
    pub fn lambda(&self) -> u32 {
        match self {
            SuitableFn::Power(_) => 0,
            SuitableFn::PowerGauss(_) => 1,
        }
    }

    /// The local expansion polynomial fₘ(v); f₀ = 1.
    pub fn f_poly(&self, m: u32) -> Poly {
        match self {
            SuitableFn::Power(beta) => Poly::constant(binomial_rat(beta, m)),
            SuitableFn::PowerGauss(beta) => {
                let mut acc = Poly::zero();
                for j1 in 0..=m {
                    let b = binomial_rat(beta, j1);
                    if b == 0 {
                        continue;
                    }
                    for j2 in 0..=(m - j1) {
                        let j3 = m - j1 - j2;
                        let (p, _) = pq_coeffs(j2);
                        let (_, q) = pq_coeffs(j3);
                        let scalar = Rational::from(&b * &q);
                        if scalar != 0 {
                            acc = &acc + &p.scale(&scalar);
                        }
                    }
                }
                acc
            }
        }
    }
}

/// ℓᵢ(u) = Σ_{j=1..i} B̂_{i,j}(1, −1/2, 1/3, …)·(−1)^{j+1}/(j uʲ).
///
/// # Examples
/// ```
/// use xi_core::coeffs::ell_coeff;
/// assert_eq!(ell_coeff(1).canonical_text(), "(1) / (u)");
/// ```
pub fn ell_coeff(i: u32) -> RationalFunction {
    assert!(i >= 1, "ell_coeff wants i >= 1");
    memoized(&ELL, i, || {
        let logs = log_series_coeffs(i as usize);
        let mut num = Poly::zero();
        for j in 1..=i {
            let b = bell_partial_ordinary(i as usize, j as usize, &logs)
                .expect("sequence is long enough by construction");
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let c = b * rat(sign, j as i64);
            num = &num + &Poly::monomial((i - j) as usize, c);
        }
        RationalFunction::new(num, Poly::monomial(i as usize, rat(1, 1)), Var::U)
    })
}

/// The shifted sequence ℓ₃, ℓ₄, … used as Bell arguments, retagged to `var`.
fn ell_args(count: usize, var: Var) -> Vec<RationalFunction> {
    (0..count).map(|k| ell_coeff(k as u32 + 3).with_var(var)).collect()
}

/// The factor v²/(v+1).
fn v_sq_over_v_plus_1(var: Var) -> RationalFunction {
    RationalFunction::new(
        Poly::from_int_coeffs(&[0, 0, 1]),
        Poly::from_int_coeffs(&[1, 1]),
        var,
    )
}

/// (2j+2r−1)!!/j! as an exact scalar.
fn double_fact_over_fact(j: u32, r: u32) -> Rational {
    Rational::from((
        double_factorial_odd(2 * i64::from(j) + 2 * i64::from(r) - 1),
        factorial(j),
    ))
}

/// aᵣ(v) = Σ_{j=0..2r} (2j+2r−1)!!/j!·(v²/(v+1))^{j+r}·B̂_{2r,j}(ℓ₃(v), ℓ₄(v), …).
///
/// a₀ = 1, and each aᵣ has denominator a power of (v+1).
pub fn a_coeff(r: u32) -> RationalFunction {
    memoized(&A, r, || {
        let ells = ell_args(2 * r as usize, Var::V);
        let vv = v_sq_over_v_plus_1(Var::V);
        let mut acc = RationalFunction::zero(Var::V);
        for j in 0..=2 * r {
            let b = bell_partial_ordinary(2 * r as usize, j as usize, &ells)
                .expect("sequence is long enough by construction");
            if b.is_zero() {
                continue;
            }
            let term = vv.pow((j + r) as i32).scale(&double_fact_over_fact(j, r));
            acc = &acc + &(&term * &b);
        }
        acc
    })
}

/// The pair (pᵢ(v), qᵢ) from the local expansion of t^{−v/8} and of the
/// Gaussian factor e^{−(log t)²/16} around t = eᵘ:
///
/// ```text
/// pᵢ(v) = Σ_j (1/j!)(−v/8)ʲ B̂_{i,j}(1, −1/2, 1/3, …)
/// qᵢ   = Σ_j (1/j!)(−1/16)ʲ B̂_{i,2j}(1, −1/2, 1/3, …)
/// ```
pub fn pq_coeffs(i: u32) -> (Poly, Rational) {
    memoized(&PQ, i, || {
        let logs = log_series_coeffs(i as usize);
        let mut p = Poly::zero();
        let mut q = Rational::new();
        for j in 0..=i {
            let b = bell_partial_ordinary(i as usize, j as usize, &logs)
                .expect("sequence is long enough by construction");
            if b == 0 {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let scale = Rational::from((Integer::from(sign), Integer::from(1) << (3 * j)));
            p = &p + &Poly::monomial(j as usize, b / factorial(j) * scale);
        }
        for j in 0..=(i / 2) {
            let b = bell_partial_ordinary(i as usize, 2 * j as usize, &logs)
                .expect("sequence is long enough by construction");
            if b == 0 {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let scale = Rational::from((Integer::from(sign), Integer::from(1) << (4 * j)));
            q += b / factorial(j) * scale;
        }
        (p, q)
    })
}

/// aᵣ(f;v) = Σ_{j=0..2r} (2j+2r−1)!!/j!·(v²/(v+1))^{j+r}·
/// Σ_{i=j..2r} B̂_{i,j}(ℓ₃(v), …)·f_{2r−i}(v). Reduces to [`a_coeff`] for
/// f ≡ 1.
pub fn a_coeff_f(r: u32, f: &SuitableFn) -> RationalFunction {
    memoized(&AF, (r, f.clone()), || {
        let ells = ell_args(2 * r as usize, Var::V);
        let fs: Vec<RationalFunction> = (0..=2 * r)
            .map(|m| RationalFunction::from_poly(f.f_poly(m), Var::V))
            .collect();
        let vv = v_sq_over_v_plus_1(Var::V);
        let mut acc = RationalFunction::zero(Var::V);
        for j in 0..=2 * r {
            let mut inner = RationalFunction::zero(Var::V);
            for i in j..=2 * r {
                let b = bell_partial_ordinary(i as usize, j as usize, &ells)
                    .expect("sequence is long enough by construction");
                if b.is_zero() || fs[(2 * r - i) as usize].is_zero() {
                    continue;
                }
                inner = &inner + &(&b * &fs[(2 * r - i) as usize]);
            }
            if inner.is_zero() {
                continue;
            }
            let term = vv.pow((j + r) as i32).scale(&double_fact_over_fact(j, r));
            acc = &acc + &(&term * &inner);
        }
        acc
    })
}

/// 2^{−k−1}·(2·aₖ(f;w) − 3w·a_{k−1}(f;w)) with β = 5/4 and 1/4.
fn mu_tau_combination(k: u32, hi: &SuitableFn, lo: &SuitableFn) -> RationalFunction {
    assert!(k >= 1, "combination wants k >= 1");
    let a_hi = a_coeff_f(k, hi).with_var(Var::W);
    let a_lo = a_coeff_f(k - 1, lo).with_var(Var::W);
    let w = RationalFunction::x(Var::W);
    let diff = &a_hi.scale(&rat(2, 1)) - &(&w * &a_lo).scale(&rat(3, 1));
    let halving = Rational::from((Integer::from(1), Integer::from(1) << (k + 1)));
    diff.scale(&halving)
}

/// μₖ(w): the correction coefficients for ξ^{(2n)}(1/2), built from the
/// power-kind weights t^{5/4} and t^{1/4}.
pub fn mu_coeff(k: u32) -> RationalFunction {
    memoized(&MU, k, || {
        mu_tau_combination(
            k,
            &SuitableFn::Power(rat(5, 4)),
            &SuitableFn::Power(rat(1, 4)),
        )
    })
}

/// τₖ(w): the correction coefficients for b₂ₙ, built from the
/// Gaussian-weighted kinds t^{5/4}·e^{−(log t)²/16} and t^{1/4}·e^{−(log t)²/16}.
pub fn tau_coeff(k: u32) -> RationalFunction {
    memoized(&TAU, k, || {
        mu_tau_combination(
            k,
            &SuitableFn::PowerGauss(rat(5, 4)),
            &SuitableFn::PowerGauss(rat(1, 4)),
        )
    })
}

/// κₘ: the Stirling-series coefficients of Γ(n+1),
/// κₘ = (2m−1)!!·Σ_{j=0..2m} binom(−m−1/2, j)·B̂_{2m,j}(−2/3, 2/4, −2/5, …).
pub fn stirling_kappa(m: u32) -> Rational {
    memoized(&KAPPA, m, || {
        let args: Vec<Rational> = (1..=2 * i64::from(m))
            .map(|k| rat(if k % 2 == 1 { -2 } else { 2 }, k + 2))
            .collect();
        let beta = rat(-(2 * i64::from(m) + 1), 2);
        let mut acc = Rational::new();
        for j in 0..=2 * m {
            let b = bell_partial_ordinary(2 * m as usize, j as usize, &args)
                .expect("sequence is long enough by construction");
            acc += b * binomial_rat(&beta, j);
        }
        acc * Rational::from(double_factorial_odd(2 * i64::from(m) - 1))
    })
}

/// κ*ₖ = Σ_{j=0..k} (−2)^{−j}·κⱼ·κ_{k−j}: coefficients of the exact
/// n!/(2n)! expansion.
pub fn kappa_star(k: u32) -> Rational {
    memoized(&KAPPA_STAR, k, || {
        let mut acc = Rational::new();
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let weight = Rational::from((Integer::from(sign), Integer::from(1) << j));
            acc += weight * stirling_kappa(j) * stirling_kappa(k - j);
        }
        acc
    })
}

/// cₖ(w) = Σ_{j=0..k} μⱼ(w)·κ*_{k−j} with μ₀ = 1: the correction
/// coefficients for γ(n). c₀ = 1.
pub fn c_coeff(k: u32) -> RationalFunction {
    memoized(&C, k, || {
        let mut acc = RationalFunction::zero(Var::W);
        for j in 0..=k {
            let mu = if j == 0 { RationalFunction::one(Var::W) } else { mu_coeff(j) };
            acc = &acc + &mu.scale(&kappa_star(k - j));
        }
        acc
    })
}

/// Coefficients of eᵣ(n,u) as a polynomial in n: entry j is
/// B̂_{r−2j,j}(ℓ₃(u), ℓ₄(u), …)/j!, for j = 0..⌊r/3⌋.
pub fn e_poly_coeffs(r: u32) -> Vec<RationalFunction> {
    let ells = ell_args(r as usize, Var::U);
    (0..=r / 3)
        .map(|j| {
            let b = bell_partial_ordinary((r - 2 * j) as usize, j as usize, &ells)
                .expect("sequence is long enough by construction");
            b.scale(&Rational::from((Integer::from(1), factorial(j))))
        })
        .collect()
}
