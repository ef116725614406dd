//! Jensen-type polynomial families attached to a coefficient
//! sequence, classical Hermite and generalized Laguerre polynomials,
//! and certified decisions about whether all roots of a polynomial
//! are real.
//!
//! Two coefficient domains coexist here. Exact rational polynomials
//! (`Poly`) carry the structural identities and an exact Sturm count.
//! Interval polynomials (`RealPoly`) carry certified enclosures of
//! transcendental coefficients; their Sturm chains run in midpoint
//! radius arithmetic and every sign decision along the chain is
//! certified or the verdict degrades to undecided.
//!
//! Root counting uses the full Sturm sequence ending at the
//! polynomial gcd of the input and its derivative. The count of sign
//! variation drops between the two ends of the line equals the number
//! of distinct real roots, so a polynomial is real rooted exactly
//! when that count reaches degree minus gcd degree. Repeated real
//! roots therefore still certify on the exact route; on the interval
//! route a genuine repeated root keeps the chain tail straddling zero
//! and the verdict stays undecided, which is the honest answer for
//! interval data.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::interval::Interval;
use crate::poly::Poly;
use crate::rational::{binomial_int, binomial_rat, factorial, rat};
use crate::real::EvalContext;
use crate::Error;

/// Physicists' Hermite polynomial with exact integer coefficients,
/// built from the recurrence H_{d+1} = 2XH_d - 2dH_{d-1}.
pub fn hermite(d: u32) -> Poly {
    let mut prev = Poly::one();
    if d == 0 {
        return prev;
    }
    let mut cur = Poly::from_int_coeffs(&[0, 2]);
    for k in 1..d {
        let next = &cur.shift_up(1).scale(&rat(2, 1)) - &prev.scale(&Rational::from(2 * k));
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial
/// L_d^{(α)}(x) = Σ_{k=0}^d binom(d+α, d-k) (-1)^k x^k / k!
/// with exact rational coefficients.
pub fn laguerre(d: u32, alpha: &Rational) -> Poly {
    let top = Rational::from(alpha + Rational::from(d));
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut c = binomial_rat(&top, d - k);
        c /= Rational::from(factorial(k));
        if k % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Poly::from_coeffs(coeffs)
}

/// Degree-d Jensen polynomial of the sequence `c`, where `c[j]` is
/// the coefficient of z^j/j! in the generating series:
/// Σ_{j=0}^d binom(d,j) c_j x^j.
pub fn jensen_series(c: &[Rational], d: usize) -> Poly {
    let coeffs = (0..=d)
        .map(|j| {
            let b = Rational::from(binomial_int(d as u64, j as u64));
            b * c.get(j).cloned().unwrap_or_default()
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Reciprocal Jensen polynomial Σ_{j=0}^d binom(d,j) c_j x^{d-j}.
pub fn jensen_series_star(c: &[Rational], d: usize) -> Poly {
    let coeffs = (0..=d)
        .map(|k| {
            let j = d - k;
            let b = Rational::from(binomial_int(d as u64, j as u64));
            b * c.get(j).cloned().unwrap_or_default()
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Sequence coefficients of the product of two generating series in
/// the z^j/j! normalization, which is the binomial convolution
/// e_m = Σ_k binom(m,k) a_k b_{m-k}.
pub fn product_series(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    (0..len)
        .map(|m| {
            let mut acc = Rational::new();
            for k in 0..=m {
                let (Some(ak), Some(bm)) = (a.get(k), b.get(m - k)) else {
                    continue;
                };
                acc += Rational::from(binomial_int(m as u64, k as u64)) * Rational::from(ak * bm);
            }
            acc
        })
        .collect()
}

/// Sequence coefficients of exp(-z²): the entry at index 2j is
/// (-1)^j (2j)!/j! and odd entries vanish.
pub fn gaussian_series(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|m| {
            if m % 2 == 1 {
                return Rational::new();
            }
            let j = (m / 2) as u32;
            let mut c = Rational::from(factorial(2 * j));
            c /= Rational::from(factorial(j));
            if j % 2 == 1 {
                c = -c;
            }
            c
        })
        .collect()
}

/// Reciprocal Jensen polynomial of a product series, assembled from
/// the factor's sequence and the reciprocal Jensen family of the
/// other factor: Σ_{j=0}^d binom(d,j) c_j ω*_{d-j}(x).
pub fn jensen_of_product<F>(phi: &[Rational], omega_star: F, d: usize) -> Poly
where
    F: Fn(usize) -> Poly,
{
    let mut acc = Poly::zero();
    for j in 0..=d {
        let Some(cj) = phi.get(j) else { continue };
        if *cj == 0 {
            continue;
        }
        let b = Rational::from(binomial_int(d as u64, j as u64));
        acc = &acc + &omega_star(d - j).scale(&(b * cj));
    }
    acc
}

/// Distinct real roots of an exact polynomial together with the
/// degree of gcd(p, p'), from the rational Sturm sequence evaluated
/// at both ends of the line.
pub fn sturm_count_exact(p: &Poly) -> (usize, usize) {
    let Some(deg) = p.degree() else {
        return (0, 0);
    };
    if deg == 0 {
        return (0, 0);
    }
    let mut chain = vec![p.clone(), p.derivative()];
    let gcd_deg = loop {
        let last = &chain[chain.len() - 1];
        if last.degree() == Some(0) {
            break 0;
        }
        let (_, rem) = chain[chain.len() - 2].divrem(last);
        if rem.is_zero() {
            break chain[chain.len() - 1].degree().unwrap_or(0);
        }
        let next = -&rem;
        chain.push(next);
    };
    let mut pos = Vec::with_capacity(chain.len());
    let mut neg = Vec::with_capacity(chain.len());
    for q in &chain {
        let s = if *q.leading().unwrap() > 0 { 1i32 } else { -1 };
        let d = q.degree().unwrap();
        pos.push(s);
        neg.push(if d % 2 == 0 { s } else { -s });
    }
    let distinct = sign_variations(&neg).saturating_sub(sign_variations(&pos));
    (distinct, gcd_deg)
}

fn sign_variations(signs: &[i32]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Outcome of a root-reality decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperbolicityStatus {
    CertifiedRealRooted,
    CertifiedHasNonrealRoot,
    Undecided,
}

/// A certified verdict. `real_root_count` is the full degree for a
/// real-rooted verdict and the certified count of distinct real roots
/// when a nonreal root was proven; it is absent when undecided.
/// `precision_used` records the working bits of the deciding attempt,
/// with zero meaning exact rational arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolicityVerdict {
    pub status: HyperbolicityStatus,
    pub real_root_count: Option<usize>,
    pub precision_used: u32,
}

/// Exact decision for a rational polynomial. Always conclusive.
pub fn certify_exact(p: &Poly) -> HyperbolicityVerdict {
    let Some(deg) = p.degree() else {
        return HyperbolicityVerdict {
            status: HyperbolicityStatus::Undecided,
            real_root_count: None,
            precision_used: 0,
        };
    };
    if deg == 0 {
        return HyperbolicityVerdict {
            status: HyperbolicityStatus::CertifiedRealRooted,
            real_root_count: Some(0),
            precision_used: 0,
        };
    }
    let (distinct, gcd_deg) = sturm_count_exact(p);
    if distinct == deg - gcd_deg {
        HyperbolicityVerdict {
            status: HyperbolicityStatus::CertifiedRealRooted,
            real_root_count: Some(deg),
            precision_used: 0,
        }
    } else {
        HyperbolicityVerdict {
            status: HyperbolicityStatus::CertifiedHasNonrealRoot,
            real_root_count: Some(distinct),
            precision_used: 0,
        }
    }
}

/// Polynomial with certified interval coefficients, ascending order.
#[derive(Clone, Debug)]
pub struct RealPoly {
    coeffs: Vec<Interval>,
}

impl RealPoly {
    /// Builds from ascending coefficients, trimming exact zeros at
    /// the top. A leading coefficient that merely straddles zero is
    /// kept; certification reports undecided in that case.
    pub fn new(mut coeffs: Vec<Interval>) -> Self {
        while coeffs.last().is_some_and(Interval::is_exact_zero) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    /// Embeds an exact polynomial at `prec` bits, radii covering only
    /// the decimal-to-binary rounding.
    pub fn from_exact(p: &Poly, prec: u32) -> Self {
        RealPoly::new(
            p.coeffs()
                .iter()
                .map(|c| Interval::from_rational(c, prec))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Interval> {
        self.coeffs.last()
    }

    /// Largest midpoint precision across the coefficients.
    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(Interval::prec).max().unwrap_or(64)
    }

    /// Re-embeds midpoints at a precision at least their own; the
    /// copy is exact and radii are unchanged.
    fn with_prec(&self, prec: u32) -> RealPoly {
        RealPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    Interval::new(
                        Float::with_val(prec.max(c.prec()), c.mid()),
                        c.rad().clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn derivative(&self) -> RealPoly {
        if self.coeffs.len() <= 1 {
            return RealPoly::zero();
        }
        RealPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale_rat(&Rational::from(i as u32 + 1)))
                .collect(),
        )
    }

    pub fn neg(&self) -> RealPoly {
        RealPoly {
            coeffs: self.coeffs.iter().map(Interval::neg).collect(),
        }
    }

    pub fn add(&self, other: &RealPoly) -> RealPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let prec = self.prec().max(other.prec());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let c = match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Interval::zero(prec),
            };
            out.push(c);
        }
        RealPoly::new(out)
    }

    pub fn scale_interval(&self, c: &Interval) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Substitutes x -> 2^e x, an exact operation on dyadic scales.
    pub fn compose_shift2(&self, e: i32) -> RealPoly {
        RealPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.shift(e * j as i32))
                .collect(),
        }
    }

    /// Multiplies the whole polynomial by 2^e, exactly.
    fn shift_all(&self, e: i32) -> RealPoly {
        RealPoly {
            coeffs: self.coeffs.iter().map(|c| c.shift(e)).collect(),
        }
    }
}

/// Exponent that balances the coefficient spread under x -> 2^e x,
/// taken from the slope between the lowest and highest nonzero
/// midpoints.
fn balance_exponent(p: &RealPoly) -> i32 {
    let cs = p.coeffs();
    let Some(deg) = p.degree() else { return 0 };
    let top = match cs[deg].mid().get_exp() {
        Some(e) => e,
        None => return 0,
    };
    let bottom = cs
        .iter()
        .enumerate()
        .find(|(_, c)| !c.mid().is_zero())
        .map(|(i, c)| (i, c.mid().get_exp().unwrap()));
    match bottom {
        Some((i0, e0)) if i0 < deg => {
            let slope = f64::from(e0 - top) / (deg - i0) as f64;
            slope.round() as i32
        }
        _ => 0,
    }
}

/// Rescales so the leading midpoint has magnitude near one.
fn normalize(p: RealPoly) -> RealPoly {
    match p.leading().and_then(|c| c.mid().get_exp()) {
        Some(e) => p.shift_all(-e),
        None => p,
    }
}

/// Interval polynomial remainder. Returns `None` when a division by
/// the divisor's leading coefficient cannot be certified.
fn rem_interval(num: &RealPoly, den: &RealPoly) -> Option<RealPoly> {
    let dn = den.degree()?;
    let lead = den.leading()?;
    let mut rem: Vec<Interval> = num.coeffs().to_vec();
    if rem.len() <= dn {
        return Some(RealPoly::new(rem));
    }
    for k in (dn..rem.len()).rev() {
        let q = rem[k].div(lead)?;
        if !q.is_exact_zero() {
            for i in 0..dn {
                let t = q.mul(&den.coeffs()[i]);
                rem[k - dn + i] = rem[k - dn + i].sub(&t);
            }
        }
        rem[k] = Interval::zero(rem[k].prec());
    }
    rem.truncate(dn);
    Some(RealPoly::new(rem))
}

/// One certification attempt at a fixed working precision. `None`
/// means a sign along the chain could not be certified.
fn sturm_verdict(p: &RealPoly, work: u32) -> Option<(HyperbolicityStatus, usize)> {
    let deg = p.degree()?;
    let scaled = normalize(p.with_prec(work).compose_shift2(balance_exponent(p)));
    let mut chain = vec![scaled.clone(), normalize(scaled.derivative())];
    let gcd_deg = loop {
        let last = &chain[chain.len() - 1];
        if last.degree() == Some(0) {
            last.leading()?.certified_sign().filter(|s| *s != 0)?;
            break 0;
        }
        let rem = rem_interval(&chain[chain.len() - 2], last)?;
        if rem.is_zero() {
            break chain[chain.len() - 1].degree()?;
        }
        rem.leading()?.certified_sign().filter(|s| *s != 0)?;
        chain.push(normalize(rem.neg()));
    };
    let mut pos = Vec::with_capacity(chain.len());
    let mut neg = Vec::with_capacity(chain.len());
    for q in &chain {
        let s = q.leading()?.certified_sign().filter(|s| *s != 0)?;
        let d = q.degree()?;
        pos.push(s);
        neg.push(if d % 2 == 0 { s } else { -s });
    }
    let distinct = sign_variations(&neg).checked_sub(sign_variations(&pos))?;
    if distinct == deg - gcd_deg {
        Some((HyperbolicityStatus::CertifiedRealRooted, deg))
    } else {
        Some((HyperbolicityStatus::CertifiedHasNonrealRoot, distinct))
    }
}

/// Decides whether all roots of `p` are real, raising the chain's
/// working precision up to `max_precision` bits before giving up.
/// Raising precision here sharpens only the chain arithmetic; the
/// input radii are fixed, so a failure that persists calls for
/// rebuilding the polynomial from sharper coefficients instead.
pub fn certify_hyperbolic(p: &RealPoly, max_precision: u32) -> HyperbolicityVerdict {
    let Some(deg) = p.degree() else {
        return HyperbolicityVerdict {
            status: HyperbolicityStatus::Undecided,
            real_root_count: None,
            precision_used: 0,
        };
    };
    let undecided = |bits| HyperbolicityVerdict {
        status: HyperbolicityStatus::Undecided,
        real_root_count: None,
        precision_used: bits,
    };
    if p.leading().unwrap().contains_zero() {
        return undecided(p.prec());
    }
    if deg == 0 {
        return HyperbolicityVerdict {
            status: HyperbolicityStatus::CertifiedRealRooted,
            real_root_count: Some(0),
            precision_used: p.prec(),
        };
    }
    let mut work = p.prec().max(64);
    loop {
        if let Some((status, count)) = sturm_verdict(p, work) {
            return HyperbolicityVerdict {
                status,
                real_root_count: Some(count),
                precision_used: work,
            };
        }
        match work.checked_mul(2) {
            Some(next) if next <= max_precision => work = next,
            _ => return undecided(work),
        }
    }
}

/// Rebuilds the polynomial at doubling decimal precision until the
/// verdict is conclusive or `max_digits` is reached. The builder
/// receives the target digits and typically routes through the
/// oracle.
pub fn certify_with_refinement<F>(
    build: F,
    start_digits: u32,
    max_digits: u32,
) -> Result<HyperbolicityVerdict, Error>
where
    F: Fn(u32) -> Result<RealPoly, Error>,
{
    let mut digits = start_digits.max(1);
    loop {
        let p = build(digits)?;
        let bits = EvalContext::new(digits).working_bits();
        let verdict = certify_hyperbolic(&p, bits.saturating_mul(2));
        if verdict.status != HyperbolicityStatus::Undecided || digits >= max_digits {
            return Ok(verdict);
        }
        digits = digits.saturating_mul(2).min(max_digits);
    }
}

fn require_gammas(d: u32, gammas: &[Interval]) -> Result<(), Error> {
    if d == 0 {
        return Err(Error::Input("family degree must be at least 1".into()));
    }
    if gammas.len() < d as usize + 1 {
        return Err(Error::Input(format!(
            "degree {d} needs {} consecutive sequence values, got {}",
            d + 1,
            gammas.len()
        )));
    }
    Ok(())
}

/// Degree-d Jensen polynomial Σ binom(d,j) γ(n+j) X^j, where
/// `gammas[j]` encloses γ(n+j).
pub fn jensen_j(d: u32, gammas: &[Interval]) -> Result<RealPoly, Error> {
    require_gammas(d, gammas)?;
    let coeffs = (0..=d)
        .map(|j| {
            let b = Rational::from(binomial_int(u64::from(d), u64::from(j)));
            gammas[j as usize].scale_rat(&b)
        })
        .collect();
    Ok(RealPoly::new(coeffs))
}

/// Hermite-mixed family Σ binom(d,j) γ(n+j) H_{d-j}(X).
pub fn jensen_p(d: u32, gammas: &[Interval]) -> Result<RealPoly, Error> {
    require_gammas(d, gammas)?;
    let prec = gammas[0].prec();
    let mut acc = vec![Interval::zero(prec); d as usize + 1];
    for j in 0..=d {
        let b = Rational::from(binomial_int(u64::from(d), u64::from(j)));
        let factor = gammas[j as usize].scale_rat(&b);
        let h = hermite(d - j);
        for (k, hc) in h.coeffs().iter().enumerate() {
            if *hc == 0 {
                continue;
            }
            acc[k] = acc[k].add(&factor.scale_rat(hc));
        }
    }
    Ok(RealPoly::new(acc))
}

/// Laguerre-mixed family Σ binom(d+α,j) γ(n+j) x^j L^{(α)}_{d-j}(x)
/// for rational α ≥ -2.
pub fn jensen_q(d: u32, alpha: &Rational, gammas: &[Interval]) -> Result<RealPoly, Error> {
    require_gammas(d, gammas)?;
    if *alpha < rat(-2, 1) {
        return Err(Error::Input(format!(
            "laguerre parameter must be at least -2, got {alpha}"
        )));
    }
    let prec = gammas[0].prec();
    let top = Rational::from(alpha + Rational::from(d));
    let mut acc = vec![Interval::zero(prec); d as usize + 1];
    for j in 0..=d {
        let factor = gammas[j as usize].scale_rat(&binomial_rat(&top, j));
        let part = laguerre(d - j, alpha).shift_up(j as usize);
        for (k, pc) in part.coeffs().iter().enumerate() {
            if *pc == 0 {
                continue;
            }
            acc[k] = acc[k].add(&factor.scale_rat(pc));
        }
    }
    Ok(RealPoly::new(acc))
}

/// The two degree-2 margins: γ(n+1)² - γ(n)γ(n+2), which is the
/// discriminant-like quantity for the plain family, and the same plus
/// 2γ(n)² for the Hermite-mixed family.
pub fn turan_margins(g0: &Interval, g1: &Interval, g2: &Interval) -> (Interval, Interval) {
    let first = g1.square().sub(&g0.mul(g2));
    let second = first.add(&g0.square().scale_rat(&rat(2, 1)));
    (first, second)
}

/// Sufficient condition for the Hermite-mixed family to have real
/// simple roots: returns S = Σ_{j=2}^d [d/(2^j j!)] binom(d,j)
/// γ(n+j)²/γ(n)² and a flag that is true only when S < 1 is
/// certified.
pub fn turan_sufficient(d: u32, gammas: &[Interval]) -> Result<(Float, bool), Error> {
    require_gammas(d, gammas)?;
    let prec = gammas[0].prec();
    let mut s = Interval::zero(prec);
    for j in 2..=d {
        let mut factor = Rational::from(binomial_int(u64::from(d), u64::from(j)));
        factor *= Rational::from(d);
        factor /= Rational::from(factorial(j)) << j;
        let ratio = gammas[j as usize]
            .div(&gammas[0])
            .ok_or_else(|| Error::Precision("base sequence value straddles zero".into()))?;
        s = s.add(&ratio.square().scale_rat(&factor));
    }
    let one = Float::with_val(64, 1u32);
    let flag = s.certified_below(&one);
    Ok((s.mid().clone(), flag))
}

/// Empirical ratio bound: checks γ(n+j)/γ(n) < 1.01 (3c² log²n /
/// (16n))^j with the left side certified from the enclosures and the
/// right side padded down before the comparison.
pub fn gamma_ratio_bound_check(
    n: u32,
    j: u32,
    c: f64,
    g_n: &Interval,
    g_nj: &Interval,
) -> Result<bool, Error> {
    if n < 2 {
        return Err(Error::Input("ratio bound needs an index of at least 2".into()));
    }
    if c < 1.0 {
        return Err(Error::Input("growth constant must be at least 1".into()));
    }
    let ratio = g_nj
        .div(g_n)
        .ok_or_else(|| Error::Precision("base sequence value straddles zero".into()))?;
    let log_n = Float::with_val(64, n).ln();
    let base = log_n.square() * (3.0 * c * c) / (16.0 * f64::from(n));
    let rhs = Float::with_val(64, base.pow(j)) * 1.01f64 * (1.0 - 1e-12);
    Ok(ratio.certified_below(&rhs))
}
