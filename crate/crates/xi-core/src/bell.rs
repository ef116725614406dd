//! Partial ordinary Bell polynomials.
//!
//! For a sequence p₁, p₂, … the polynomial B̂_{i,j}(p₁, p₂, …) is the
//! coefficient of x^i in (p₁x + p₂x² + …)^j. It is computed here from the
//! partition-sum formula
//!
//! ```text
//! B̂_{i,j} = Σ  j!/(m₁! m₂! ⋯) · p₁^{m₁} p₂^{m₂} ⋯
//! ```
//!
//! over all multiplicity vectors with Σ k·m_k = i and Σ m_k = j.

use crate::rational::{factorial, Rational};
use crate::ratfunc::RationalFunction;
use crate::Error;

/// Coefficient rings the Bell polynomials can be evaluated over.
pub trait BellRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_scale(&self, k: &Rational) -> Self;

    fn ring_pow(&self, e: u32) -> Self {
        let mut out = Self::ring_one();
        for _ in 0..e {
            out = out.ring_mul(self);
        }
        out
    }
}

impl BellRing for Rational {
    fn ring_zero() -> Self {
        Rational::new()
    }
    fn ring_one() -> Self {
        Rational::from(1)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn ring_scale(&self, k: &Rational) -> Self {
        Rational::from(self * k)
    }
}

impl BellRing for RationalFunction {
    fn ring_zero() -> Self {
        RationalFunction::zero(crate::ratfunc::Var::U)
    }
    fn ring_one() -> Self {
        RationalFunction::one(crate::ratfunc::Var::U)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ring_zero();
        }
        self * rhs
    }
    fn ring_scale(&self, k: &Rational) -> Self {
        self.scale(k)
    }
}

/// Evaluates B̂_{i,j}(p₁, p₂, …) over any [`BellRing`].
///
/// `p[k]` supplies p_{k+1}. For `j = 0` the result is δ_{i,0} and `p` may
/// be empty; for `j ≥ 1` the sequence must supply at least `i − j + 1`
/// leading entries.
///
/// # Errors
/// Returns an input error when the sequence is too short.
///
/// # Examples
/// ```
/// use xi_core::bell::bell_partial_ordinary;
/// use xi_core::rational::rat;
/// // coefficient of x^3 in (x - x^2/2 + ...)^2 is 2·p₁p₂ = -1
/// let p = vec![rat(1, 1), rat(-1, 2)];
/// let b = bell_partial_ordinary(3, 2, &p).unwrap();
/// assert_eq!(b, rat(-1, 1));
/// ```
pub fn bell_partial_ordinary<T: BellRing>(i: usize, j: usize, p: &[T]) -> Result<T, Error> {
    if j == 0 {
        return Ok(if i == 0 { T::ring_one() } else { T::ring_zero() });
    }
    if i < j {
        return Ok(T::ring_zero());
    }
    let needed = i - j + 1;
    if p.len() < needed {
        return Err(Error::Input(format!(
            "bell_partial_ordinary({i}, {j}) needs {needed} sequence entries, got {}",
            p.len()
        )));
    }
    let mut acc = T::ring_zero();
    // Multiplicities m_k of part size k, built in descending part size so
    // each partition of i into exactly j parts is visited once.
    let mut mults = vec![0u32; needed + 1];
    fn walk<T: BellRing>(
        part: usize,
        rem_i: usize,
        rem_j: usize,
        mults: &mut Vec<u32>,
        p: &[T],
        acc: &mut T,
    ) {
        if rem_j == 0 {
            if rem_i == 0 {
                let mut coeff = Rational::from(factorial(mults.iter().sum::<u32>()));
                let mut term = T::ring_one();
                for (k, &m) in mults.iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    coeff /= Rational::from(factorial(m));
                    term = term.ring_mul(&p[k - 1].ring_pow(m));
                }
                *acc = acc.ring_add(&term.ring_scale(&coeff));
            }
            return;
        }
        if part == 0 || rem_i < rem_j || rem_i > part * rem_j {
            return;
        }
        let max_m = (rem_i / part).min(rem_j);
        for m in (0..=max_m).rev() {
            mults[part] = m as u32;
            walk(part - 1, rem_i - m * part, rem_j - m, mults, p, acc);
            mults[part] = 0;
        }
    }
    walk(needed, i, j, &mut mults, p, &mut acc);
    Ok(acc)
}
