//! Exact rational scalars and the combinatorial helpers built on them.
//!
//! Everything here is exact arithmetic on [`Rational`] and [`Integer`];
//! no floating point is involved.

pub use rug::Integer;
pub use rug::Rational;

/// Builds a rational from a signed numerator and denominator.
///
/// # Panics
/// Panics if `den` is zero.
///
/// # Examples
/// ```
/// use xi_core::rational::rat;
/// assert_eq!(rat(2, 4), rat(1, 2));
/// ```
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::from((num, den))
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Binomial coefficient C(n, k) for nonnegative integers.
pub fn binomial_int(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    let k = k.min(n - k);
    let mut acc = Integer::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial coefficient C(beta, m) for rational `beta`,
/// computed as the falling factorial beta(beta-1)...(beta-m+1)/m!.
pub fn binomial_rat(beta: &Rational, m: u32) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..m {
        let factor = beta.clone() - Rational::from(i);
        acc *= factor;
    }
    acc / Rational::from(factorial(m))
}

/// Double factorial n!! for odd n >= -1, with (-1)!! = 1.
///
/// # Panics
/// Panics if `n` is even or below -1.
pub fn double_factorial_odd(n: i64) -> Integer {
    assert!(n >= -1 && n % 2 != 0 || n == -1, "double_factorial_odd needs odd n >= -1, got {n}");
    let mut acc = Integer::from(1);
    let mut k = n;
    while k >= 2 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// The sequence 1, -1/2, 1/3, -1/4, ... of length `len`:
/// the power-series coefficients of log(1+x) starting at x^1.
pub fn log_series_coeffs(len: usize) -> Vec<Rational> {
    (1..=len as i64).map(|k| rat(if k % 2 == 1 { 1 } else { -1 }, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_normalizes() {
        assert_eq!(rat(-4, -6), rat(2, 3));
        assert_eq!(rat(0, 5), Rational::new());
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
    }

    #[test]
    fn binomial_int_values() {
        assert_eq!(binomial_int(6, 2), 15);
        assert_eq!(binomial_int(6, 0), 1);
        assert_eq!(binomial_int(3, 5), 0);
    }

    #[test]
    fn binomial_rat_matches_integer_case() {
        assert_eq!(binomial_rat(&Rational::from(6), 2), rat(15, 1));
        assert_eq!(binomial_rat(&rat(-3, 2), 2), rat(15, 8));
        assert_eq!(binomial_rat(&rat(5, 4), 0), rat(1, 1));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(-1), 1);
        assert_eq!(double_factorial_odd(1), 1);
        assert_eq!(double_factorial_odd(5), 15);
        assert_eq!(double_factorial_odd(9), 945);
    }

    #[test]
    fn log_series_starts_correctly() {
        let s = log_series_coeffs(4);
        assert_eq!(s, vec![rat(1, 1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
    }
}
