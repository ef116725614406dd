//! Dense univariate polynomials with exact rational coefficients.

use crate::rational::Rational;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial stored as coefficients in ascending degree order.
///
/// Invariant: the coefficient vector never ends in a zero, so the zero
/// polynomial is the empty vector and `coeffs.len() - 1` is the degree
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(Rational::from(1))
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::monomial(1, Rational::from(1))
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::new(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from ascending integer coefficients.
    ///
    /// # Examples
    /// ```
    /// use xi_core::poly::Poly;
    /// let p = Poly::from_int_coeffs(&[-2, 0, 4]);
    /// assert_eq!(p.to_text("x"), "4 x^2 - 2");
    /// ```
    pub fn from_int_coeffs(ints: &[i64]) -> Self {
        Poly::from_coeffs(ints.iter().map(|&i| Rational::from(i)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Ascending coefficient slice.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: &Rational) -> Poly {
        if *c == 0 {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect() }
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::new(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, e: u32) -> Poly {
        let mut base = self.clone();
        let mut result = Poly::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from(c * Rational::from(k as u64)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval_rat(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Substitutes `x -> s * x`, scaling the coefficient of x^k by s^k.
    pub fn compose_scale(&self, s: &Rational) -> Poly {
        let mut power = Rational::from(1);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = Rational::from(c * &power);
                power *= s;
                out
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Reverses the coefficients: x^d * p(1/x) for degree-d `p`.
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = Rational::from(lead.clone().recip());
                self.scale(&inv)
            }
        }
    }

    /// Quotient and remainder of exact polynomial division.
    ///
    /// # Panics
    /// Panics if `div` is zero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        let d = div.degree().expect("division by zero polynomial");
        let lead_inv = Rational::from(div.leading().unwrap().clone().recip());
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::new(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            if rem[k] == 0 {
                continue;
            }
            let q = Rational::from(&rem[k] * &lead_inv);
            for j in 0..d {
                let sub = Rational::from(&q * &div.coeffs[j]);
                rem[k - d + j] -= sub;
            }
            rem[k] = Rational::new();
            quot[k - d] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    /// Canonical text with terms in descending degree.
    ///
    /// Coefficients print as `p` or `p/q`; unit coefficients are omitted
    /// before a power of the variable.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let mag = Rational::from(c.clone().abs());
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit = mag == 1;
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if unit {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag} {power}"));
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(Rational::from(self.coeff(k) + rhs.coeff(k)));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(Rational::from(self.coeff(k) - rhs.coeff(k)));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| Rational::from(-c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic_and_trimming() {
        let p = Poly::from_int_coeffs(&[1, 2]);
        let q = Poly::from_int_coeffs(&[-1, -2]);
        assert!((&p + &q).is_zero());
        assert_eq!((&p * &p).to_text("x"), "4 x^2 + 4 x + 1");
    }

    #[test]
    fn divrem_recombines() {
        let p = Poly::from_int_coeffs(&[2, 0, -3, 1, 5]);
        let d = Poly::from_int_coeffs(&[1, 3, 2]);
        let (q, r) = p.divrem(&d);
        let back = &(&q * &d) + &r;
        assert_eq!(back, p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = Poly::from_int_coeffs(&[-1, 1]);
        let a = &f * &Poly::from_int_coeffs(&[3, 1]);
        let b = &f * &Poly::from_int_coeffs(&[5, 0, 7]);
        assert_eq!(a.gcd(&b), f.make_monic());
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly::from_int_coeffs(&[1, 0, 3]);
        assert_eq!(p.derivative(), Poly::from_int_coeffs(&[0, 6]));
        assert_eq!(p.eval_rat(&rat(1, 2)), rat(7, 4));
    }

    #[test]
    fn text_form_handles_signs_and_units() {
        let p = Poly::from_coeffs(vec![rat(-1, 3), rat(1, 1), rat(-1, 1)]);
        assert_eq!(p.to_text("u"), "-u^2 + u - 1/3");
        assert_eq!(Poly::zero().to_text("u"), "0");
    }

    #[test]
    fn reciprocal_reverses() {
        let p = Poly::from_int_coeffs(&[3, 0, 1]);
        assert_eq!(p.reciprocal(), Poly::from_int_coeffs(&[1, 0, 3]));
    }
}
