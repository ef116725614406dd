//! Univariate rational functions over exact rationals, kept in canonical
//! form: numerator and denominator coprime, denominator monic.

use crate::poly::Poly;
use crate::rational::Rational;
use std::ops::{Add, Mul, Neg, Sub};

/// The variable a rational function is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
    W,
}

impl Var {
    pub fn as_str(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::W => "w",
        }
    }
}

/// A ratio of two [`Poly`] values in a named variable.
///
/// Invariants: gcd(num, den) = 1, den is monic, and den is nonzero.
/// The zero function is 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    var: Var,
}

impl RationalFunction {
    /// Builds `num / den` and normalizes.
    ///
    /// # Panics
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly, var: Var) -> Self {
        assert!(!den.is_zero(), "zero denominator polynomial");
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one(), var };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(&g);
        debug_assert!(r2.is_zero());
        let lead_inv = Rational::from(den.leading().unwrap().clone().recip());
        RationalFunction { num: num.scale(&lead_inv), den: den.scale(&lead_inv), var }
    }

    pub fn zero(var: Var) -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one(), var }
    }

    pub fn one(var: Var) -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one(), var }
    }

    pub fn constant(c: Rational, var: Var) -> Self {
        RationalFunction { num: Poly::constant(c), den: Poly::one(), var }
    }

    pub fn from_poly(p: Poly, var: Var) -> Self {
        RationalFunction { num: p, den: Poly::one(), var }
    }

    /// The monomial `x` in the given variable.
    pub fn x(var: Var) -> Self {
        RationalFunction::from_poly(Poly::x(), var)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the function does not depend on its variable.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree().unwrap_or(0) == 0
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Returns the same function expressed in another variable name.
    pub fn with_var(&self, var: Var) -> Self {
        RationalFunction { num: self.num.clone(), den: self.den.clone(), var }
    }

    /// Multiplies by an exact scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return RationalFunction::zero(self.var);
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone(), var: self.var }
    }

    /// Reciprocal. Panics if the function is zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFunction::new(self.den.clone(), self.num.clone(), self.var)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut out = RationalFunction::one(self.var);
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Exact evaluation; `None` when the denominator vanishes at `x`.
    pub fn eval_rat(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval_rat(x);
        if d == 0 {
            return None;
        }
        Some(self.num.eval_rat(x) / d)
    }

    /// Degree of the numerator minus degree of the denominator, or `None`
    /// for the zero function.
    pub fn degree_delta(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().unwrap_or(0) as i64)
    }

    /// Ratio of leading coefficients: the limit of `f(x)/x^degree_delta`
    /// as x grows. `None` for the zero function.
    pub fn leading_ratio(&self) -> Option<Rational> {
        let n = self.num.leading()?;
        Some(Rational::from(n / self.den.leading().unwrap()))
    }

    /// Canonical serialized form `(num) / (den)`.
    ///
    /// # Examples
    /// ```
    /// use xi_core::poly::Poly;
    /// use xi_core::ratfunc::{RationalFunction, Var};
    /// let f = RationalFunction::new(
    ///     Poly::from_int_coeffs(&[0, 2]),
    ///     Poly::from_int_coeffs(&[2, 2]),
    ///     Var::U,
    /// );
    /// assert_eq!(f.canonical_text(), "(u) / (u + 1)");
    /// ```
    pub fn canonical_text(&self) -> String {
        let v = self.var.as_str();
        format!("({}) / ({})", self.num.to_text(v), self.den.to_text(v))
    }

    /// Variable of a binary operation's result. Constants are agnostic;
    /// two genuinely different variables are a caller bug.
    fn joint_var(&self, rhs: &Self) -> Var {
        if self.var == rhs.var || rhs.is_constant() {
            self.var
        } else if self.is_constant() {
            rhs.var
        } else {
            panic!("mixed-variable rational function arithmetic");
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let var = self.joint_var(rhs);
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den, var)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone(), var: self.var }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let var = self.joint_var(rhs);
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den, var)
    }
}
