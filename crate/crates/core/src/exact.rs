//! Exact integer, rational and univariate polynomial arithmetic.
//!
//! Integers are [`BigInt`] and rationals are [`BigRational`]; both come from
//! the `num` family. Polynomials are small dense coefficient vectors kept in
//! normal form (no trailing zeros), so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: Var, right: Var },
    #[error("binomial lower index must be nonnegative, got {0}")]
    NegativeLowerIndex(i64),
}

/// Generalized binomial coefficient.
///
/// Zero for `r < 0`, otherwise the falling factorial `n(n-1)...(n-r+1) / r!`,
/// which is well defined for negative `n` as well.
pub fn binomial(n: &Integer, r: &Integer) -> Integer {
    if r.is_negative() {
        return Integer::zero();
    }
    // C(n, r) = C(n, n - r) only helps for 0 <= r <= n; keep the loop short there.
    let r = if !n.is_negative() && r > n {
        return Integer::zero();
    } else if !n.is_negative() && (n - r) < *r {
        n - r
    } else {
        r.clone()
    };
    let mut acc = Integer::one();
    let mut t = Integer::zero();
    while t < r {
        // acc * (n - t) / (t + 1) stays integral at every step.
        acc *= n - &t;
        t += 1;
        acc /= &t;
    }
    acc
}

/// [`binomial`] on machine integers.
pub fn binom(n: i64, r: i64) -> Integer {
    binomial(&Integer::from(n), &Integer::from(r))
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn ipow(base: i64, exp: u32) -> Integer {
    num_traits::pow(Integer::from(base), exp as usize)
}

/// `n!` for small `n`.
pub fn factorial(n: u32) -> Integer {
    (1..=n).fold(Integer::one(), |acc, t| acc * t)
}

/// Decimal rendering used in reports.
pub fn int_to_string(v: &Integer) -> String {
    v.to_str_radix(10)
}

/// `num/den` rendering used in reports; the denominator is always printed.
pub fn rational_to_string(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Label of the single indeterminate a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Q => "q",
        })
    }
}

/// Ring operations a polynomial coefficient needs.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
{
}

/// Dense univariate polynomial, coefficients stored low to high degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    var: Var,
    coeffs: Vec<C>,
}

/// Polynomial in `x` with rational coefficients.
pub type XPoly = Polynomial<Rational>;
/// Polynomial in `q` with integer coefficients.
pub type QPoly = Polynomial<Integer>;

impl<C: Coefficient> Polynomial<C> {
    pub fn new(var: Var, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Self {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(var: Var, c: C) -> Self {
        Self::new(var, vec![c])
    }

    /// The indeterminate itself.
    pub fn var(var: Var) -> Self {
        Self::new(var, vec![C::zero(), C::one()])
    }

    /// `c * var^exp`.
    pub fn monomial(var: Var, c: C, exp: usize) -> Self {
        let mut coeffs = vec![C::zero(); exp];
        coeffs.push(c);
        Self::new(var, coeffs)
    }

    /// `(var + shift)`.
    pub fn linear(var: Var, shift: C) -> Self {
        Self::new(var, vec![shift, C::one()])
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of the highest-degree term; zero for the zero polynomial.
    pub fn leading_coefficient(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, d: usize) -> C {
        self.coeffs.get(d).cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, v: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * v + c)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(self.var, C::one()), |acc, _| &acc * self)
    }

    pub fn try_equal(&self, other: &Self) -> Result<bool, ExactError> {
        self.check_var(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|d| self.coeff(d) + &other.coeff(d)).collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|d| self.coeff(d) - &other.coeff(d)).collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.clone() * b;
                coeffs[i + j] = coeffs[i + j].clone() + &t;
            }
        }
        Ok(Self::new(self.var, coeffs))
    }

    fn check_var(&self, other: &Self) -> Result<(), ExactError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(ExactError::VariableMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }
}

/// Structural equality of two normalized polynomials in the same variable.
pub fn poly_equal<C: Coefficient>(
    a: &Polynomial<C>,
    b: &Polynomial<C>,
) -> Result<bool, ExactError> {
    a.try_equal(b)
}

pub fn poly_eval<C: Coefficient>(p: &Polynomial<C>, v: &C) -> C {
    p.eval(v)
}

pub fn leading_coefficient<C: Coefficient>(p: &Polynomial<C>) -> C {
    p.leading_coefficient()
}

// Operators panic on a variable mismatch; use the `try_*` forms when the
// labels are not known to agree.
impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial variables must agree")
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial variables must agree")
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial variables must agree")
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Self::new(self.var, self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "{}", self.var)?,
                1 => write!(f, "({c}){}", self.var)?,
                _ if c.is_one() => write!(f, "{}^{d}", self.var)?,
                _ => write!(f, "({c}){}^{d}", self.var)?,
            }
        }
        Ok(())
    }
}

impl XPoly {
    /// Integer constant as a polynomial in `x`.
    pub fn int(v: impl Into<Integer>) -> Self {
        Self::constant(Var::X, Rational::from_integer(v.into()))
    }

    /// `x + shift`.
    pub fn x_plus(shift: impl Into<Integer>) -> Self {
        Self::linear(Var::X, Rational::from_integer(shift.into()))
    }

    pub fn eval_int(&self, x: impl Into<Integer>) -> Rational {
        self.eval(&Rational::from_integer(x.into()))
    }

    /// Coefficients as `num/den` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }
}

impl QPoly {
    /// `sign * q^exp`.
    pub fn signed_monomial(sign: i8, exp: usize) -> Self {
        Self::monomial(Var::Q, Integer::from(sign), exp)
    }

    /// `a + b q`.
    pub fn q_linear(a: impl Into<Integer>, b: impl Into<Integer>) -> Self {
        Self::new(Var::Q, vec![a.into(), b.into()])
    }

    pub fn eval_int(&self, q: i64) -> Integer {
        self.eval(&Integer::from(q))
    }

    /// Coefficients as decimal strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(int_to_string).collect()
    }
}

/// `binomial(p, r) = p (p-1) ... (p-r+1) / r!` as a polynomial in `x`.
pub fn binomial_poly(p: &XPoly, r: i64) -> Result<XPoly, ExactError> {
    if r < 0 {
        return Err(ExactError::NegativeLowerIndex(r));
    }
    let mut acc = XPoly::constant(p.variable(), Rational::one());
    for t in 0..r {
        let shifted = p - &XPoly::constant(p.variable(), Rational::from_integer(t.into()));
        acc = &acc * &shifted;
    }
    let denom = Rational::from_integer(factorial(r as u32));
    Ok(acc.scale(&(Rational::one() / denom)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom(5, 2), 10.into());
        assert_eq!(binom(3, 5), 0.into());
        // (-1)(-2)(-3)/3! = -1
        assert_eq!(binom(-1, 3), (-1).into());
        for n in -7..7 {
            assert_eq!(binom(n, 0), 1.into());
        }
        assert_eq!(binom(4, -1), 0.into());
        assert_eq!(binom(-3, 2), 6.into());
    }

    #[test]
    fn pascal_recurrence_exhaustive() {
        for n in -30i64..=30 {
            for k in 0i64..=30 {
                assert_eq!(
                    binom(n, k),
                    binom(n - 1, k - 1) + binom(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn binomial_matches_falling_factorial_oracle() {
        // Direct product, independent of the symmetry shortcut.
        let oracle = |n: i64, k: i64| -> Integer {
            let num = (0..k).fold(Integer::one(), |a, t| a * (n - t));
            num / factorial(k as u32)
        };
        for n in -12..=25 {
            for k in 0..=14 {
                assert_eq!(binom(n, k), oracle(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn binomial_poly_examples() {
        let x = XPoly::var(Var::X);
        let b2 = binomial_poly(&x, 2).unwrap();
        assert_eq!(b2.coeffs(), &[r(0, 1), r(-1, 2), r(1, 2)]);
        assert_eq!(binomial_poly(&x, 0).unwrap(), XPoly::int(1));
        assert_eq!(binomial_poly(&XPoly::x_plus(1), 1).unwrap(), XPoly::x_plus(1));
        assert_eq!(
            binomial_poly(&x, -1),
            Err(ExactError::NegativeLowerIndex(-1))
        );
    }

    #[test]
    fn binomial_poly_agrees_with_binomial() {
        let x = XPoly::var(Var::X);
        for k in 0..=10 {
            let p = binomial_poly(&x, k).unwrap();
            assert_eq!(p.degree(), Some(k as usize));
            for t in -20i64..=20 {
                assert_eq!(p.eval_int(t), Rational::from_integer(binom(t, k)));
            }
        }
    }

    #[test]
    fn leading_coefficient_and_root() {
        let x = XPoly::var(Var::X);
        for m in 0..=7i64 {
            let p = &XPoly::x_plus(-m) * &binomial_poly(&x, m).unwrap();
            assert_eq!(p.degree(), Some(m as usize + 1));
            assert_eq!(
                leading_coefficient(&p),
                Rational::new(1.into(), factorial(m as u32))
            );
            assert!(poly_eval(&p, &Rational::from_integer(m.into())).is_zero());
            assert!(poly_equal(&p, &p).unwrap());
        }
    }

    #[test]
    fn normalization_and_mismatch() {
        let p = QPoly::new(Var::Q, vec![1.into(), 0.into(), 0.into()]);
        assert_eq!(p.degree(), Some(0));
        let z = QPoly::new(Var::Q, vec![0.into()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.leading_coefficient(), Integer::zero());
        let a = QPoly::var(Var::Q);
        let b = QPoly::var(Var::X);
        assert!(matches!(
            poly_equal(&a, &b),
            Err(ExactError::VariableMismatch { .. })
        ));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(rational_to_string(&r(-6, 4)), "-3/2");
        assert_eq!(rational_to_string(&r(3, 1)), "3/1");
        assert_eq!(QPoly::q_linear(1, 2).to_strings(), vec!["1", "2"]);
        assert_eq!(QPoly::q_linear(1, 2).to_string(), "1 + (2)q");
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(ipow(0, 0), 1.into());
        assert_eq!(ipow(0, 3), 0.into());
        assert_eq!(ipow(-4, 3), (-64).into());
    }
}
