//! Direct-summation evaluators for the master identities and their reduced
//! forms, together with closed forms and the consistency checks that tie the
//! reduced forms back to the master identities.
//!
//! All evaluation is exact. Powers use the convention `0^0 = 1`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{binom, binomial_poly, ipow, Integer, QPoly, Rational, Var, XPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("k must satisfy 0 <= k <= m (got m={m}, k={k})")]
    KOutOfRange { m: u32, k: u32 },
    #[error("this sum needs k < m (got m={m}, k={k}); use the k = m form")]
    KNotBelowM { m: u32, k: u32 },
}

/// Parameters of the master identities. `x` may instead be left symbolic by
/// the polynomial-side functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MasterParams {
    pub m: u32,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

/// Parameters after the substitution `x = m - k`, `y = b`, `z = q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedParams {
    pub m: u32,
    pub k: u32,
    pub b: u32,
    pub q: u32,
}

impl ReducedParams {
    pub fn new(m: u32, k: u32, b: u32, q: u32) -> Result<Self, SumError> {
        if k > m {
            return Err(SumError::KOutOfRange { m, k });
        }
        Ok(Self { m, k, b, q })
    }
}

fn sign(e: i64) -> Integer {
    if e.rem_euclid(2) == 0 {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// Left side of the original identity, evaluated at integers.
pub fn lhs1(x: i64, y: i64, m: u32) -> Integer {
    let m = m as i64;
    let first: Integer = (0..=m)
        .map(|i| sign(i) * binom(x + y + i, m - i) * binom(y + 2 * i, i))
        .sum();
    let second: Integer = (0..=m)
        .map(|i| binom(x + i, m - i) * ipow(-4, i as u32))
        .sum();
    Integer::from(x + m + 1) * first - second
}

/// `(x - m) C(x, m)`.
pub fn rhs1(x: i64, _y: i64, m: u32) -> Integer {
    Integer::from(x - m as i64) * binom(x, m as i64)
}

pub fn lhs2(x: i64, y: i64, z: i64, m: u32) -> Integer {
    let m = m as i64;
    let s: Integer = (0..=m)
        .map(|n| sign(n) * binom(x + y + n * z, m - n) * binom(y + n * (z + 1), n))
        .sum();
    Integer::from(x + (m + 1) * z) * s
}

pub fn rhs2(x: i64, _y: i64, z: i64, m: u32) -> Integer {
    let mi = m as i64;
    let mut s = Integer::zero();
    for n in 0..=mi {
        for l in 0..=n {
            s += sign(n)
                * binom(n, l)
                * binom(x + l, mi - n)
                * ipow(1 + z, (n + l) as u32)
                * ipow(1 - z, (n - l) as u32);
        }
    }
    Integer::from(z) * s + rhs1(x, 0, m)
}

fn xpoly_int(v: Integer) -> XPoly {
    XPoly::constant(Var::X, Rational::from_integer(v))
}

fn bpoly(shift: i64, r: i64) -> XPoly {
    if r < 0 {
        return XPoly::zero(Var::X);
    }
    binomial_poly(&XPoly::x_plus(shift), r).expect("r checked nonnegative")
}

/// Both sides of the original identity as polynomials in `x`.
pub fn poly_sides1(y: i64, m: u32) -> (XPoly, XPoly) {
    let mi = m as i64;
    let mut first = XPoly::zero(Var::X);
    let mut second = XPoly::zero(Var::X);
    for i in 0..=mi {
        let c = sign(i) * binom(y + 2 * i, i);
        first = &first + &bpoly(y + i, mi - i).scale(&Rational::from_integer(c));
        let d = ipow(-4, i as u32);
        second = &second + &bpoly(i, mi - i).scale(&Rational::from_integer(d));
    }
    let lhs = &(&XPoly::x_plus(mi + 1) * &first) - &second;
    (lhs, rhs_poly(m))
}

fn rhs_poly(m: u32) -> XPoly {
    let mi = m as i64;
    &XPoly::x_plus(-mi) * &bpoly(0, mi)
}

/// Both sides of the generalized identity as polynomials in `x`.
pub fn poly_sides2(y: i64, z: i64, m: u32) -> (XPoly, XPoly) {
    let mi = m as i64;
    let mut s = XPoly::zero(Var::X);
    for n in 0..=mi {
        let c = sign(n) * binom(y + n * (z + 1), n);
        s = &s + &bpoly(y + n * z, mi - n).scale(&Rational::from_integer(c));
    }
    let lhs = &XPoly::x_plus((mi + 1) * z) * &s;

    let mut t = XPoly::zero(Var::X);
    for n in 0..=mi {
        for l in 0..=n {
            let c = sign(n)
                * binom(n, l)
                * ipow(1 + z, (n + l) as u32)
                * ipow(1 - z, (n - l) as u32);
            if c.is_zero() {
                continue;
            }
            t = &t + &bpoly(l, mi - n).scale(&Rational::from_integer(c));
        }
    }
    let rhs = &(&xpoly_int(z.into()) * &t) + &rhs_poly(m);
    (lhs, rhs)
}

/// Signed domino sum; equals `2^k`.
pub fn eq3_sum(m: u32, k: u32, b: u32) -> Integer {
    let (m, k, b) = (m as i64, k as i64, b as i64);
    (0..=m)
        .map(|i| sign(i) * binom(2 * m + b - k - i, i) * binom(2 * m + b - 2 * i, m - i))
        .sum()
}

pub fn eq3_closed(k: u32) -> Integer {
    ipow(2, k)
}

/// Signed domino sum with free coloring; equals `(2m-k+1) 2^k`.
pub fn eq4_sum(m: u32, k: u32) -> Integer {
    let (m, k) = (m as i64, k as i64);
    (0..=m)
        .map(|i| sign(i) * binom(2 * m - k - i, i) * ipow(2, (2 * m - 2 * i) as u32))
        .sum()
}

pub fn eq4_closed(m: u32, k: u32) -> Integer {
    Integer::from(2 * m as i64 - k as i64 + 1) * ipow(2, k)
}

/// Signed `(q+1)`-omino sum; equals `q^(m-k) (1+q)^k`.
pub fn eq5_sum(m: u32, k: u32, b: u32, q: u32) -> Integer {
    let (m, k, b, q) = (m as i64, k as i64, b as i64, q as i64);
    (0..=m)
        .map(|i| {
            sign(i)
                * binom((q + 1) * m - k + b - q * i, i)
                * binom((q + 1) * m + b - (q + 1) * i, m - i)
        })
        .sum()
}

pub fn eq5_closed(m: u32, k: u32, q: u32) -> Integer {
    ipow(q as i64, m.saturating_sub(k)) * ipow(1 + q as i64, k)
}

/// The matrix sum with `q` symbolic, for any `0 <= k <= m`. Terms whose
/// binomial `C(m-k+j, m-i)` vanishes are skipped, which keeps every
/// exponent `i+j-k` nonnegative.
fn matrix_sum_poly(m: u32, k: u32) -> QPoly {
    let one_plus = QPoly::q_linear(1, 1);
    let one_minus = QPoly::q_linear(1, -1);
    let (mi, ki) = (m as i64, k as i64);
    let mut total = QPoly::zero(Var::Q);
    for i in 0..=mi {
        for j in 0..=i {
            let c = binom(mi - ki + j, mi - i);
            if c.is_zero() {
                continue;
            }
            debug_assert!(i + j >= ki);
            let coeff = sign(mi - i) * binom(i, j) * c;
            let term = &one_plus.pow((i + j - ki) as u32) * &one_minus.pow((i - j) as u32);
            total = &total + &term.scale(&coeff);
        }
    }
    total
}

/// Matrix sum for `k < m` as a polynomial in `q`.
pub fn eq6_poly(m: u32, k: u32) -> Result<QPoly, SumError> {
    if k >= m {
        return Err(SumError::KNotBelowM { m, k });
    }
    Ok(matrix_sum_poly(m, k))
}

pub fn eq6_sum(m: u32, k: u32, q: u32) -> Result<Integer, SumError> {
    Ok(eq6_poly(m, k)?.eval_int(q as i64))
}

/// `((m-k) + (m+1) q) q^(m-k-1)` for `k < m`.
pub fn eq6_closed_poly(m: u32, k: u32) -> Result<QPoly, SumError> {
    if k >= m {
        return Err(SumError::KNotBelowM { m, k });
    }
    let lin = QPoly::q_linear(m - k, m + 1);
    Ok(&lin * &QPoly::signed_monomial(1, (m - k - 1) as usize))
}

/// Matrix sum at `k = m` with `q` symbolic; equals the constant `m + 1`.
pub fn eq6_special_poly(m: u32) -> QPoly {
    matrix_sum_poly(m, m)
}

pub fn eq6_special_sum(m: u32, q: u32) -> Integer {
    eq6_special_poly(m).eval_int(q as i64)
}

/// Closed form of the matrix-family weight total for any `0 <= k <= m`.
pub fn matrix_closed_poly(m: u32, k: u32) -> Result<QPoly, SumError> {
    if k > m {
        return Err(SumError::KOutOfRange { m, k });
    }
    if k == m {
        Ok(QPoly::constant(Var::Q, Integer::from(m + 1)))
    } else {
        eq6_closed_poly(m, k)
    }
}

/// A named equality of the reduction chain that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{equality}: {left} != {right}")]
pub struct ChainViolation {
    pub equality: &'static str,
    pub left: Integer,
    pub right: Integer,
}

pub type CheckResult = Result<(), ChainViolation>;

fn expect_eq(equality: &'static str, left: Integer, right: Integer) -> CheckResult {
    if left == right {
        Ok(())
    } else {
        Err(ChainViolation {
            equality,
            left,
            right,
        })
    }
}

/// Checks that the original identity at `x = m - k`, `y = b` reduces to the
/// two domino sums.
pub fn reduction_chain1(m: u32, k: u32, b: u32) -> CheckResult {
    let x = m as i64 - k as i64;
    let y = b as i64;
    expect_eq("rhs1(m-k, b, m) = 0", rhs1(x, y, m), Integer::zero())?;
    let weighted = Integer::from(2 * m - k + 1) * eq3_sum(m, k, b) - eq4_sum(m, k);
    expect_eq(
        "lhs1(m-k, b, m) = (-1)^m [(2m-k+1) eq3 - eq4]",
        lhs1(x, y, m),
        sign(m as i64) * weighted.clone(),
    )?;
    expect_eq("(2m-k+1) eq3 - eq4 = 0", weighted, Integer::zero())
}

/// `sum_{j<=i<=m} (-1)^i C(i,j) C(m-k+j, m-i) (1+q)^(i+j) (1-q)^(i-j)`
fn reduced_rhs_sum(m: u32, k: u32, q: u32) -> Integer {
    let (mi, ki, qi) = (m as i64, k as i64, q as i64);
    let mut s = Integer::zero();
    for i in 0..=mi {
        for j in 0..=i {
            s += sign(i)
                * binom(i, j)
                * binom(mi - ki + j, mi - i)
                * ipow(1 + qi, (i + j) as u32)
                * ipow(1 - qi, (i - j) as u32);
        }
    }
    s
}

/// Checks that the generalized identity at `x = m - k`, `y = b`, `z = q`
/// reduces to the omino sum and the matrix sum.
pub fn reduction_chain2(m: u32, k: u32, b: u32, q: u32) -> CheckResult {
    let factor = Integer::from(m as i64 - k as i64 + (m as i64 + 1) * q as i64);
    let s = reduced_rhs_sum(m, k, q);
    expect_eq(
        "(-1)^m ((m-k)+(m+1)q) eq5 = q S",
        sign(m as i64) * factor.clone() * eq5_sum(m, k, b, q),
        Integer::from(q) * s.clone(),
    )?;
    let matrix = if k < m {
        eq6_sum(m, k, q).expect("k < m")
    } else {
        eq6_special_sum(m, q)
    };
    let lifted = ipow(1 + q as i64, k) * matrix;
    expect_eq("(-1)^m S = (1+q)^k eq6", sign(m as i64) * s, lifted.clone())?;
    expect_eq(
        "q (1+q)^k eq6 = ((m-k)+(m+1)q) q^(m-k) (1+q)^k",
        Integer::from(q) * lifted,
        factor * ipow(q as i64, m - k) * ipow(1 + q as i64, k),
    )?;
    let x = m as i64 - k as i64;
    expect_eq(
        "lhs2(m-k, b, q, m) = rhs2(m-k, b, q, m)",
        lhs2(x, b as i64, q as i64, m),
        rhs2(x, b as i64, q as i64, m),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;

    #[test]
    fn master_one_small_values() {
        for m in 0..5 {
            for y in 0..3 {
                assert_eq!(rhs1(m as i64, y, m), Integer::zero());
            }
        }
        assert_eq!(rhs1(3, 0, 1), 6.into());
        assert_eq!(lhs1(3, 0, 1), 6.into());
    }

    #[test]
    fn master_two_small_values() {
        assert_eq!(lhs2(0, 0, 2, 0), 2.into());
        assert_eq!(rhs2(0, 0, 2, 0), 2.into());
        // z = 0, x = m: rhs2 vanishes, lhs2 = x * sum (-1)^n C(x+y, m-n) C(y+n, n)
        for m in 0..5u32 {
            for y in 0..4i64 {
                let x = m as i64;
                let s: Integer = (0..=m as i64)
                    .map(|n| sign(n) * binom(x + y, m as i64 - n) * binom(y + n, n))
                    .sum();
                assert_eq!(lhs2(x, y, 0, m), Integer::from(x) * s);
                assert_eq!(lhs2(x, y, 0, m), Integer::zero());
                assert_eq!(rhs2(x, y, 0, m), Integer::zero());
            }
        }
    }

    #[test]
    fn generalization_reduces_to_original_at_z_one() {
        for m in 0..=6u32 {
            for x in -8..=8 {
                for y in 0..=3 {
                    assert_eq!(lhs2(x, y, 1, m) - rhs2(x, y, 1, m), lhs1(x, y, m) - rhs1(x, y, m));
                    assert_eq!(lhs1(x, y, m), rhs1(x, y, m), "m={m} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn reduced_sum_examples() {
        assert_eq!(eq3_sum(1, 0, 0), 1.into());
        for b in 0..6 {
            assert_eq!(eq3_sum(0, 0, b), 1.into());
        }
        assert_eq!(eq3_sum(4, 1, 2), 2.into());
        assert_eq!(eq4_sum(1, 0), 3.into());
        assert_eq!(eq4_sum(0, 0), 1.into());
        assert_eq!(eq4_sum(4, 1), 16.into());
        assert_eq!(eq5_sum(1, 1, 0, 2), 3.into());
        for b in 0..4 {
            for q in 0..5 {
                assert_eq!(eq5_sum(0, 0, b, q), 1.into());
            }
        }
        for m in 0..6 {
            for k in 0..=m {
                for b in 0..3 {
                    assert_eq!(eq5_sum(m, k, b, 1), eq3_sum(m, k, b));
                }
            }
        }
    }

    #[test]
    fn matrix_sum_examples() {
        assert_eq!(eq6_poly(1, 0).unwrap(), QPoly::q_linear(1, 2));
        assert_eq!(eq6_sum(1, 0, 0).unwrap(), 1.into());
        for m in 1..=6 {
            assert_eq!(eq6_poly(m, m - 1).unwrap(), QPoly::q_linear(1, m + 1));
        }
        for q in 0..=4 {
            assert_eq!(eq6_special_sum(1, q), 2.into());
            assert_eq!(eq6_special_sum(0, q), 1.into());
        }
        assert_eq!(eq6_special_sum(8, 3), 9.into());
        assert_eq!(eq6_poly(3, 3), Err(SumError::KNotBelowM { m: 3, k: 3 }));
        assert!(eq6_sum(2, 5, 1).is_err());
    }

    #[test]
    fn reduced_identities_over_sweeps() {
        for m in 0..=8 {
            for k in 0..=m {
                for b in 0..=4 {
                    assert_eq!(eq3_sum(m, k, b), eq3_closed(k));
                }
                assert_eq!(eq4_sum(m, k), eq4_closed(m, k));
            }
        }
        for m in 0..=6 {
            for k in 0..=m {
                for b in 0..=3 {
                    for q in 0..=4 {
                        assert_eq!(eq5_sum(m, k, b, q), eq5_closed(m, k, q), "{m} {k} {b} {q}");
                    }
                }
            }
        }
        for m in 0..=8 {
            assert_eq!(eq6_special_poly(m), QPoly::constant(Var::Q, (m + 1).into()));
        }
        for m in 1..=6 {
            for k in 0..m {
                assert_eq!(eq6_poly(m, k).unwrap(), eq6_closed_poly(m, k).unwrap());
            }
        }
    }

    #[test]
    fn polynomial_sides() {
        for m in 0..=6u32 {
            let lc = Rational::new(1.into(), factorial(m));
            for y in 0..=3 {
                let (l, r) = poly_sides1(y, m);
                assert_eq!(l, r);
                assert_eq!(l.degree(), Some(m as usize + 1));
                assert_eq!(l.leading_coefficient(), lc);
                for x in 0..=m as i64 {
                    assert!(r.eval_int(x).is_zero());
                }
                for x in -10..=10 {
                    assert_eq!(l.eval_int(x), Rational::from_integer(lhs1(x, y, m)));
                }
                for z in 0..=3 {
                    let (l2, r2) = poly_sides2(y, z, m);
                    assert_eq!(l2, r2, "m={m} y={y} z={z}");
                    assert_eq!(l2.degree(), Some(m as usize + 1));
                    assert_eq!(l2.leading_coefficient(), lc);
                }
                // At z = 1 the sides differ from the original ones by the same
                // (-4)^i sum, so the differences coincide.
                let (l2, r2) = poly_sides2(y, 1, m);
                assert_eq!(&l2 - &l, &r2 - &r);
            }
        }
    }

    #[test]
    fn reduction_chains() {
        assert_eq!(reduction_chain1(4, 1, 2), Ok(()));
        for m in 0..=6 {
            for k in 0..=m {
                for b in 0..=3 {
                    assert_eq!(reduction_chain1(m, k, b), Ok(()), "{m} {k} {b}");
                }
            }
        }
        assert_eq!(reduction_chain2(1, 0, 0, 2), Ok(()));
        for m in 0..=5 {
            for k in 0..=m {
                for b in 0..=2 {
                    for q in 0..=3 {
                        assert_eq!(reduction_chain2(m, k, b, q), Ok(()), "{m} {k} {b} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_params_validation() {
        assert!(ReducedParams::new(3, 4, 0, 0).is_err());
        assert!(ReducedParams::new(3, 3, 0, 0).is_ok());
    }
}
