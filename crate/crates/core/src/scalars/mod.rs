//! Exact scalar and truncated graded-ring arithmetic.
//!
//! - [`Rational`]: arbitrary precision rationals (always in lowest terms)
//! - [`TPoly`]: polynomials in the stability parameter 𝔱
//! - [`ULaurent`]: Laurent polynomials in the equivariant parameter u with
//!   [`TPoly`] coefficients
//! - [`TruncSeries`]: sparse multivariate series in x₁,y₁,…,x_r,y_r over
//!   [`ULaurent`], truncated by per-pair caps deg(x_i)+deg(y_i) ≤ d_i

mod laurent;
mod series;
mod tpoly;

pub use laurent::ULaurent;
pub use series::{Exponents, TruncSeries};
pub use tpoly::TPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `g·(g−1)⋯(g−k+1)`; 1 for k = 0 and 0 for k > g.
pub fn falling_factorial(g: u64, k: u64) -> Rational {
    if k > g {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(g - i);
    }
    Rational::from_integer(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generalized binomial coefficient e(e−1)⋯(e−k+1)/k!, valid for negative `e`.
pub fn binomial(e: i64, k: u64) -> Rational {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(e) - BigInt::from(i);
    }
    Rational::new(num, factorial(k))
}

/// Renders a rational as `"num/den"`, denominator always present.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// The integer value of `q`, if it has denominator 1.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign_power(e: i64) -> Rational {
    if e.is_even() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub(crate) fn abs_u64(e: i64) -> u64 {
    BigInt::from(e)
        .abs()
        .try_into()
        .expect("exponent fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(3, 2), int(6));
        for g in 0..6 {
            assert_eq!(falling_factorial(g, 0), int(1));
        }
        assert_eq!(falling_factorial(1, 2), int(0));
        assert_eq!(falling_factorial(5, 5), int(120));
    }

    #[test]
    fn falling_factorial_matches_factorial_quotient() {
        for g in 0..8u64 {
            for k in 0..=g {
                let expected = Rational::new(factorial(g), factorial(g - k));
                assert_eq!(falling_factorial(g, k), expected);
            }
        }
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-2, 2), int(3));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(binomial(7, 0), int(1));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(2)), "2/1");
        assert_eq!(parse_rational("-3/2"), Some(rat(-3, 2)));
        assert_eq!(parse_rational(" 4 "), Some(int(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
