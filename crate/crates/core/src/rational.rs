//! The coefficient field: exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `1 / n!` as an exact rational.
pub fn inverse_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one() || q.is_zero()
}
