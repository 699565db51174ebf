//! Arbitrary-precision rational scalars and small combinatorial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational;

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Rational from an integer pair; panics if `den` is zero (caller checks).
pub fn ratio(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_zero(q: &BigRational) -> bool {
    q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }

    #[test]
    fn ratio_reduces() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-2, 4), ratio(1, -2));
    }
}
