use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ArithmeticError, Field};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ArithmeticError> {
        if a.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(v.into())
    }
    fn from_integer(&self, v: &BigInt) -> Rational {
        Rational::from_integer(v.clone())
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn format_elem(&self, a: &Rational) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer as _;
    use proptest::prelude::*;

    #[test]
    fn quartic_coefficient_sum() {
        let q = RationalField;
        assert_eq!(q.add(&q.from_i64(19), &q.from_i64(27)), q.from_i64(46));
        assert_eq!(q.inv(&q.one()).unwrap(), q.one());
        assert_eq!(q.inv(&q.zero()), Err(ArithmeticError::DivisionByZero));
    }

    proptest! {
        #[test]
        fn lowest_terms_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = Rational::new(n.into(), d.into());
            prop_assert!(r.denom() > &BigInt::zero());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            // normalize(n/d) * d == n as integers
            let back = r * Rational::from_integer(d.into());
            prop_assert!(back.is_integer());
            prop_assert_eq!(back.to_integer(), BigInt::from(n));
        }
    }
}
