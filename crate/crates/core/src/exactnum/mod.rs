//! Exact coefficient arithmetic.
//!
//! Every algebraic routine in this crate is generic over a [`Field`]: a
//! read-only context object that knows how to combine its elements. The
//! context carries whatever shared data the field needs (the modulus of a
//! prime field, the defining polynomial of an extension), so elements stay
//! small plain values.
//!
//! Three families are provided:
//!
//! * [`RationalField`]: exact rationals over arbitrary-precision integers,
//! * [`PrimeField`]: `F_p` for an odd word-sized prime `p < 2^62`,
//! * [`ExtensionField`]: `F_p[t]/(f)` for an irreducible monic `f`.

mod ext;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use rand::Rng;
use thiserror::Error;

pub use ext::ExtensionField;
pub use prime::{is_prime_u64, random_prime, PrimeField, PrimeFieldElement};
pub use rational::{Integer, Rational, RationalField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different prime fields (p = {0} and p = {1})")]
    MixedModulus(u64, u64),
    #[error("invalid modulus {0}: must be an odd prime below 2^62")]
    InvalidModulus(u64),
    #[error("prime size of {0} bits is outside the supported range 20..=62")]
    InvalidPrimeSize(u32),
    #[error("extension modulus must be monic, irreducible and of degree >= 1")]
    InvalidExtension,
}

/// A field together with the context needed to compute in it.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithmeticError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithmeticError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_integer(&self, v: &BigInt) -> Self::Elem;

    /// Zero for characteristic-zero fields.
    fn characteristic(&self) -> BigUint;

    fn format_elem(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// A random element for generic-position choices. The default draws a
    /// small integer; finite fields override it with a uniform draw.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.from_i64(rng.gen_range(-64..=64))
    }

    /// The unique `b` with `b^p = a` in characteristic `p`. Only meaningful
    /// for perfect fields of positive characteristic.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let _ = a;
        panic!("p-th roots are undefined in characteristic zero")
    }

    /// `a - c * b`, the update at the heart of every elimination loop.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

/// A finite field `F_q`, `q = p^d`.
pub trait FiniteField: Field {
    fn prime(&self) -> u64;
    fn extension_degree(&self) -> usize;
    fn order(&self) -> BigUint {
        BigUint::from(self.prime()).pow(self.extension_degree() as u32)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Raise to a power given as a big integer (square and multiply).
    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_axioms<F: Field>(field: &F, sample: impl Fn(&mut ChaCha8Rng) -> F::Elem) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
            assert_eq!(field.add(&a, &b), field.add(&b, &a));
            assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
            assert_eq!(
                field.add(&field.add(&a, &b), &c),
                field.add(&a, &field.add(&b, &c))
            );
            assert_eq!(
                field.mul(&field.mul(&a, &b), &c),
                field.mul(&a, &field.mul(&b, &c))
            );
            assert_eq!(
                field.mul(&a, &field.add(&b, &c)),
                field.add(&field.mul(&a, &b), &field.mul(&a, &c))
            );
            assert_eq!(field.sub(&field.add(&a, &b), &b), a);
            if !field.is_zero(&b) {
                assert_eq!(field.mul(&field.div(&a, &b).unwrap(), &b), a);
            }
        }
    }

    #[test]
    fn prime_field_axioms() {
        let p = random_prime(62, 3).unwrap();
        let f = PrimeField::new(p).unwrap();
        check_axioms(&f, |rng| f.random_elem(rng));
    }

    #[test]
    fn rational_field_axioms() {
        let q = RationalField;
        check_axioms(&q, |rng| {
            let n: i64 = rng.gen_range(-1000..1000);
            let d: i64 = rng.gen_range(1..1000);
            Rational::new(n.into(), d.into())
        });
    }

    #[test]
    fn extension_field_axioms() {
        let base = PrimeField::new(1_000_003).unwrap();
        // t^3 - 2 is irreducible mod 1_000_003 (2 is not a cube there).
        let ext = ExtensionField::new(base, vec![1_000_001, 0, 0, 1]).unwrap();
        check_axioms(&ext, |rng| ext.random_elem(rng));
    }

    #[test]
    fn pow_big_matches_pow() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u64 {
            assert_eq!(f.pow_big(&a, &BigUint::from(100u32)), 1);
            assert_eq!(f.pow_big(&a, &BigUint::from(37u32)), f.pow(&a, 37));
        }
    }
}
