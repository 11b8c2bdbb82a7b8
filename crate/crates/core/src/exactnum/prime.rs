use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ArithmeticError, Field, FiniteField};

const MAX_MODULUS_BITS: u32 = 62;

/// The prime field `F_p` for an odd prime `p < 2^62`.
///
/// Elements are plain `u64` residues in `[0, p)`; use [`PrimeField::value`]
/// and [`PrimeField::from_u64`] to move between residues and elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithmeticError> {
        if p == 2 || p >> MAX_MODULUS_BITS != 0 || !is_prime_u64(p) {
            return Err(ArithmeticError::InvalidModulus(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn value(&self, a: &u64) -> u64 {
        *a
    }

    /// Balanced representative in `(-p/2, p/2]`, handy for display.
    pub fn balanced(&self, a: &u64) -> i128 {
        if *a > self.p / 2 {
            *a as i128 - self.p as i128
        } else {
            *a as i128
        }
    }

    #[inline]
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, ArithmeticError> {
        if *a == 0 {
            return Err(ArithmeticError::DivisionByZero);
        }
        // Extended Euclid on signed 128-bit values.
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_integer(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.random_elem(rng)
    }

    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }

    fn format_elem(&self, a: &u64) -> String {
        self.balanced(a).to_string()
    }

    #[inline]
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let prod = self.mulmod(*c, *b);
        self.sub(a, &prod)
    }
}

impl FiniteField for PrimeField {
    fn prime(&self) -> u64 {
        self.p
    }
    fn extension_degree(&self) -> usize {
        1
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// A prime-field element that carries its modulus, for callers that want
/// mixed-field mistakes reported instead of silently computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    pub fn new(field: &PrimeField, v: i64) -> Self {
        Self { residue: field.from_i64(v), modulus: field.p }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    fn same_field(&self, other: &Self) -> Result<PrimeField, ArithmeticError> {
        if self.modulus != other.modulus {
            return Err(ArithmeticError::MixedModulus(self.modulus, other.modulus));
        }
        Ok(self.field())
    }

    fn wrap(&self, residue: u64) -> Self {
        Self { residue, modulus: self.modulus }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let f = self.same_field(other)?;
        Ok(self.wrap(f.add(&self.residue, &other.residue)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let f = self.same_field(other)?;
        Ok(self.wrap(f.sub(&self.residue, &other.residue)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let f = self.same_field(other)?;
        Ok(self.wrap(f.mul(&self.residue, &other.residue)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let f = self.same_field(other)?;
        Ok(self.wrap(f.div(&self.residue, &other.residue)?))
    }

    pub fn inv(&self) -> Result<Self, ArithmeticError> {
        Ok(self.wrap(self.field().inv(&self.residue)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field().neg(&self.residue))
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases are a proof of
/// primality for every `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd prime in `[2^(bits-1), 2^bits)`, determined by `seed`.
pub fn random_prime(bits: u32, seed: u64) -> Result<u64, ArithmeticError> {
    if !(20..=MAX_MODULUS_BITS).contains(&bits) {
        return Err(ArithmeticError::InvalidPrimeSize(bits));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = 1u64 << (bits - 1);
    loop {
        let candidate = rng.gen_range(lo..lo << 1) | 1;
        if is_prime_u64(candidate) {
            return Ok(candidate);
        }
    }
}
