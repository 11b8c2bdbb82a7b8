use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::Rng;

use super::{ArithmeticError, Field, FiniteField, PrimeField};

/// `F_p[t]/(f)` for a monic irreducible `f` of degree `d`.
///
/// Elements are coefficient vectors of length exactly `d`, lowest degree
/// first. Irreducibility of `f` is the caller's responsibility beyond the
/// cheap checks done in [`ExtensionField::new`]; the factorization routines
/// in `groebner::univariate` only hand out irreducible factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.base.modulus(), self.degree())
    }
}

impl ExtensionField {
    /// `modulus` lists coefficients lowest degree first and must be monic.
    pub fn new(base: PrimeField, modulus: Vec<u64>) -> Result<Self, ArithmeticError> {
        let modulus: Vec<u64> = modulus.into_iter().map(|c| base.from_u64(c)).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus[0] == 0 && modulus.len() > 2 {
            return Err(ArithmeticError::InvalidExtension);
        }
        Ok(Self { base, modulus })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    /// Embed a base-field element.
    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = a;
        v
    }

    /// The class of `t`.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        if self.degree() == 1 {
            v[0] = self.base.neg(&self.modulus[0]);
        } else {
            v[1] = 1;
        }
        v
    }

    /// Reduce an arbitrary coefficient vector modulo `f`.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        let d = self.degree();
        while v.len() > d {
            let c = v.pop().unwrap();
            if c != 0 {
                let shift = v.len() - d;
                for (i, m) in self.modulus[..d].iter().enumerate() {
                    v[shift + i] = f.sub_mul(&v[shift + i], &c, m);
                }
            }
        }
        v.resize(d, 0);
        v
    }

    /// If the element lies in the prime field, return it.
    pub fn as_base(&self, a: &[u64]) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>, ArithmeticError> {
        if self.is_zero(a) {
            return Err(ArithmeticError::DivisionByZero);
        }
        let f = &self.base;
        // Extended Euclid in F_p[t]: track s with s * a == r (mod modulus).
        let mut r0 = self.modulus.clone();
        let mut r1 = a.clone();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // (q, rem) = divmod(r0, r1)
            let mut rem = r0.clone();
            let lead_inv = f.inv(r1.last().unwrap())?;
            let mut q = vec![0u64; rem.len().saturating_sub(r1.len()) + 1];
            while rem.len() >= r1.len() && !rem.is_empty() {
                let c = f.mul(rem.last().unwrap(), &lead_inv);
                let shift = rem.len() - r1.len();
                q[shift] = c;
                for (i, m) in r1.iter().enumerate() {
                    rem[shift + i] = f.sub_mul(&rem[shift + i], &c, m);
                }
                trim(&mut rem);
            }
            // s_new = s0 - q * s1
            let mut qs = vec![0u64; q.len() + s1.len()];
            for (i, x) in q.iter().enumerate() {
                for (j, y) in s1.iter().enumerate() {
                    qs[i + j] = f.add(&qs[i + j], &f.mul(x, y));
                }
            }
            let mut s_new = vec![0u64; qs.len().max(s0.len())];
            for (i, v) in s_new.iter_mut().enumerate() {
                let a = s0.get(i).copied().unwrap_or(0);
                let b = qs.get(i).copied().unwrap_or(0);
                *v = f.sub(&a, &b);
            }
            trim(&mut s_new);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s_new);
        }
        // r0 is a nonzero constant when the modulus is irreducible.
        if r0.len() != 1 {
            return Err(ArithmeticError::InvalidExtension);
        }
        let c = f.inv(&r0[0])?;
        let s: Vec<u64> = s0.iter().map(|x| f.mul(x, &c)).collect();
        Ok(self.reduce(s))
    }

    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.embed(self.base.from_i64(v))
    }
    fn from_integer(&self, v: &BigInt) -> Vec<u64> {
        self.embed(self.base.from_integer(v))
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.base.modulus())
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        self.random_elem(rng)
    }

    fn pth_root(&self, a: &Vec<u64>) -> Vec<u64> {
        // a^(q/p), since a^q = a
        let e = BigUint::from(self.base.modulus()).pow(self.degree() as u32 - 1);
        self.pow_big(a, &e)
    }

    fn format_elem(&self, a: &Vec<u64>) -> String {
        if let Some(c) = self.as_base(a) {
            return self.base.format_elem(&c);
        }
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => self.base.format_elem(c),
                1 => format!("{}*t", self.base.format_elem(c)),
                _ => format!("{}*t^{}", self.base.format_elem(c), i),
            })
            .collect();
        format!("({})", terms.join(" + "))
    }
}

impl FiniteField for ExtensionField {
    fn prime(&self) -> u64 {
        self.base.modulus()
    }
    fn extension_degree(&self) -> usize {
        self.degree()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree()).map(|_| self.base.random_elem(rng)).collect()
    }
}
