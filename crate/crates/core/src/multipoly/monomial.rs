use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported number of ring variables.
pub const MAX_VARS: usize = 9;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = u16::MAX as u32;

/// A power product `x0^e0 * ... * x8^e8` with its total degree cached.
///
/// Unused slots beyond the ring arity are always zero, so comparisons and
/// divisibility tests never need to know the arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Self { exps: [0; MAX_VARS], deg: 0 }
    }

    /// Returns `None` when there are too many entries or an exponent does
    /// not fit the 16-bit bound.
    pub fn from_exponents(exps: &[u32]) -> Option<Self> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return None;
            }
            m.exps[i] = e as u16;
            m.deg += e;
        }
        Some(m)
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        assert!(e <= MAX_EXPONENT, "exponent {e} exceeds the 16-bit bound");
        let mut m = Self::one();
        m.exps[i] = e as u16;
        m.deg = e;
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product, `None` on exponent overflow.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        m.deg = self.deg + other.deg;
        Some(m)
    }

    /// Product; exponent overflow is a hard error.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .unwrap_or_else(|| panic!("monomial exponent overflow: {self:?} * {other:?}"))
    }

    /// `true` iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = other.exps[i] - self.exps[i];
        }
        m.deg = other.deg - self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Same monomial with variable `i` removed (exponent set to zero).
    pub fn without_var(&self, i: usize) -> Self {
        let mut m = *self;
        m.deg -= m.exps[i] as u32;
        m.exps[i] = 0;
        m
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u32) {
        assert!(e <= MAX_EXPONENT, "exponent {e} exceeds the 16-bit bound");
        self.deg = self.deg - self.exps[i] as u32 + e;
        self.exps[i] = e as u16;
    }
}

/// Term orders used by the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the default for every Gröbner run.
    #[default]
    DegRevLex,
    Lex,
    /// Block order eliminating the first `k` variables: degrevlex on the
    /// first block, ties broken by degrevlex on the rest.
    Elimination(usize),
}

#[inline]
fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    // Among equal degrees, the smaller exponent in the last differing
    // variable wins.
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn degrevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex_tail(&a.exps, &b.exps)),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = k.min(MAX_VARS);
                degrevlex_slice(&a.exps[..k], &b.exps[..k])
                    .then_with(|| degrevlex_slice(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    /// Whether the order compares total degree first (needed by the
    /// Hilbert-function based routines).
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}
