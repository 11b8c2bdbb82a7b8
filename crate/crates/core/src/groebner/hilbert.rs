//! Hilbert series of monomial ideals.

use crate::multipoly::Monomial;

/// Hilbert series data of `S/I` for a monomial ideal `I` in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// `N(t)` with `HS(t) = N(t) / (1 - t)^n`, constant term first.
    pub numerator: Vec<i64>,
    pub nvars: usize,
}

impl HilbertSeries {
    /// Krull dimension of the quotient; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        if self.numerator.iter().all(|&c| c == 0) {
            return -1;
        }
        self.nvars as i64 - self.reduced().1 as i64
    }

    /// Multiplicity: the reduced numerator at `t = 1` (the projective degree
    /// for homogeneous ideals, the length for zero-dimensional ones).
    pub fn degree(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Numerator after cancelling every factor `(1 - t)`, and how many were
    /// cancelled.
    fn reduced(&self) -> (Vec<i64>, usize) {
        let mut num = trim(self.numerator.clone());
        let mut k = 0;
        while !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t)
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0;
            for &c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = trim(q);
            k += 1;
        }
        (num, k)
    }

    /// Value of the Hilbert function at degree `d`.
    pub fn hilbert_function(&self, d: usize) -> i64 {
        // coefficient of t^d in N(t) · Σ C(n-1+j, n-1) t^j
        let n = self.nvars;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| *i <= d)
            .map(|(i, &c)| c * binomial(n as i64 - 1 + (d - i) as i64, n as i64 - 1))
            .sum()
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        return i64::from(n == -1 && k == -1);
    }
    if n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
}

/// Keep only generators not divisible by another one.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), *m.exponents()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Hilbert series of `S/⟨gens⟩` by pivoting on variable powers.
pub fn hilbert_series(gens: &[Monomial], nvars: usize) -> HilbertSeries {
    HilbertSeries { numerator: trim(numerator(minimalize(gens.to_vec()), nvars)), nvars }
}

fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| m.support().count() > 1).collect();
    if mixed.is_empty() {
        // pure powers of distinct variables form a regular sequence
        let mut acc = vec![1i64];
        for m in &gens {
            let d = m.degree() as usize;
            let prev = acc.clone();
            sub_shifted(&mut acc, &prev, d, -1);
        }
        return acc;
    }
    // pivot on the variable occurring in most mixed generators
    let var = (0..nvars).max_by_key(|&v| (mixed.iter().filter(|m| m.exponent(v) > 0).count(), std::cmp::Reverse(v))).expect("nvars > 0");
    let mut exps: Vec<u32> = mixed.iter().map(|m| m.exponent(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var_pow(var, e);
    // N(I) = N(I + p) + t^deg(p) · N(I : p)
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut exps: Vec<u32> = (0..nvars).map(|i| m.exponent(i)).collect();
            exps[var] = exps[var].saturating_sub(e);
            Monomial::from_exponents(&exps).expect("exponents only shrink")
        })
        .collect();
    let mut acc = numerator(minimalize(with_pivot), nvars);
    let rhs = numerator(minimalize(colon), nvars);
    sub_shifted(&mut acc, &rhs, e as usize, 1);
    acc
}

/// Krull dimension of `S/⟨gens⟩` as the size of a largest set of variables
/// containing the support of no generator; `-1` for the unit ideal.
pub fn dimension_by_independent_sets(gens: &[Monomial], nvars: usize) -> i64 {
    if gens.iter().any(Monomial::is_one) {
        return -1;
    }
    let supports: Vec<u32> = gens.iter().map(|m| m.support().fold(0u32, |acc, v| acc | (1 << v))).collect();
    (0u32..(1 << nvars))
        .filter(|set| supports.iter().all(|s| s & !set != 0))
        .map(|set| set.count_ones() as i64)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn polynomial_ring_and_unit_ideal() {
        let hs = hilbert_series(&[], 3);
        assert_eq!(hs.krull_dimension(), 3);
        assert_eq!(hs.degree(), 1);
        let unit = hilbert_series(&[Monomial::one()], 3);
        assert_eq!(unit.krull_dimension(), -1);
    }

    #[test]
    fn points_and_curves() {
        // <x^2, y> in k[x, y]: length 2
        let hs = hilbert_series(&[mono(&[2, 0]), mono(&[0, 1])], 2);
        assert_eq!((hs.krull_dimension(), hs.degree()), (0, 2));
        // <x*y> in k[x, y, z]: union of two planes through the z-axis
        let hs = hilbert_series(&[mono(&[1, 1, 0])], 3);
        assert_eq!((hs.krull_dimension(), hs.degree()), (2, 2));
        // <x^3, x*y^2> in k[x, y]
        let hs = hilbert_series(&[mono(&[3, 0]), mono(&[1, 2])], 2);
        assert_eq!((hs.krull_dimension(), hs.degree()), (1, 1));
    }

    #[test]
    fn hilbert_function_counts_monomials() {
        let hs = hilbert_series(&[], 3);
        assert_eq!(hs.hilbert_function(2), 6);
        assert_eq!(hs.hilbert_function(0), 1);
    }

    fn brute_count(gens: &[Monomial], nvars: usize, d: u32) -> i64 {
        let mut count = 0;
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, gens: &[Monomial], count: &mut i64) {
            if i + 1 == exps.len() {
                exps[i] = left;
                let m = Monomial::from_exponents(exps).unwrap();
                if !gens.iter().any(|g| g.divides(&m)) {
                    *count += 1;
                }
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, gens, count);
            }
        }
        rec(0, d, &mut exps, gens, &mut count);
        count
    }

    proptest! {
        #[test]
        fn matches_monomial_count(gens in prop::collection::vec(prop::collection::vec(0u32..4, 3), 0..7)) {
            let gens: Vec<Monomial> = gens.iter().map(|e| mono(e)).collect();
            let hs = hilbert_series(&gens, 3);
            for d in 0..9 {
                prop_assert_eq!(hs.hilbert_function(d), brute_count(&gens, 3, d as u32));
            }
            prop_assert_eq!(hs.krull_dimension(), dimension_by_independent_sets(&gens, 3));
        }
    }
}
