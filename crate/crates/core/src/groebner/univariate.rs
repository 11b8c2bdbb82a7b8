//! Dense univariate polynomials over a field, stored as coefficient vectors
//! with the constant term first. Every function returns normalized vectors
//! (no trailing zeros; the zero polynomial is empty).

use num_bigint::BigUint;
use rand::Rng;

use crate::exactnum::{ArithmeticError, Field, FiniteField};

pub fn normalize<F: Field>(field: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

/// `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn is_one<F: Field>(field: &F, a: &[F::Elem]) -> bool {
    a.len() == 1 && field.is_one(&a[0])
}

pub fn constant<F: Field>(field: &F, c: F::Elem) -> Vec<F::Elem> {
    normalize(field, vec![c])
}

/// The polynomial `t`.
pub fn x<F: Field>(field: &F) -> Vec<F::Elem> {
    vec![field.zero(), field.one()]
}

pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n).map(|i| field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    normalize(field, out)
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n).map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    normalize(field, out)
}

pub fn scale<F: Field>(field: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    normalize(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    normalize(field, out)
}

pub fn div_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<(Vec<F::Elem>, Vec<F::Elem>), ArithmeticError> {
    let db = degree(b).ok_or(ArithmeticError::DivisionByZero)?;
    let inv = field.inv(&b[db])?;
    let mut r = a.to_vec();
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![field.zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = field.mul(&r[k + db], &inv);
        if field.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = field.sub_mul(&r[k + j], &c, bj);
        }
        q[k] = c;
    }
    r.truncate(db);
    Ok((normalize(field, q), normalize(field, r)))
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>, ArithmeticError> {
    Ok(div_rem(field, a, b)?.1)
}

/// Exact quotient; the caller guarantees divisibility.
pub fn div_exact<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (q, r) = div_rem(field, a, b).expect("nonzero divisor");
    debug_assert!(r.is_empty(), "inexact univariate division");
    q
}

pub fn monic<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(field, a, &field.inv(lc).expect("nonzero leading coefficient")),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(field, &a, &b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    monic(field, &a)
}

pub fn derivative<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a.iter().enumerate().skip(1).map(|(i, c)| field.mul(c, &field.from_i64(i as i64))).collect();
    normalize(field, out)
}

pub fn eval<F: Field>(field: &F, a: &[F::Elem], t: &F::Elem) -> F::Elem {
    a.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, t), c))
}

/// Evaluate at a point of another field reached through `embed`.
pub fn eval_in<F: Field, G: Field>(target: &G, a: &[F::Elem], embed: impl Fn(&F::Elem) -> G::Elem, t: &G::Elem) -> G::Elem {
    a.iter().rev().fold(target.zero(), |acc, c| target.add(&target.mul(&acc, t), &embed(c)))
}

pub fn mul_mod<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(field, &mul(field, a, b), m).expect("nonzero modulus")
}

pub fn pow_mod<F: Field>(field: &F, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], m).expect("nonzero modulus");
    let base = rem(field, a, m).expect("nonzero modulus");
    for i in (0..e.bits()).rev() {
        acc = mul_mod(field, &acc, &acc, m);
        if e.bit(i) {
            acc = mul_mod(field, &acc, &base, m);
        }
    }
    acc
}

/// Monic squarefree decomposition `a = lc · Π s_k^k` as `(s_k, k)` pairs
/// with nonconstant, pairwise coprime `s_k`, in increasing `k`.
///
/// `pth_root` is consulted only when a factor's multiplicity is divisible by
/// the characteristic, which cannot happen in characteristic zero or when
/// the degree is below the characteristic.
fn squarefree_decomposition_with<F: Field>(
    field: &F,
    a: &[F::Elem],
    pth_root: &dyn Fn(&F::Elem) -> F::Elem,
) -> Vec<(Vec<F::Elem>, usize)> {
    let f = monic(field, a);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c = gcd(field, &f, &derivative(field, &f));
    let mut w = div_exact(field, &f, &c);
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(field, &w, &c);
        let z = div_exact(field, &w, &y);
        if degree(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = div_exact(field, &c, &y);
        w = y;
    }
    if degree(&c).unwrap_or(0) > 0 {
        // c(t) = d(t^p)
        let p = biguint_to_usize(&field.characteristic());
        let root: Vec<F::Elem> = c.iter().step_by(p).map(pth_root).collect();
        for (s, k) in squarefree_decomposition_with(field, &root, pth_root) {
            out.push((s, k * p));
        }
        out.sort_by_key(|e| e.1);
    }
    out
}

fn biguint_to_usize(v: &BigUint) -> usize {
    let digits = v.to_u64_digits();
    match digits.as_slice() {
        [d] => *d as usize,
        _ => panic!("characteristic does not fit a machine word"),
    }
}

pub fn squarefree_decomposition<F: Field>(field: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    squarefree_decomposition_with(field, a, &|c| field.pth_root(c))
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    squarefree_decomposition(field, a).iter().fold(vec![field.one()], |acc, (s, _)| mul(field, &acc, s))
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree_factorization<F: FiniteField>(field: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    let q = field.order();
    let mut f = monic(field, a);
    let mut out = Vec::new();
    let t = x(field);
    let mut h = rem(field, &t, &f).expect("nonzero");
    let mut d = 1;
    while degree(&f).unwrap_or(0) >= 2 * d {
        h = pow_mod(field, &h, &q, &f);
        let g = gcd(field, &sub(field, &h, &t), &f);
        if degree(&g).unwrap_or(0) > 0 {
            f = div_exact(field, &f, &g);
            h = rem(field, &h, &f).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(df) = degree(&f).filter(|&df| df > 0) {
        out.push((f, df));
    }
    out
}

/// Split a monic squarefree product of irreducibles of degree `d` (odd
/// characteristic, Cantor–Zassenhaus).
pub fn equal_degree_factorization<F: FiniteField, R: Rng + ?Sized>(field: &F, a: &[F::Elem], d: usize, rng: &mut R) -> Vec<Vec<F::Elem>> {
    let n = degree(a).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![monic(field, a)];
    }
    let e = (field.order().pow(d as u32) - 1u32) / 2u32;
    loop {
        let r: Vec<F::Elem> = normalize(field, (0..n).map(|_| field.random_elem(rng)).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(field, &pow_mod(field, &r, &e, a), &[field.one()]);
        let g = gcd(field, &b, a);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = div_exact(field, a, &g);
            let mut out = equal_degree_factorization(field, &g, d, rng);
            out.extend(equal_degree_factorization(field, &other, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients for determinism.
pub fn factor<F: FiniteField, R: Rng + ?Sized>(field: &F, a: &[F::Elem], rng: &mut R) -> Vec<(Vec<F::Elem>, usize)>
where
    F::Elem: Ord,
{
    let mut out = Vec::new();
    for (s, k) in squarefree_decomposition(field, a) {
        for (g, d) in distinct_degree_factorization(field, &s) {
            for f in equal_degree_factorization(field, &g, d, rng) {
                out.push((f, k));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    out
}

/// Distinct roots in the field.
pub fn roots<F: FiniteField, R: Rng + ?Sized>(field: &F, a: &[F::Elem], rng: &mut R) -> Vec<F::Elem> {
    let f = monic(field, a);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let t = x(field);
    let xq = pow_mod(field, &t, &field.order(), &f);
    let g = gcd(field, &sub(field, &xq, &t), &f);
    equal_degree_factorization(field, &g, 1, rng).into_iter().map(|l| field.neg(&l[0])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ExtensionField, PrimeField, RationalField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn from(field: &PrimeField, c: &[i64]) -> Vec<u64> {
        normalize(field, c.iter().map(|&v| field.from_i64(v)).collect())
    }

    #[test]
    fn division_identity() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a: Vec<u64> = normalize(&f, (0..rng.gen_range(0..9)).map(|_| rng.gen_range(0..101)).collect());
            let b: Vec<u64> = normalize(&f, (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..101)).collect());
            if b.is_empty() {
                continue;
            }
            let (q, r) = div_rem(&f, &a, &b).unwrap();
            assert!(r.len() < b.len());
            assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        }
        assert!(div_rem(&f, &[1], &[]).is_err());
    }

    #[test]
    fn gcd_of_products() {
        let f = fp(101);
        let a = from(&f, &[-1, 0, 1]); // (t-1)(t+1)
        let b = from(&f, &[-2, 1]); // t-2
        let c = from(&f, &[1, 1]); // t+1
        assert_eq!(gcd(&f, &mul(&f, &a, &b), &mul(&f, &b, &c)), mul(&f, &b, &c));
        assert!(gcd(&f, &[], &[]).is_empty());
    }

    #[test]
    fn yun_over_rationals() {
        let q = RationalField;
        let c = |v: i64| q.from_i64(v);
        // (t-1)^3 (t+2)
        let lin1 = vec![c(-1), c(1)];
        let lin2 = vec![c(2), c(1)];
        let f = mul(&q, &mul(&q, &mul(&q, &lin1, &lin1), &lin1), &lin2);
        let d = squarefree_decomposition(&q, &f);
        assert_eq!(d, vec![(lin2.clone(), 1), (lin1.clone(), 3)]);
        assert_eq!(squarefree_part(&q, &f), mul(&q, &lin1, &lin2));
    }

    #[test]
    fn decomposition_in_small_characteristic() {
        // over F_5: t^5 - 1 = (t - 1)^5, t^10 + ... exercise p-th roots
        let f = fp(5);
        let a = from(&f, &[-1, 0, 0, 0, 0, 1]);
        assert_eq!(squarefree_decomposition(&f, &a), vec![(from(&f, &[-1, 1]), 5)]);
        let b = mul(&f, &a, &from(&f, &[0, 1]));
        assert_eq!(squarefree_decomposition(&f, &b), vec![(from(&f, &[0, 1]), 1), (from(&f, &[-1, 1]), 5)]);
    }

    #[test]
    fn factorization_round_trip() {
        let f = fp(1_000_003);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let deg = rng.gen_range(1..14);
            let mut a: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..1_000_003)).collect();
            a.push(1);
            let sq = mul(&f, &a, &from(&f, &[3, 1]));
            let fac = factor(&f, &sq, &mut rng);
            let prod = fac.iter().fold(vec![1u64], |acc, (g, k)| (0..*k).fold(acc, |acc, _| mul(&f, &acc, g)));
            assert_eq!(prod, monic(&f, &sq));
            for (g, _) in &fac {
                // an irreducible of degree d divides t^(q^d) - t and no smaller
                let d = degree(g).unwrap();
                let t = x(&f);
                let q = f.order();
                let mut h = t.clone();
                for i in 1..=d {
                    h = pow_mod(&f, &h, &q, g);
                    if i < d {
                        assert!(degree(&gcd(&f, &sub(&f, &h, &t), g)).unwrap() == 0);
                    }
                }
                assert_eq!(h, rem(&f, &t, g).unwrap());
            }
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = fp(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut p = vec![1u64];
        for r in [3i64, 17, -5, 99] {
            p = mul(&f, &p, &from(&f, &[-r, 1]));
        }
        p = mul(&f, &p, &from(&f, &[1, 0, 1])); // t^2 + 1, irreducible mod 10007
        let mut rs = roots(&f, &p, &mut rng);
        rs.sort();
        let mut want: Vec<u64> = [3i64, 17, -5, 99].iter().map(|&v| f.from_i64(v)).collect();
        want.sort();
        assert_eq!(rs, want);
    }

    #[test]
    fn roots_over_extension() {
        // t^2 + 1 splits over F_{7^2}
        let base = fp(7);
        let k = ExtensionField::new(base, vec![1, 0, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let poly = vec![k.one(), k.zero(), k.one()];
        let rs = roots(&k, &poly, &mut rng);
        assert_eq!(rs.len(), 2);
        for r in rs {
            assert!(k.is_zero(&eval(&k, &poly, &r)));
        }
    }
}
