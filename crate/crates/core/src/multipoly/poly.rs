use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, MonomialOrder, PolyError, PolyRing};
use crate::exactnum::Field;

pub type Term<E> = (Monomial, E);

/// A polynomial in a [`PolyRing`].
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut coeff = field.format_elem(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || coeff != "1" {
                factors.push(coeff);
            }
            for v in m.support() {
                let e = m.exponent(v);
                let name = &self.ring.names()[v];
                factors.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `a + b` on descending term lists.
pub(crate) fn merge_add<F: Field>(field: &F, order: MonomialOrder, a: &[Term<F::Elem>], b: &[Term<F::Elem>]) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = field.add(&a[i].1, &b[j].1);
                if !field.is_zero(&c) {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `f - c * m * g` on descending term lists, writing into `out`.
pub(crate) fn sub_mul_into<F: Field>(
    field: &F,
    order: MonomialOrder,
    f: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    g: &[Term<F::Elem>],
    out: &mut Vec<Term<F::Elem>>,
) {
    out.clear();
    out.reserve(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut shifted = g.first().map(|t| t.0.mul(m));
    while i < f.len() {
        let Some(gm) = shifted else { break };
        match order.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, field.neg(&field.mul(c, &g[j].1))));
                j += 1;
                shifted = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = field.sub_mul(&f[i].1, c, &g[j].1);
                if !field.is_zero(&v) {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    for t in &g[j..] {
        out.push((t.0.mul(m), field.neg(&field.mul(c, &t.1))));
    }
}

/// Sort by the order (descending), combine equal monomials, drop zeros.
pub(crate) fn normalize_terms<F: Field>(field: &F, order: MonomialOrder, mut terms: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
            _ => {
                if let Some(last) = out.last() {
                    if field.is_zero(&last.1) {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if out.last().is_some_and(|t| field.is_zero(&t.1)) {
        out.pop();
    }
    out
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one())
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, c: F::Elem, m: Monomial) -> Self {
        let terms = if ring.field().is_zero(&c) { vec![] } else { vec![(m, c)] };
        Self { ring: ring.clone(), terms }
    }

    /// Build from arbitrary terms (any order, duplicates and zeros allowed).
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F::Elem>>) -> Self {
        let terms = normalize_terms(ring.field(), ring.order(), terms);
        Self { ring: ring.clone(), terms }
    }

    /// Build from terms already strictly descending with nonzero coefficients.
    pub(crate) fn from_terms_unchecked(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !ring.field().is_zero(&t.1)));
        Self { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        let order = self.ring.order();
        match self.terms.binary_search_by(|t| order.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field().zero(),
        }
    }

    /// Maximum total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Degree in one variable, `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.0.exponent(var)).max()
    }

    /// `Some(d)` iff every term has total degree `d`; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let terms = merge_add(self.field(), self.ring.order(), &self.terms, &other.terms);
        Ok(Self { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Vec::new();
        sub_mul_into(self.field(), self.ring.order(), &self.terms, &self.field().one(), &Monomial::one(), &other.terms, &mut out);
        Ok(Self { ring: self.ring.clone(), terms: out })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let field = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), field.mul(ca, cb)));
            }
        }
        Ok(Self::from_terms(&self.ring, prods))
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(mm, cc)| (mm.mul(m), field.mul(cc, c))).collect();
        Self { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Self { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        let nvars = self.ring.nvars();
        if var >= nvars {
            return Err(PolyError::VariableOutOfRange { index: var, nvars });
        }
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                let mut mm = *m;
                mm.set_exponent(var, e - 1);
                (mm, field.mul(c, &field.from_i64(e as i64)))
            })
            .collect();
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.ring.nvars()).map(|i| self.partial_derivative(i).expect("index in range")).collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        let field = self.field().clone();
        self.evaluate_in(&field, |c| c.clone(), point)
    }

    /// Evaluate in another field through a coefficient embedding, e.g. at a
    /// point with coordinates in an extension of the coefficient field.
    pub fn evaluate_in<G: Field>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem, point: &[G::Elem]) -> Result<G::Elem, PolyError> {
        let nvars = self.ring.nvars();
        if point.len() != nvars {
            return Err(PolyError::ArityMismatch { expected: nvars, got: point.len() });
        }
        let mut powers: Vec<Vec<G::Elem>> = vec![vec![target.one()]; nvars];
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut v = embed(c);
            for i in m.support() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = target.mul(powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                v = target.mul(&v, &powers[i][e]);
            }
            acc = target.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Ring homomorphism `x_i -> images[i]` into the ring of the images.
    pub fn substitute(&self, target: &Arc<PolyRing<F>>, images: &[Poly<F>]) -> Result<Self, PolyError> {
        let nvars = self.ring.nvars();
        if images.len() != nvars {
            return Err(PolyError::ArityMismatch { expected: nvars, got: images.len() });
        }
        if images.iter().any(|p| !p.ring.same_as(target)) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Poly<F>>> = vec![vec![target.one()]; nvars];
        let mut acc = Self::zero(target);
        let mut chunk: Vec<Term<F::Elem>> = Vec::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mut v = Poly::constant(target, c.clone());
            for i in m.support() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                v = &v * &powers[i][e];
            }
            chunk.extend(v.terms);
            if chunk.len() > 4096 || idx + 1 == self.terms.len() {
                let part = Self::from_terms(target, std::mem::take(&mut chunk));
                acc = &acc + &part;
            }
        }
        Ok(acc)
    }

    /// Reinterpret the coefficients in another ring with the same number of
    /// variables (reduction mod p, embedding into an extension, ...).
    pub fn map_coeffs<G: Field>(&self, target: &Arc<PolyRing<G>>, f: impl Fn(&F::Elem) -> G::Elem) -> Result<Poly<G>, PolyError> {
        if target.nvars() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch { expected: self.ring.nvars(), got: target.nvars() });
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Same polynomial viewed in a ring with another order (same variables).
    pub fn reorder(&self, target: &Arc<PolyRing<F>>) -> Result<Self, PolyError> {
        self.map_coeffs(target, |c| c.clone())
    }

    /// Exact quotient `self / d`; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self, PolyError> {
        self.check_ring(d)?;
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let field = self.field();
        let lc_inv = field.inv(lc).expect("nonzero leading coefficient");
        let order = self.ring.order();
        let mut rem = self.terms.clone();
        let mut quot = Vec::new();
        let mut buf = Vec::new();
        while let Some((m, c)) = rem.first() {
            let Some(qm) = lm.quotient_of(m) else {
                return Err(PolyError::InexactDivision);
            };
            let qc = field.mul(c, &lc_inv);
            sub_mul_into(field, order, &rem, &qc, &qm, &d.terms, &mut buf);
            std::mem::swap(&mut rem, &mut buf);
            quot.push((qm, qc));
        }
        Ok(Self { ring: self.ring.clone(), terms: quot })
    }

    /// The same polynomial in a ring with at least as many variables
    /// (variable `i` maps to variable `i`).
    pub fn embed(&self, target: &Arc<PolyRing<F>>) -> Result<Self, PolyError> {
        if target.nvars() < self.ring.nvars() {
            return Err(PolyError::ArityMismatch { expected: self.ring.nvars(), got: target.nvars() });
        }
        Ok(Self::from_terms(target, self.terms.clone()))
    }

    /// Set the last variable to one and view the result in `target`, which
    /// must have exactly one variable fewer.
    pub fn dehomogenize_last(&self, target: &Arc<PolyRing<F>>) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if n == 0 || target.nvars() + 1 != n {
            return Err(PolyError::ArityMismatch { expected: n.saturating_sub(1), got: target.nvars() });
        }
        let terms = self.terms.iter().map(|(m, c)| (m.without_var(n - 1), c.clone())).collect();
        Ok(Self::from_terms(target, terms))
    }

    /// Set every variable listed to one (dehomogenization) while keeping the
    /// ring; the result no longer involves those variables.
    pub fn set_var_to_one(&self, var: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.without_var(var), c.clone())).collect();
        Self::from_terms(&self.ring, terms)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a Poly<F>> for &'a Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &'a Poly<F>) -> Poly<F> {
                self.$checked(rhs).expect("operands must share a ring")
            }
        }
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, RationalField};
    use crate::multipoly::MonomialOrder;
    use proptest::prelude::*;

    fn qring(names: &[&str]) -> Arc<PolyRing<RationalField>> {
        PolyRing::new(RationalField, names, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        assert_eq!(&(&x + &y) * &(&x - &y), r.parse("x^2 - y^2").unwrap());
        assert_eq!(&x * &r.zero(), r.zero());
        assert_eq!(&x + &r.zero(), x);
    }

    #[test]
    fn derivatives() {
        let r = qring(&["x", "y"]);
        let f = r.parse("x^2*y").unwrap();
        assert_eq!(f.partial_derivative(0).unwrap(), r.parse("2*x*y").unwrap());
        assert!(r.from_i64(7).partial_derivative(0).unwrap().is_zero());
        assert!(f.partial_derivative(2).is_err());
    }

    #[test]
    fn evaluation() {
        let r = qring(&["x6", "x7"]);
        let q = RationalField;
        assert_eq!(r.parse("x6^2 + x7^2").unwrap().evaluate(&[q.zero(), q.zero()]).unwrap(), q.zero());
        let quartic = r.parse("19*x6^4 + 102*x6^3*x7 + 189*x6^2*x7^2 + 137*x6*x7^3 + 27*x7^4").unwrap();
        assert_eq!(quartic.evaluate(&[q.zero(), q.one()]).unwrap(), q.from_i64(27));
    }

    #[test]
    fn substitution() {
        let r = qring(&["x", "y"]);
        let t = qring(&["t"]);
        let f = r.parse("x + y").unwrap();
        let img = f.substitute(&t, &[t.var(0), t.var(0)]).unwrap();
        assert_eq!(img, t.parse("2*t").unwrap());
        assert_eq!(f.substitute(&t, &[t.var(0)]), Err(PolyError::ArityMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn homogeneity() {
        let r = qring(&["x", "y"]);
        assert_eq!(r.parse("x^2 + x*y").unwrap().homogeneous_degree(), Some(2));
        assert_eq!(r.parse("x^2 + x").unwrap().homogeneous_degree(), None);
    }

    #[test]
    fn exact_division() {
        let r = qring(&["x", "y"]);
        let f = r.parse("x^3 - y^3").unwrap();
        let d = r.parse("x - y").unwrap();
        assert_eq!(f.div_exact(&d).unwrap(), r.parse("x^2 + x*y + y^2").unwrap());
        assert_eq!(f.div_exact(&r.parse("x + 2").unwrap()), Err(PolyError::InexactDivision));
        assert_eq!(f.div_exact(&r.zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = qring(&["x", "y"]);
        let b = qring(&["u", "v"]);
        assert_eq!(a.var(0).checked_add(&b.var(0)), Err(PolyError::RingMismatch));
    }

    #[test]
    fn display_round_trip() {
        let r = qring(&["x0", "x1", "x2"]);
        let f = r.parse("3*x0^2*x1 - x2 + 5 - 1/2*x1^3").unwrap();
        assert_eq!(f.to_string(), "3*x0^2*x1 - 1/2*x1^3 - x2 + 5");
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    fn arb_poly(ring: Arc<PolyRing<PrimeField>>) -> impl Strategy<Value = Poly<PrimeField>> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), 0u64..1_000_003), 0..12).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), c)).collect();
            Poly::from_terms(&ring, terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn canonical_form_and_homomorphism(
            (f, g, pt) in {
                let ring = PolyRing::indexed(PrimeField::new(1_000_003).unwrap(), "x", 0, 3, MonomialOrder::DegRevLex).unwrap();
                (arb_poly(ring.clone()), arb_poly(ring), prop::collection::vec(0u64..1_000_003, 3))
            }
        ) {
            prop_assert_eq!(&(&f + &g) - &g, f.clone());
            let field = f.field().clone();
            let fg = (&f * &g).evaluate(&pt).unwrap();
            prop_assert_eq!(fg, field.mul(&f.evaluate(&pt).unwrap(), &g.evaluate(&pt).unwrap()));
        }
    }
}
