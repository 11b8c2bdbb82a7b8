use std::sync::Arc;

use super::hilbert::{dimension_by_independent_sets, hilbert_series, HilbertSeries};
use super::{Deadline, GroebnerError};
use crate::exactnum::Field;
use crate::multipoly::{Monomial, MonomialOrder, Poly, PolyError, PolyRing, Term, MAX_VARS};

/// An ideal given by generators in a shared ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Poly<F>>) -> Result<Self, GroebnerError> {
        for g in &gens {
            if !Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring {
                return Err(PolyError::RingMismatch.into());
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { ring: ring.clone(), gens })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    /// The ideal with extra generators.
    pub fn extended(&self, extra: impl IntoIterator<Item = Poly<F>>) -> Result<Self, GroebnerError> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Self::new(&self.ring, gens)
    }

    /// The same generators in a ring with another term order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.ring.order() {
            return self.clone();
        }
        let ring = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| g.reorder(&ring).expect("same variables")).collect();
        Self { ring, gens }
    }
}

/// Bitmask summarizing a monomial: bit `7i + k` is set iff the exponent of
/// variable `i` exceeds `k`. `a | b` implies `sev(a) & !sev(b) == 0`.
fn sev(m: &Monomial) -> u64 {
    let mut s = 0u64;
    for i in 0..MAX_VARS {
        let e = m.exponent(i).min(7);
        s |= ((1u64 << e) - 1) << (7 * i);
    }
    s
}

/// Divisor lookup over a list of monic polynomials.
struct Reducers<'a, F: Field> {
    polys: Vec<&'a Poly<F>>,
    lms: Vec<Monomial>,
    sevs: Vec<u64>,
}

impl<'a, F: Field> Reducers<'a, F> {
    fn new(polys: impl IntoIterator<Item = &'a Poly<F>>) -> Self {
        let polys: Vec<&Poly<F>> = polys.into_iter().collect();
        let lms: Vec<Monomial> = polys.iter().map(|p| p.leading_monomial().expect("nonzero reducer")).collect();
        let sevs = lms.iter().map(sev).collect();
        Self { polys, lms, sevs }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let s = !sev(m);
        (0..self.lms.len()).find(|&i| self.sevs[i] & s == 0 && self.lms[i].divides(m))
    }

    /// Full reduction of `f`. Reducers must be monic.
    fn reduce(&self, field: &F, order: MonomialOrder, f: Vec<Term<F::Elem>>, deadline: &Deadline) -> Result<Vec<Term<F::Elem>>, GroebnerError> {
        let mut rest = f;
        let mut start = 0;
        let mut out = Vec::new();
        let mut buf = Vec::new();
        let mut steps = 0u32;
        while start < rest.len() {
            let (m, c) = &rest[start];
            match self.find(m) {
                None => {
                    out.push(rest[start].clone());
                    start += 1;
                }
                Some(i) => {
                    steps += 1;
                    if steps % 512 == 0 {
                        deadline.check()?;
                    }
                    let q = self.lms[i].quotient_of(m).expect("divisor found");
                    let c = c.clone();
                    crate::multipoly::sub_mul_into(field, order, &rest[start..], &c, &q, self.polys[i].terms(), &mut buf);
                    std::mem::swap(&mut rest, &mut buf);
                    start = 0;
                }
            }
        }
        Ok(out)
    }
}

/// A reduced Gröbner basis: monic, no leading monomial divides another
/// term of the basis, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    basis: Vec<Poly<F>>,
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl Pair {
    fn key(&self) -> (u32, usize, usize) {
        (self.lcm.degree(), self.i, self.j)
    }
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree, ties broken by pair indices) and the Gebauer–Möller criteria.
pub fn buchberger<F: Field>(ideal: &Ideal<F>, order: MonomialOrder, deadline: &Deadline) -> Result<GroebnerBasis<F>, GroebnerError> {
    deadline.check()?;
    let ideal = ideal.with_order(order);
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let mut store: Vec<Poly<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Poly<F>> = ideal.gens().iter().map(Poly::monic).collect();
    inputs.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    for g in inputs {
        let reduced = {
            let red = Reducers::new(active.iter().map(|&k| &store[k]));
            red.reduce(&field, order, g.into_terms(), deadline)?
        };
        if !reduced.is_empty() {
            let h = Poly::from_terms(&ring, reduced).monic();
            insert(&mut store, &mut active, &mut pairs, h);
        }
    }

    while let Some(pair) = pairs.pop() {
        deadline.check()?;
        let s = s_polynomial(&field, order, &store[pair.i], &store[pair.j], &pair.lcm);
        let reduced = {
            let red = Reducers::new(active.iter().map(|&k| &store[k]));
            red.reduce(&field, order, s, deadline)?
        };
        if !reduced.is_empty() {
            let h = Poly::from_terms_unchecked(&ring, reduced).monic();
            if h.is_constant() {
                return Ok(GroebnerBasis { ring: ring.clone(), basis: vec![ring.one()] });
            }
            insert(&mut store, &mut active, &mut pairs, h);
        }
    }
    let basis: Vec<Poly<F>> = active.iter().map(|&k| store[k].clone()).collect();
    GroebnerBasis::interreduce(&ring, basis, deadline)
}

fn s_polynomial<F: Field>(field: &F, order: MonomialOrder, f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Vec<Term<F::Elem>> {
    // both monic: S = (lcm/lm f) f - (lcm/lm g) g, leading terms cancel
    let mf = f.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    let mg = g.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    let ft: Vec<Term<F::Elem>> = f.terms()[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let mut out = Vec::new();
    crate::multipoly::sub_mul_into(field, order, &ft, &field.one(), &mg, &g.terms()[1..], &mut out);
    out
}

/// Add `h` to the basis and update the pair list (Gebauer–Möller).
fn insert<F: Field>(store: &mut Vec<Poly<F>>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: Poly<F>) {
    let hk = store.len();
    let lh = h.leading_monomial().unwrap();
    store.push(h);

    let candidates: Vec<Pair> = active
        .iter()
        .map(|&g| Pair { i: g, j: hk, lcm: store[g].leading_monomial().unwrap().lcm(&lh) })
        .collect();
    let coprime = |p: &Pair| store[p.i].leading_monomial().unwrap().is_coprime(&lh);

    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in candidates.iter().enumerate() {
        let dominated = |q: &Pair| q.lcm.divides(&p.lcm);
        if coprime(p) || (!candidates[idx + 1..].iter().any(dominated) && !kept.iter().any(dominated)) {
            kept.push(*p);
        }
    }
    kept.retain(|p| !coprime(p));

    // old pairs made redundant by h
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && store[p.i].leading_monomial().unwrap().lcm(&lh) != p.lcm
            && store[p.j].leading_monomial().unwrap().lcm(&lh) != p.lcm)
    });
    pairs.extend(kept);
    // pop() takes the smallest key
    pairs.sort_by(|a, b| b.key().cmp(&a.key()));

    active.retain(|&g| !lh.divides(&store[g].leading_monomial().unwrap()));
    active.push(hk);
}

impl<F: Field> GroebnerBasis<F> {
    /// Turn a Gröbner basis (not necessarily reduced) into the reduced one.
    pub fn interreduce(ring: &Arc<PolyRing<F>>, basis: Vec<Poly<F>>, deadline: &Deadline) -> Result<Self, GroebnerError> {
        let order = ring.order();
        let field = ring.field().clone();
        let mut polys: Vec<Poly<F>> = basis.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
        polys.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
        let mut minimal: Vec<Poly<F>> = Vec::new();
        for p in polys {
            let lm = p.leading_monomial().unwrap();
            if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(&lm)) {
                minimal.push(p);
            }
        }
        if minimal.iter().any(Poly::is_constant) {
            return Ok(Self { ring: ring.clone(), basis: vec![ring.one()] });
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let red = Reducers::new(minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p));
            let terms = red.reduce(&field, order, minimal[k].terms().to_vec(), deadline)?;
            out.push(Poly::from_terms_unchecked(ring, terms));
        }
        Ok(Self { ring: ring.clone(), basis: out })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn basis(&self) -> &[Poly<F>] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|p| p.leading_monomial().unwrap()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(Poly::is_constant)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.basis.iter().all(Poly::is_homogeneous)
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Result<Poly<F>, GroebnerError> {
        self.normal_form_with_deadline(f, &Deadline::never())
    }

    pub fn normal_form_with_deadline(&self, f: &Poly<F>, deadline: &Deadline) -> Result<Poly<F>, GroebnerError> {
        if !Arc::ptr_eq(f.ring(), &self.ring) && **f.ring() != *self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        let red = Reducers::new(self.basis.iter());
        let terms = red.reduce(self.ring.field(), self.ring.order(), f.terms().to_vec(), deadline)?;
        Ok(Poly::from_terms_unchecked(&self.ring, terms))
    }

    pub fn contains(&self, f: &Poly<F>) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Check that every S-polynomial reduces to zero (Buchberger's
    /// criterion; coprime pairs are skipped, which is sound).
    pub fn verify(&self) -> bool {
        let field = self.ring.field();
        let order = self.ring.order();
        let red = Reducers::new(self.basis.iter());
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
                if la.is_coprime(&lb) {
                    continue;
                }
                let s = s_polynomial(field, order, a, b, &la.lcm(&lb));
                match red.reduce(field, order, s, &Deadline::never()) {
                    Ok(r) if r.is_empty() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        hilbert_series(&self.leading_monomials(), self.ring.nvars())
    }

    /// Krull dimension of the quotient (`-1` for the unit ideal).
    pub fn dimension(&self) -> i64 {
        dimension_by_independent_sets(&self.leading_monomials(), self.ring.nvars())
    }

    /// Dimension of the projective scheme of a homogeneous ideal (`-1` when
    /// empty).
    pub fn projective_dimension(&self) -> i64 {
        (self.dimension() - 1).max(-1)
    }

    /// Monomials outside the leading-term ideal, in increasing order, or
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut bounds = vec![0u32; n];
        for (v, b) in bounds.iter_mut().enumerate() {
            *b = lms.iter().filter(|m| m.support().all(|s| s == v)).map(|m| m.exponent(v)).min()?;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(&exps).expect("bounded exponents");
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let Some(v) = (0..n).find(|&v| exps[v] + 1 < bounds[v]) else {
                break;
            };
            exps[v] += 1;
            exps[..v].iter_mut().for_each(|e| *e = 0);
        }
        let order = self.ring.order();
        out.sort_by(|a, b| order.cmp(a, b));
        Some(out)
    }
}
