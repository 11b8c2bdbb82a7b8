use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{AnalysisError, DerivedMatrices, Web};
use crate::exactnum::{FiniteField, PrimeField};
use crate::groebner::univariate as up;
use crate::multipoly::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::polymatrix::FieldMatrix;

/// Fiber types of the conic bundle over P3, keyed by (rank 𝔮(y), rank 𝔅(y)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberType {
    /// rank 𝔅 = 2: a plane cubic.
    A,
    /// rank 𝔮 = 6, rank 𝔅 = 3: a line in P4.
    B,
    /// rank 𝔮 = 7, rank 𝔅 = 3: one point.
    C,
    /// rank 𝔮 = 8: two points.
    D,
}

impl FiberType {
    pub fn letter(self) -> char {
        match self {
            FiberType::A => 'a',
            FiberType::B => 'b',
            FiberType::C => 'c',
            FiberType::D => 'd',
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FiberType::A => "a plane cubic",
            FiberType::B => "a line in P4",
            FiberType::C => "one point",
            FiberType::D => "two points",
        }
    }
}

/// The cubic curve cut on the plane {𝔅(y)x̲ = 0} by the surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneCubic {
    /// Dimension of the span of ℭ₀..ℭ₃ restricted to the plane; 1 when they
    /// all cut out the same cubic curve.
    pub span_dimension: usize,
    /// The cubic in plane coordinates (s, t, w), when the span is nonzero.
    pub cubic: Option<String>,
    /// Degrees of its irreducible factors over the working field, ascending.
    pub factor_degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub fiber_type: FiberType,
    pub rank_q: usize,
    pub rank_b: usize,
    pub description: String,
    pub plane_cubic: Option<PlaneCubic>,
}

/// Type of the fiber over `y ∈ P3` from the ranks of 𝔮(y) and 𝔅(y).
pub fn fiber_type<R: Rng + ?Sized>(
    web: &Web<PrimeField>,
    d: &DerivedMatrices<PrimeField>,
    y: &[u64],
    rng: &mut R,
) -> Result<FiberReport, AnalysisError> {
    fiber_type_in(web, d, web.field(), |c| *c, y, rng)
}

/// [`fiber_type`] at a point with coordinates in a finite extension `k`;
/// factor degrees of a type-a cubic are then taken over `k`.
pub fn fiber_type_in<K: FiniteField, R: Rng + ?Sized>(
    web: &Web<PrimeField>,
    d: &DerivedMatrices<PrimeField>,
    k: &K,
    embed: impl Fn(&u64) -> K::Elem + Copy,
    y: &[K::Elem],
    rng: &mut R,
) -> Result<FiberReport, AnalysisError> {
    if y.len() != 4 || y.iter().all(|c| k.is_zero(c)) {
        return Err(AnalysisError::Degenerate("fiber requested over the zero vector".into()));
    }
    let rank_q = web.member_at(k, embed, y).rank();
    let bmat = d.b_of_y.evaluate_in(k, embed, y)?;
    let rank_b = bmat.rank();
    let fiber_type = match (rank_q, rank_b) {
        (8, 3) => FiberType::D,
        (7, 3) => FiberType::C,
        (6, 3) => FiberType::B,
        (5..=7, 2) => FiberType::A,
        (rq, rb) => {
            return Err(AnalysisError::Inconsistent(format!("no fiber type has rank 𝔮 = {rq} and rank 𝔅 = {rb}")));
        }
    };
    let plane_cubic = match fiber_type {
        FiberType::A => Some(plane_cubic(d, k, embed, &bmat, rng)?),
        _ => None,
    };
    Ok(FiberReport { fiber_type, rank_q, rank_b, description: fiber_type.description().into(), plane_cubic })
}

fn plane_cubic<K: FiniteField, R: Rng + ?Sized>(
    d: &DerivedMatrices<PrimeField>,
    k: &K,
    embed: impl Fn(&u64) -> K::Elem,
    bmat: &FieldMatrix<K>,
    rng: &mut R,
) -> Result<PlaneCubic, AnalysisError> {
    let ring = PolyRing::new(k.clone(), &["s", "t", "w"], MonomialOrder::DegRevLex)?;
    let low = PolyRing::indexed(k.clone(), "x", 0, 5, MonomialOrder::DegRevLex)?;
    let ker = bmat.kernel_basis();
    let vars = ring.vars();
    let images: Vec<Poly<K>> = (0..5)
        .map(|i| ker.iter().zip(&vars).fold(ring.zero(), |acc, (v, x)| &acc + &x.scale(&v[i])))
        .collect();
    let restricted = d
        .bordiga_cubics()
        .iter()
        .map(|c| c.map_coeffs(&low, &embed)?.substitute(&ring, &images))
        .collect::<Result<Vec<_>, _>>()?;
    let monomials = cubic_monomials();
    let coeffs = FieldMatrix::from_fn(k.clone(), restricted.len(), monomials.len(), |i, j| restricted[i].coeff(&monomials[j]));
    let span_dimension = coeffs.rank();
    let Some(cubic) = restricted.into_iter().find(|c| !c.is_zero()) else {
        return Ok(PlaneCubic { span_dimension, cubic: None, factor_degrees: Vec::new() });
    };
    let factor_degrees = factor_degrees(&ring, &cubic, rng)?;
    Ok(PlaneCubic { span_dimension, cubic: Some(cubic.to_string()), factor_degrees })
}

fn cubic_monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            out.push(Monomial::from_exponents(&[a, b, 3 - a - b]).expect("three variables"));
        }
    }
    out
}

/// Degrees of the factors of a ternary form: peel off linear factors, then
/// call whatever remains irreducible. Exact for degree ≤ 3 (a product of two
/// conics would be reported as a quartic).
fn factor_degrees<K: FiniteField, R: Rng + ?Sized>(ring: &Arc<PolyRing<K>>, form: &Poly<K>, rng: &mut R) -> Result<Vec<usize>, AnalysisError> {
    let f = ring.field().clone();
    let vars = ring.vars();
    // a random change of coordinates that makes the w^n coefficient nonzero,
    // so every linear factor can be written w − αs − βt
    let mut g = form.clone();
    for _ in 0..16 {
        let m = FieldMatrix::from_fn(f.clone(), 3, 3, |_, _| f.random_elem(rng));
        if m.rank() < 3 {
            continue;
        }
        let images: Vec<Poly<K>> = (0..3)
            .map(|i| (0..3).fold(ring.zero(), |acc, j| &acc + &vars[j].scale(m.get(i, j))))
            .collect();
        let candidate = form.substitute(ring, &images)?;
        let n = candidate.total_degree().unwrap_or(0);
        if !f.is_zero(&candidate.coeff(&Monomial::var_pow(2, n))) {
            g = candidate;
            break;
        }
    }
    let mut degrees = Vec::new();
    'outer: loop {
        let n = g.total_degree().unwrap_or(0) as usize;
        if n <= 1 {
            if n == 1 {
                degrees.push(1);
            }
            break;
        }
        let alphas = up::roots(&f, &edge_univariate(&g, 0, n), rng);
        let betas = up::roots(&f, &edge_univariate(&g, 1, n), rng);
        for a in &alphas {
            for b in &betas {
                let line = &(&vars[2] - &vars[0].scale(a)) - &vars[1].scale(b);
                if let Ok(q) = g.div_exact(&line) {
                    degrees.push(1);
                    g = q;
                    continue 'outer;
                }
            }
        }
        degrees.push(n);
        break;
    }
    degrees.sort_unstable();
    Ok(degrees)
}

/// g(e_var, w) as a univariate in w, where e_var sets variable `var` to 1 and
/// the other of s, t to 0.
fn edge_univariate<K: FiniteField>(g: &Poly<K>, var: usize, n: usize) -> Vec<K::Elem> {
    let f = g.field();
    let mut out = vec![f.zero(); n + 1];
    for (m, c) in g.terms() {
        if m.exponent(1 - var) == 0 {
            out[m.exponent(2) as usize] = c.clone();
        }
    }
    up::normalize(f, out)
}
