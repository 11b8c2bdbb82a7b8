use rand::Rng;
use serde::Serialize;

use super::{AnalysisError, DerivedMatrices};
use crate::exactnum::{Field, PrimeField};
use crate::groebner::{buchberger, zero_dim_analyze_projective, Deadline, GroebnerError, Ideal};
use crate::multipoly::{MonomialOrder, Poly};
use crate::polymatrix::PolyMatrix;

/// The quintic threefold in P4 and the check of its Laplace expansion.
#[derive(Debug, Clone)]
pub struct Quintic<F: Field> {
    /// det 𝔄(x̲).
    pub poly: Poly<F>,
    /// The unsigned cubic minors ℭ₀..ℭ₃ of 𝔞.
    pub cubics: Vec<Poly<F>>,
    /// det 𝔄 = ℭ₀Q̲₀ − ℭ₁Q̲₁ + ℭ₂Q̲₂ − ℭ₃Q̲₃ as polynomials.
    pub laplace_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuinticSummary {
    pub degree: Option<u32>,
    pub homogeneous: bool,
    pub terms: usize,
    pub laplace_identity: bool,
}

impl<F: Field> Quintic<F> {
    pub fn summary(&self) -> QuinticSummary {
        QuinticSummary {
            degree: self.poly.total_degree(),
            homogeneous: self.poly.is_homogeneous(),
            terms: self.poly.len(),
            laplace_identity: self.laplace_identity,
        }
    }
}

/// Expand det 𝔄(x̲) and compare with its expansion along the first column.
pub fn quintic<F: Field>(d: &DerivedMatrices<F>) -> Result<Quintic<F>, AnalysisError> {
    let poly = d.big_a.det()?;
    let cubics = d.bordiga_cubics();
    let mut laplace = d.low_ring.zero();
    for (i, (c, q)) in cubics.iter().zip(&d.low_quadrics).enumerate() {
        let term = c * q;
        laplace = if i % 2 == 0 { &laplace + &term } else { &laplace - &term };
    }
    let laplace_identity = laplace == poly;
    if !laplace_identity {
        return Err(AnalysisError::Inconsistent("det 𝔄 differs from its first-column expansion".into()));
    }
    Ok(Quintic { poly, cubics, laplace_identity })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BordigaSummary {
    /// Dimension in P4 of the zero set of the cubics ℭᵢ.
    pub projective_dimension: i64,
    /// Degree from the Hilbert series of the leading-term ideal.
    pub degree: i64,
    /// Jacobian criterion: the cubics together with the 2×2 minors of their
    /// Jacobian have no common zero in P4.
    pub smooth: bool,
    /// The quintic lies in the ideal of the cubics.
    pub quintic_member: bool,
    /// Points sampled on the surface (a random plane section) and whether 𝔞
    /// has rank exactly two at each.
    pub sampled_points: usize,
    pub rank_two_at_samples: bool,
}

/// Summarize the surface cut out by the cubic minors of 𝔞.
pub fn bordiga<R: Rng + ?Sized>(
    d: &DerivedMatrices<PrimeField>,
    quintic: &Poly<PrimeField>,
    rng: &mut R,
    deadline: &Deadline,
) -> Result<BordigaSummary, AnalysisError> {
    let field = d.field.clone();
    let ring = &d.low_ring;
    let cubics = d.bordiga_cubics();
    let ideal = Ideal::new(ring, cubics.clone())?;
    let gb = buchberger(&ideal, MonomialOrder::DegRevLex, deadline)?;
    let series = gb.hilbert_series();
    let projective_dimension = series.krull_dimension() - 1;
    let degree = series.degree();
    let quintic_member = gb.contains(quintic)?;

    let jac = PolyMatrix::from_fn(ring, cubics.len(), ring.nvars(), |i, j| cubics[i].partial_derivative(j).expect("variable in range"))?;
    let mut sing = cubics.clone();
    sing.extend(jac.minors(2)?);
    let sing_gb = buchberger(&Ideal::new(ring, sing)?, MonomialOrder::DegRevLex, deadline)?;
    let smooth = sing_gb.projective_dimension() < 0;

    let (sampled_points, rank_two_at_samples) = if projective_dimension == 2 {
        let mut gens = cubics;
        for _ in 0..2 {
            let form = ring.vars().iter().fold(ring.zero(), |acc, v| &acc + &v.scale(&field.sample(rng)));
            gens.push(form);
        }
        match zero_dim_analyze_projective(&Ideal::new(ring, gens)?, rng, deadline) {
            Ok(section) => match section.orbits(rng) {
                Some(orbits) => {
                    let ok = orbits.iter().all(|o| {
                        let k = &o.field;
                        d.a.evaluate_in(k, |c| k.embed(*c), &o.coords).map(|m| m.rank() == 2).unwrap_or(false)
                    });
                    (section.point_count(), ok)
                }
                None => (section.point_count(), false),
            },
            Err(GroebnerError::PositiveDimensional(_)) => (0, false),
            Err(e) => return Err(e.into()),
        }
    } else {
        (0, false)
    };
    Ok(BordigaSummary { projective_dimension, degree, smooth, quintic_member, sampled_points, rank_two_at_samples })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank2Summary {
    /// Points of {y : rank 𝔅(y) ≤ 2}; `None` if positive-dimensional.
    pub count: Option<usize>,
    pub length: Option<usize>,
    /// {y : rank 𝔅(y) ≤ 1} is empty in P3.
    pub rank_one_empty: bool,
}

/// The web members whose 𝔅 block drops rank.
pub fn rank2_locus<F: Field, R: Rng + ?Sized>(
    d: &DerivedMatrices<F>,
    rng: &mut R,
    deadline: &Deadline,
) -> Result<(Rank2Summary, Option<crate::groebner::ZeroDimScheme<F>>), AnalysisError> {
    let ring = &d.web_ring;
    let two = buchberger(&Ideal::new(ring, d.b_of_y.minors(2)?)?, MonomialOrder::DegRevLex, deadline)?;
    let rank_one_empty = two.projective_dimension() < 0;
    match zero_dim_analyze_projective(&Ideal::new(ring, d.b_of_y.minors(3)?)?, rng, deadline) {
        Ok(s) => Ok((Rank2Summary { count: Some(s.point_count()), length: Some(s.length()), rank_one_empty }, Some(s))),
        Err(GroebnerError::PositiveDimensional(_)) => Ok((Rank2Summary { count: None, length: None, rank_one_empty }, None)),
        Err(e) => Err(e.into()),
    }
}
