use rand::Rng;
use serde::Serialize;

use super::{AnalysisError, DerivedMatrices, Verdict, Web};
use crate::exactnum::{ExtensionField, Field, PrimeField};
use crate::groebner::{buchberger, zero_dim_analyze_projective, Deadline, GroebnerError, Ideal, PointOrbit, ZeroDimScheme};
use crate::multipoly::{MonomialOrder, Poly};
use crate::polymatrix::{FieldMatrix, PolyMatrix};

/// The budget Σ(μ + 1) over the singular points of the discriminant octic.
pub const MILNOR_BUDGET: usize = 188;
/// Upper bound on singular points of the octic that are not of type A.
pub const MAX_NON_A_POINTS: usize = 10;

/// S₈(y) = det Σ yᵢ 𝔮ᵢ.
pub fn discriminant<F: Field>(web: &Web<F>, d: &DerivedMatrices<F>) -> Result<Poly<F>, AnalysisError> {
    let q = PolyMatrix::linear_combination(&d.web_ring, web.matrices(), &[0, 1, 2, 3])?;
    let s8 = q.det()?;
    if s8.is_zero() {
        return Err(AnalysisError::Degenerate("every member of the web is singular".into()));
    }
    Ok(s8)
}

/// ⟨S₈, ∂S₈/∂y₀, ..., ∂S₈/∂y₃⟩, whose scheme is the Tjurina scheme.
pub fn tjurina_ideal<F: Field>(s8: &Poly<F>) -> Result<Ideal<F>, AnalysisError> {
    let mut gens = vec![s8.clone()];
    gens.extend(s8.gradient());
    Ok(Ideal::new(s8.ring(), gens)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A4Verdict {
    pub status: Verdict,
    /// Dimension of the singular locus of S₈ in P3 (−1 when smooth).
    pub singular_dimension: i64,
}

/// The discriminant octic has isolated singularities only.
pub fn check_a4<F: Field>(s8: &Poly<F>, deadline: &Deadline) -> Result<A4Verdict, AnalysisError> {
    let gb = buchberger(&tjurina_ideal(s8)?, MonomialOrder::DegRevLex, deadline)?;
    let dim = gb.projective_dimension();
    Ok(A4Verdict { status: Verdict::from_bool(dim <= 0), singular_dimension: dim })
}

/// Types of singular points of the discriminant octic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityLabel {
    /// Node.
    A1,
    /// A_m with m odd and at least 3.
    OddA,
    /// Double point of corank two.
    Corank2Double,
    /// Point of multiplicity at least three.
    MultiplePoint,
}

impl SingularityLabel {
    pub fn is_ade(self) -> bool {
        matches!(self, SingularityLabel::A1 | SingularityLabel::OddA)
    }
}

/// One Galois orbit of singular points of S₈ with its classification data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularOrbit {
    /// Number of conjugate points (degree of the field of definition).
    pub size: usize,
    /// Coordinates `(y0 : ... : y3)` of one point, first nonzero equal to 1.
    pub point: Vec<String>,
    pub rank_q: usize,
    pub rank_b: usize,
    /// sing Q(y) meets the plane (rank 6 only).
    pub kernel_meets_plane: Option<bool>,
    /// Another member of the web contains sing Q(y) (rank 6 only).
    pub contained_in_other_member: Option<bool>,
    pub label: SingularityLabel,
    /// Local length of the Tjurina scheme at each point of the orbit.
    pub tjurina_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Σ (τ + 1) over singular points.
    pub sum_tau_plus_one: usize,
    /// Every singular point is of type A, so τ = μ and the sum is Σ(μ + 1).
    pub all_ade: bool,
    /// `all_ade` and the sum equals 188.
    pub milnor_budget_certified: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    pub degree: Option<u32>,
    pub terms: usize,
    pub singular_points: usize,
    pub tjurina_length: usize,
    /// `(local Tjurina length, number of points)`.
    pub tjurina_profile: Vec<(usize, usize)>,
    pub orbits: Vec<SingularOrbit>,
    pub label_counts: Vec<(SingularityLabel, usize)>,
    /// Points that are not of type A (at most ten for compliant webs).
    pub non_a_points: usize,
    pub budget: Budget,
}

/// Classify each singular point of S₈ by the rank of its member and the
/// position of that member's singular locus.
pub fn classify_discriminant<R: Rng + ?Sized>(
    web: &Web<PrimeField>,
    d: &DerivedMatrices<PrimeField>,
    s8: &Poly<PrimeField>,
    rng: &mut R,
    deadline: &Deadline,
) -> Result<DiscriminantReport, AnalysisError> {
    let scheme = match zero_dim_analyze_projective(&tjurina_ideal(s8)?, rng, deadline) {
        Ok(s) => s,
        Err(GroebnerError::PositiveDimensional(dim)) => {
            return Err(AnalysisError::Degenerate(format!("discriminant has a {dim}-dimensional singular locus")));
        }
        Err(e) => return Err(e.into()),
    };
    classify_scheme(web, d, s8, &scheme, rng)
}

fn classify_scheme<R: Rng + ?Sized>(
    web: &Web<PrimeField>,
    d: &DerivedMatrices<PrimeField>,
    s8: &Poly<PrimeField>,
    scheme: &ZeroDimScheme<PrimeField>,
    rng: &mut R,
) -> Result<DiscriminantReport, AnalysisError> {
    let orbits = scheme
        .orbits(rng)
        .ok_or_else(|| AnalysisError::Inconsistent("singular points of the discriminant could not be separated".into()))?;
    let classified = orbits.iter().map(|o| classify_point(web, d, o)).collect::<Result<Vec<_>, _>>()?;

    let mut label_counts: Vec<(SingularityLabel, usize)> = Vec::new();
    for o in &classified {
        match label_counts.iter_mut().find(|(l, _)| *l == o.label) {
            Some((_, n)) => *n += o.size,
            None => label_counts.push((o.label, o.size)),
        }
    }
    label_counts.sort();
    let non_a_points = classified.iter().filter(|o| !o.label.is_ade()).map(|o| o.size).sum();
    let sum_tau_plus_one = classified.iter().map(|o| o.size * (o.tjurina_length + 1)).sum();
    let all_ade = classified.iter().all(|o| o.label.is_ade());
    let milnor_budget_certified = all_ade && sum_tau_plus_one == MILNOR_BUDGET;
    let note = if all_ade {
        format!("all singular points are of type A, so Σ(μ+1) = Σ(τ+1) = {sum_tau_plus_one}")
    } else {
        format!("Σ(τ+1) = {sum_tau_plus_one}; non-A points present, so the budget Σ(μ+1) = {MILNOR_BUDGET} is not directly checkable")
    };
    Ok(DiscriminantReport {
        degree: s8.total_degree(),
        terms: s8.len(),
        singular_points: scheme.point_count(),
        tjurina_length: scheme.length(),
        tjurina_profile: scheme.profile().map(|p| p.to_vec()).unwrap_or_default(),
        orbits: classified,
        label_counts,
        non_a_points,
        budget: Budget { sum_tau_plus_one, all_ade, milnor_budget_certified, note },
    })
}

fn quadratic_value(k: &ExtensionField, m: &FieldMatrix<ExtensionField>, u: &[Vec<u64>], v: &[Vec<u64>]) -> Vec<u64> {
    let mv = m.mul_vec(v).expect("8 entries");
    u.iter().zip(&mv).fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
}

fn classify_point(web: &Web<PrimeField>, d: &DerivedMatrices<PrimeField>, orbit: &PointOrbit) -> Result<SingularOrbit, AnalysisError> {
    let k = &orbit.field;
    let embed = |c: &u64| k.embed(*c);
    let y = &orbit.coords;
    let q = web.member_at(k, embed, y);
    let rank_q = q.rank();
    let rank_b = d.b_of_y.evaluate_in(k, embed, y)?.rank();
    let members: Vec<FieldMatrix<ExtensionField>> = web.matrices().iter().map(|m| m.map(k.clone(), embed)).collect();
    let (label, kernel_meets_plane, contained) = match rank_q {
        7 => {
            let p = &q.kernel_basis()[0];
            if !members.iter().all(|m| k.is_zero(&quadratic_value(k, m, p, p))) {
                return Err(AnalysisError::Inconsistent(format!(
                    "rank-7 member at a singular point of the discriminant has its vertex off the base locus (y = {})",
                    format_point(k, y)
                )));
            }
            (SingularityLabel::A1, None, None)
        }
        6 => {
            let ker = q.kernel_basis();
            let (u, v) = (&ker[0], &ker[1]);
            // restrictions of the members to the kernel line, as binary quadratic forms
            let restricted = FieldMatrix::from_fn(k.clone(), 4, 3, |j, c| match c {
                0 => quadratic_value(k, &members[j], u, u),
                1 => quadratic_value(k, &members[j], u, v),
                _ => quadratic_value(k, &members[j], v, v),
            });
            // Q(y) itself restricts to zero; another independent member does iff rank ≤ 2
            let contained = restricted.rank() <= 2;
            let low = FieldMatrix::from_fn(k.clone(), 5, 2, |i, c| if c == 0 { u[i].clone() } else { v[i].clone() });
            let meets = low.rank() < 2;
            let label = match (contained, meets) {
                (false, _) => SingularityLabel::A1,
                (true, false) => SingularityLabel::OddA,
                (true, true) => SingularityLabel::Corank2Double,
            };
            (label, Some(meets), Some(contained))
        }
        5 => (SingularityLabel::MultiplePoint, None, None),
        r => {
            return Err(AnalysisError::Inconsistent(format!(
                "member of rank {r} at a singular point of the discriminant (y = {})",
                format_point(k, y)
            )));
        }
    };
    let tau = orbit.local_length;
    if (label == SingularityLabel::A1) != (tau == 1) {
        return Err(AnalysisError::Inconsistent(format!(
            "point labeled {label:?} has local Tjurina length {tau} (y = {})",
            format_point(k, y)
        )));
    }
    Ok(SingularOrbit {
        size: orbit.size,
        point: normalized_point(k, y),
        rank_q,
        rank_b,
        kernel_meets_plane,
        contained_in_other_member: contained,
        label,
        tjurina_length: tau,
    })
}

pub(crate) fn normalized_point(k: &ExtensionField, y: &[Vec<u64>]) -> Vec<String> {
    let lead = y.iter().find(|c| !k.is_zero(c)).expect("projective point");
    let inv = k.inv(lead).expect("nonzero");
    y.iter().map(|c| k.format_elem(&k.mul(c, &inv))).collect()
}

fn format_point(k: &ExtensionField, y: &[Vec<u64>]) -> String {
    format!("({})", normalized_point(k, y).join(" : "))
}
