use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{AnalysisError, DerivedMatrices, Verdict};
use crate::exactnum::{ExtensionField, Field, PrimeField};
use crate::groebner::univariate as up;
use crate::groebner::{buchberger, radical_membership, zero_dim_analyze_projective, Deadline, GroebnerError, Ideal, PointOrbit, ZeroDimScheme};
use crate::multipoly::{MonomialOrder, Poly, PolyRing};
use crate::polymatrix::PolyMatrix;

/// Number of singular points of the base locus on the plane for a web
/// satisfying the first assumption.
pub const ON_PLANE_POINTS: usize = 10;
/// Number of nodes of the quintic threefold under the third assumption.
pub const QUINTIC_NODES: usize = 46;

/// Singular locus of the base locus on the plane: the 4×4 minors of ℭ.
pub fn sing_on_plane<F: Field, R: Rng + ?Sized>(d: &DerivedMatrices<F>, rng: &mut R, deadline: &Deadline) -> Result<ZeroDimScheme<F>, GroebnerError> {
    let minors = d.c.minors(4)?;
    zero_dim_analyze_projective(&Ideal::new(&d.plane_ring, minors)?, rng, deadline)
}

/// The 4×8 Jacobian matrix of the four quadrics.
pub fn jacobian<F: Field>(d: &DerivedMatrices<F>) -> PolyMatrix<F> {
    PolyMatrix::from_fn(&d.full_ring, 4, 8, |i, j| d.quadrics[i].partial_derivative(j).expect("variable in range")).expect("4×8")
}

/// How the absence of singular points off the plane was decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum OffPlane {
    /// The whole singular scheme has degree equal to the number of on-plane points.
    CertifiedByDegree,
    /// Each of `x0..x4` lies in the radical of the singular ideal.
    CertifiedByRadical,
    /// A singular point or curve exists off the plane.
    Fails { singular_dimension: i64 },
    Inconclusive { reason: String },
    NotChecked,
}

impl OffPlane {
    fn verdict(&self) -> Verdict {
        match self {
            OffPlane::CertifiedByDegree | OffPlane::CertifiedByRadical => Verdict::Holds,
            OffPlane::Fails { .. } => Verdict::Fails,
            OffPlane::Inconclusive { .. } | OffPlane::NotChecked => Verdict::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A1Verdict {
    pub status: Verdict,
    /// `None` when the on-plane locus is infinite.
    pub on_plane_count: Option<usize>,
    pub on_plane_length: Option<usize>,
    pub on_plane_dimension: i64,
    pub off_plane: OffPlane,
}

/// Ten reduced singular points on the plane and none elsewhere.
pub fn check_a1<F: Field>(d: &DerivedMatrices<F>, on_plane: &Result<ZeroDimScheme<F>, GroebnerError>, deadline: &Deadline) -> Result<A1Verdict, AnalysisError> {
    let scheme = match on_plane {
        Ok(s) => s,
        Err(GroebnerError::PositiveDimensional(dim)) => {
            return Ok(A1Verdict {
                status: Verdict::Fails,
                on_plane_count: None,
                on_plane_length: None,
                on_plane_dimension: *dim,
                off_plane: OffPlane::NotChecked,
            });
        }
        Err(e) => return Err(e.clone().into()),
    };
    let count = scheme.point_count();
    let on_plane_ok = count == ON_PLANE_POINTS && scheme.is_reduced();
    let off_plane = if on_plane_ok { off_plane_smoothness(d, count, deadline)? } else { OffPlane::NotChecked };
    let status = if !on_plane_ok { Verdict::Fails } else { off_plane.verdict() };
    Ok(A1Verdict {
        status,
        on_plane_count: Some(count),
        on_plane_length: Some(scheme.length()),
        on_plane_dimension: if count == 0 { -1 } else { 0 },
        off_plane,
    })
}

/// Decide whether the base locus is smooth away from the plane, given that
/// it has `on_plane` distinct singular points on it.
///
/// The singular scheme Z is cut out by the quadrics and the 4×4 minors of the
/// Jacobian. Its on-plane points are exactly the `on_plane` points found
/// before, so `deg Z = on_plane` forces Z to be those reduced points.
fn off_plane_smoothness<F: Field>(d: &DerivedMatrices<F>, on_plane: usize, deadline: &Deadline) -> Result<OffPlane, AnalysisError> {
    let mut gens = d.quadrics.clone();
    gens.extend(jacobian(d).minors(4)?);
    let ideal = Ideal::new(&d.full_ring, gens)?;
    let gb = match buchberger(&ideal, MonomialOrder::DegRevLex, deadline) {
        Ok(gb) => gb,
        Err(GroebnerError::Timeout) => return Ok(OffPlane::Inconclusive { reason: "singular ideal basis timed out".into() }),
        Err(e) => return Err(e.into()),
    };
    let dim = gb.projective_dimension();
    if dim > 0 {
        // the on-plane part is finite, so a curve of singular points leaves the plane
        return Ok(OffPlane::Fails { singular_dimension: dim });
    }
    if dim == 0 && gb.hilbert_series().degree() == on_plane as i64 {
        return Ok(OffPlane::CertifiedByDegree);
    }
    log::info!("singular scheme degree exceeds the on-plane count; falling back to radical membership");
    let in_radical = |v: usize| radical_membership(&d.full_ring.var(v), &ideal, deadline);
    for v in 0..5 {
        match in_radical(v) {
            Ok(true) => {}
            Ok(false) => return Ok(OffPlane::Fails { singular_dimension: 0 }),
            Err(GroebnerError::Timeout) => {
                return Ok(OffPlane::Inconclusive { reason: format!("radical membership of x{v} timed out") });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(OffPlane::CertifiedByRadical)
}

/// Every on-plane singular point is a node: the length of the scheme cut out
/// on the plane by the Jacobian minors is exactly ten.
pub fn check_nodes_on_plane<F: Field, R: Rng + ?Sized>(d: &DerivedMatrices<F>, rng: &mut R, deadline: &Deadline) -> Result<(bool, usize), AnalysisError> {
    let restricted: Vec<Poly<F>> = jacobian(d).minors(4)?.iter().map(|m| d.restrict_to_plane(m)).collect();
    let scheme = zero_dim_analyze_projective(&Ideal::new(&d.plane_ring, restricted)?, rng, deadline)?;
    Ok((scheme.length() == ON_PLANE_POINTS, scheme.length()))
}

/// A line of the plane through at least four of the on-plane points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineWitness {
    /// Degree over the prime field of the field of definition of the line.
    pub field_degree: usize,
    /// Coefficients of `(x5, x6, x7)`, first nonzero one equal to 1.
    pub line: Vec<String>,
    /// The two plane coordinates used to parametrize the line.
    pub variables: [String; 2],
    /// The gcd of the restricted 4×4 minors of ℭ, coefficients of
    /// `s^d, s^(d-1) t, ..., t^d` in the two parametrizing coordinates,
    /// leading nonzero coefficient equal to 1.
    pub restricted_form: Vec<String>,
    /// The same form with integer coefficients, recovered by rational
    /// reconstruction when the line is defined over the prime field.
    pub integer_form: Option<Vec<i64>>,
    #[serde(skip)]
    pub line_elems: Vec<Vec<u64>>,
    #[serde(skip)]
    pub form_elems: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A2Verdict {
    pub status: Verdict,
    pub reason: Option<String>,
    /// Number of points (over the algebraic closure) of the scheme of lines
    /// through four or more on-plane points.
    pub bad_line_count: Option<usize>,
    pub witness: Option<LineWitness>,
}

/// Lines meeting a reduced plane point scheme in at least four points.
#[derive(Debug, Clone)]
pub enum LineSearch {
    /// The scheme has no usable shape description.
    Unavailable(String),
    /// Every such line, grouped in Galois orbits, coordinates `(a, b, c)` of
    /// the line `a x5 + b x6 + c x7 = 0`.
    Lines { count: usize, orbits: Vec<PointOrbit> },
    /// The lines form a positive-dimensional family.
    Infinite(i64),
}

/// The principal subresultant coefficients `psc_0, ..., psc_{k-1}` of a monic
/// `g` of degree `m` and a polynomial of formal degree `m - 1` whose
/// coefficients (lowest first) are polynomials in `ring`.
///
/// `psc_j` is the determinant of the leftmost square block of the Sylvester
/// matrix with `m - 1 - j` shifted copies of `g` and `m - j` of the other
/// polynomial; all vanish for `j < k` iff the gcd has degree at least `k`.
pub fn principal_subresultants<F: Field>(ring: &Arc<PolyRing<F>>, g: &[F::Elem], l: &[Poly<F>], k: usize) -> Result<Vec<Poly<F>>, AnalysisError> {
    let m = g.len() - 1;
    let n = m - 1;
    assert_eq!(l.len(), m, "formal degree m - 1");
    (0..k.min(n + 1))
        .map(|j| {
            let size = m + n - 2 * j;
            let top = m + n - j - 1;
            let entry = |shift: usize, coeffs: &dyn Fn(usize) -> Option<Poly<F>>, c: usize| {
                let power = top - c;
                if power < shift {
                    return ring.zero();
                }
                coeffs(power - shift).unwrap_or_else(|| ring.zero())
            };
            let g_coeff = |e: usize| g.get(e).map(|c| ring.constant(c.clone()));
            let l_coeff = |e: usize| l.get(e).cloned();
            let mat = PolyMatrix::from_fn(ring, size, size, |r, c| {
                if r < n - j {
                    entry(n - j - 1 - r, &g_coeff, c)
                } else {
                    entry(m - j - 1 - (r - (n - j)), &l_coeff, c)
                }
            })?;
            Ok(mat.det()?)
        })
        .collect()
}

/// Find all lines through at least four points of a reduced scheme in the
/// plane with coordinates `(x5, x6, x7)`.
///
/// With the scheme in shape position (`u` separating, points
/// `x5 = h5(u), x6 = h6(u)` in the chart coordinates, eliminant `g`), the
/// line `a x5 + b x6 + c x7` restricts to `L(u) = a h5 + b h6 + c x7(u)` and
/// passes through the points where `g` and `L` share a root.
pub fn lines_through_four<R: Rng + ?Sized>(scheme: &ZeroDimScheme<PrimeField>, rng: &mut R, deadline: &Deadline) -> Result<LineSearch, AnalysisError> {
    let (Some(shape), Some(chart)) = (scheme.shape(), scheme.chart()) else {
        return Ok(LineSearch::Unavailable("on-plane scheme has no shape description".into()));
    };
    if scheme.ring().nvars() != 3 {
        return Ok(LineSearch::Unavailable("expected a scheme in the plane".into()));
    }
    let field = scheme.ring().field().clone();
    let g = &shape.eliminant;
    let m = g.len() - 1;
    if m < 4 {
        return Ok(LineSearch::Lines { count: 0, orbits: Vec::new() });
    }
    let ring = PolyRing::new(field.clone(), &["a", "b", "c"], MonomialOrder::DegRevLex)?;
    let [a, b, c] = [ring.var(0), ring.var(1), ring.var(2)];
    let (h5, h6) = (&shape.coords[0], &shape.coords[1]);
    let at = |h: &[u64], k: usize| h.get(k).copied().unwrap_or(0);
    let l: Vec<Poly<PrimeField>> = (0..m)
        .map(|k| {
            let mut x7 = field.add(&field.mul(&chart.shift[0], &at(h5, k)), &field.mul(&chart.shift[1], &at(h6, k)));
            if k == 0 {
                x7 = field.add(&x7, &1);
            }
            &(&a.scale(&at(h5, k)) + &b.scale(&at(h6, k))) + &c.scale(&x7)
        })
        .collect();
    let psc = principal_subresultants(&ring, g, &l, 4)?;
    let ideal = Ideal::new(&ring, psc)?;
    match zero_dim_analyze_projective(&ideal, rng, deadline) {
        Ok(s) if s.point_count() == 0 => Ok(LineSearch::Lines { count: 0, orbits: Vec::new() }),
        Ok(s) => match s.orbits(rng) {
            Some(orbits) => Ok(LineSearch::Lines { count: s.point_count(), orbits }),
            None => Ok(LineSearch::Unavailable("scheme of lines has no shape description".into())),
        },
        Err(GroebnerError::PositiveDimensional(dim)) => Ok(LineSearch::Infinite(dim)),
        Err(e) => Err(e.into()),
    }
}

/// No line of the plane contains four of the ten singular points.
pub fn check_a2<R: Rng + ?Sized>(
    d: &DerivedMatrices<PrimeField>,
    on_plane: &ZeroDimScheme<PrimeField>,
    rng: &mut R,
    deadline: &Deadline,
) -> Result<A2Verdict, AnalysisError> {
    if on_plane.point_count() != ON_PLANE_POINTS || !on_plane.is_reduced() {
        return Ok(A2Verdict {
            status: Verdict::Inconclusive,
            reason: Some("requires ten reduced singular points on the plane".into()),
            bad_line_count: None,
            witness: None,
        });
    }
    Ok(match lines_through_four(on_plane, rng, deadline)? {
        LineSearch::Unavailable(reason) => A2Verdict { status: Verdict::Inconclusive, reason: Some(reason), bad_line_count: None, witness: None },
        LineSearch::Infinite(dim) => A2Verdict {
            status: Verdict::Fails,
            reason: Some(format!("a {dim}-dimensional family of lines meets four points")),
            bad_line_count: None,
            witness: None,
        },
        LineSearch::Lines { count: 0, .. } => A2Verdict { status: Verdict::Holds, reason: None, bad_line_count: Some(0), witness: None },
        LineSearch::Lines { count, orbits } => {
            let best = orbits.iter().min_by_key(|o| o.size).expect("nonempty");
            A2Verdict {
                status: Verdict::Fails,
                reason: Some("a line contains four singular points".into()),
                bad_line_count: Some(count),
                witness: Some(line_witness(d, best)?),
            }
        }
    })
}

/// Restrict the 4×4 minors of ℭ to a line and take their gcd.
pub fn line_witness(d: &DerivedMatrices<PrimeField>, line: &PointOrbit) -> Result<LineWitness, AnalysisError> {
    let k = &line.field;
    let coeffs = normalize_projective(k, &line.coords);
    let i0 = coeffs.iter().position(|c| !k.is_zero(c)).expect("nonzero line");
    let params: Vec<usize> = (0..3).filter(|&i| i != i0).collect();
    let names = d.plane_ring.names();
    let variables = [names[params[0]].clone(), names[params[1]].clone()];

    let ring = PolyRing::new(k.clone(), &["s", "t"], MonomialOrder::DegRevLex)?;
    let (s, t) = (ring.var(0), ring.var(1));
    let mut images = vec![ring.zero(); 3];
    images[params[0]] = s.clone();
    images[params[1]] = t.clone();
    // the leading coefficient is 1 after normalization
    images[i0] = (&s.scale(&coeffs[params[0]]) + &t.scale(&coeffs[params[1]])).neg();
    let lift_ring = PolyRing::with_names(k.clone(), names.to_vec(), MonomialOrder::DegRevLex)?;
    let minors = d.c.minors(4)?;
    let mut gcd: Option<(Vec<Vec<u64>>, usize)> = None;
    for minor in &minors {
        let lifted = minor.map_coeffs(&lift_ring, |c| k.embed(*c))?;
        let restricted = lifted.substitute(&ring, &images)?;
        let Some(deg) = restricted.total_degree() else { continue };
        // dehomogenize at t = 1: coefficient of s^i
        let mut uni = vec![k.zero(); deg as usize + 1];
        for (mono, c) in restricted.terms() {
            uni[mono.exponent(0) as usize] = c.clone();
        }
        let uni = up::normalize(k, uni);
        let t_order = deg as usize - up::degree(&uni).expect("nonzero form");
        gcd = Some(match gcd {
            None => (up::monic(k, &uni), t_order),
            Some((g, e)) => (up::gcd(k, &g, &uni), e.min(t_order)),
        });
    }
    let (g, e) = gcd.expect("some minor is nonzero on a line of the plane");
    let ds = g.len() - 1;
    // coefficients of s^(ds+e-i) t^i
    let mut form = vec![k.zero(); ds + e + 1];
    for (i, c) in g.iter().enumerate() {
        form[ds - i] = c.clone();
    }
    let form = normalize_projective(k, &form);
    let integer_form = if k.degree() == 1 {
        reconstruct_integers(k.base(), &form.iter().map(|c| c[0]).collect::<Vec<_>>())
    } else {
        None
    };
    Ok(LineWitness {
        field_degree: k.degree(),
        line: coeffs.iter().map(|c| k.format_elem(c)).collect(),
        variables,
        restricted_form: form.iter().map(|c| k.format_elem(c)).collect(),
        integer_form,
        line_elems: coeffs,
        form_elems: form,
    })
}

/// Scale so the first nonzero entry is 1.
fn normalize_projective(k: &ExtensionField, v: &[Vec<u64>]) -> Vec<Vec<u64>> {
    match v.iter().find(|c| !k.is_zero(c)) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = k.inv(lead).expect("nonzero");
            v.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

/// Recover a primitive integer vector proportional to `v` modulo `p`, if all
/// ratios have small numerators and denominators.
pub fn reconstruct_integers(f: &PrimeField, v: &[u64]) -> Option<Vec<i64>> {
    let p = f.modulus() as i128;
    let bound = ((p / 2) as f64).sqrt() as i128;
    let fracs: Vec<(i128, i128)> = v.iter().map(|&c| rational_reconstruction(c as i128, p, bound)).collect::<Option<_>>()?;
    let lcm = fracs.iter().fold(1i128, |acc, &(_, den)| num_integer::lcm(acc, den));
    let ints: Vec<i128> = fracs.iter().map(|&(num, den)| num * (lcm / den)).collect();
    let content = ints.iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
    if content == 0 {
        return None;
    }
    // first nonzero coefficient positive
    let sign = if ints.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) { -1 } else { 1 };
    ints.iter().map(|&x| i64::try_from(sign * x / content).ok()).collect()
}

/// `a = num / den mod p` with `|num| <= bound`, `0 < den <= bound`.
fn rational_reconstruction(a: i128, p: i128, bound: i128) -> Option<(i128, i128)> {
    let (mut r0, mut r1) = (p, a.rem_euclid(p));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    (num_integer::gcd(num, den) == 1).then_some((num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A3Verdict {
    pub status: Verdict,
    /// Points of the singular locus of the quintic; `None` if positive-dimensional.
    pub count: Option<usize>,
    pub length: Option<usize>,
    pub dimension: i64,
}

/// The singular locus of the quintic is the Bordiga surface intersected with
/// the rank ≤ 2 locus of 𝔄; it must be 46 reduced points.
pub fn check_a3<F: Field, R: Rng + ?Sized>(d: &DerivedMatrices<F>, rng: &mut R, deadline: &Deadline) -> Result<(A3Verdict, Option<ZeroDimScheme<F>>), AnalysisError> {
    let mut gens = d.bordiga_cubics();
    gens.extend(d.big_a.minors(3)?);
    let ideal = Ideal::new(&d.low_ring, gens)?;
    match zero_dim_analyze_projective(&ideal, rng, deadline) {
        Ok(s) => {
            let holds = s.point_count() == QUINTIC_NODES && s.is_reduced();
            let verdict = A3Verdict {
                status: if holds { Verdict::Holds } else { Verdict::Fails },
                count: Some(s.point_count()),
                length: Some(s.length()),
                dimension: if s.point_count() == 0 { -1 } else { 0 },
            };
            Ok((verdict, Some(s)))
        }
        Err(GroebnerError::PositiveDimensional(dim)) => {
            Ok((A3Verdict { status: Verdict::Fails, count: None, length: None, dimension: dim }, None))
        }
        Err(e) => Err(e.into()),
    }
}
