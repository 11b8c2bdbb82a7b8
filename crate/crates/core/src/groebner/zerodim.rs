use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::buchberger::{buchberger, GroebnerBasis, Ideal};
use super::univariate as up;
use super::{Deadline, GroebnerError};
use crate::exactnum::{ExtensionField, Field, PrimeField};
use crate::multipoly::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::polymatrix::FieldMatrix;

const SHAPE_ATTEMPTS: usize = 5;

/// Random data for a projective scheme: the chart `x_{n-1} = 1` is taken
/// after the substitution `x_{n-1} -> x_{n-1} + Σ shift_i x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart<F: Field> {
    pub shift: Vec<F::Elem>,
}

/// Shape-lemma description of the reduced scheme in (chart) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape<F: Field> {
    /// Coefficients of the separating linear form `u = Σ form_i x_i`.
    pub form: Vec<F::Elem>,
    /// Squarefree monic eliminant of `u`; its degree is the point count.
    pub eliminant: Vec<F::Elem>,
    /// `x_i = coords[i](u)` on the reduced scheme, each of degree below the
    /// eliminant's.
    pub coords: Vec<Vec<F::Elem>>,
    /// Squarefree decomposition `(g_k, k)` of the characteristic polynomial
    /// of `u`: the roots of `g_k` are the values of `u` at points of local
    /// length `k`.
    pub length_factors: Vec<(Vec<F::Elem>, usize)>,
}

/// A zero-dimensional scheme: lengths, point count and multiplicities.
#[derive(Debug, Clone)]
pub struct ZeroDimScheme<F: Field> {
    ring: Arc<PolyRing<F>>,
    gb: GroebnerBasis<F>,
    length: usize,
    point_count: usize,
    profile: Option<Vec<(usize, usize)>>,
    shape: Option<Shape<F>>,
    chart: Option<Chart<F>>,
}

impl<F: Field> ZeroDimScheme<F> {
    /// Ring of the analyzed ideal (before dehomogenization).
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    /// Basis of the affine ideal (the chart ideal for projective input).
    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    /// Dimension of the quotient ring.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of points over the algebraic closure.
    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// `(local length, number of points)` pairs in increasing local length;
    /// `None` when no separating form was found.
    pub fn profile(&self) -> Option<&[(usize, usize)]> {
        self.profile.as_deref()
    }

    pub fn is_reduced(&self) -> bool {
        self.length == self.point_count
    }

    pub fn shape(&self) -> Option<&Shape<F>> {
        self.shape.as_ref()
    }

    pub fn chart(&self) -> Option<&Chart<F>> {
        self.chart.as_ref()
    }

    fn empty(ring: &Arc<PolyRing<F>>, gb: GroebnerBasis<F>) -> Self {
        Self {
            ring: ring.clone(),
            gb,
            length: 0,
            point_count: 0,
            profile: Some(Vec::new()),
            shape: None,
            chart: None,
        }
    }
}

/// A Galois orbit of points defined over `F_p[t]/(f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointOrbit {
    pub field: ExtensionField,
    /// One point of the orbit, all coordinates of the original ring, with
    /// values in `field`; the other points are its conjugates.
    pub coords: Vec<Vec<u64>>,
    /// Number of points in the orbit (the degree of `field`).
    pub size: usize,
    pub local_length: usize,
}

impl ZeroDimScheme<PrimeField> {
    /// Split the points into Galois orbits over the prime field. `None` when
    /// the shape data is unavailable.
    pub fn orbits<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<PointOrbit>> {
        let shape = self.shape.as_ref()?;
        let base = self.ring.field().clone();
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for (f, _) in up::factor(&base, &shape.eliminant, rng) {
            let field = ExtensionField::new(base.clone(), f.clone()).expect("irreducible monic factor");
            let theta = field.generator();
            let embed = |c: &u64| field.embed(*c);
            let chart_coords: Vec<Vec<u64>> = shape.coords.iter().map(|h| up::eval_in::<PrimeField, _>(&field, h, embed, &theta)).collect();
            let coords = match &self.chart {
                None => chart_coords,
                Some(chart) => {
                    let mut last = field.one();
                    for (c, s) in chart_coords.iter().zip(&chart.shift) {
                        last = field.add(&last, &field.mul(c, &field.embed(*s)));
                    }
                    let mut all = chart_coords;
                    all.push(last);
                    debug_assert_eq!(all.len(), n);
                    all
                }
            };
            let local_length = shape
                .length_factors
                .iter()
                .find(|(g, _)| up::rem(&base, g, &f).expect("nonzero").is_empty())
                .map(|(_, k)| *k)
                .expect("every root of the eliminant is a root of the characteristic polynomial");
            out.push(PointOrbit { size: f.len() - 1, field, coords, local_length });
        }
        Some(out)
    }
}

/// Analyze a zero-dimensional affine ideal.
pub fn zero_dim_analyze<F: Field, R: Rng + ?Sized>(ideal: &Ideal<F>, rng: &mut R, deadline: &Deadline) -> Result<ZeroDimScheme<F>, GroebnerError> {
    let gb = buchberger(ideal, MonomialOrder::DegRevLex, deadline)?;
    if gb.is_unit() {
        return Ok(ZeroDimScheme::empty(ideal.ring(), gb));
    }
    let dim = gb.dimension();
    if dim > 0 {
        return Err(GroebnerError::PositiveDimensional(dim));
    }
    analyze_basis(ideal.ring(), gb, None, rng, deadline)
}

/// Analyze the projective scheme of a homogeneous ideal whose projective
/// dimension is at most zero. The whole scheme is moved into the chart
/// `x_{n-1} = 1` by a random change of the last coordinate.
pub fn zero_dim_analyze_projective<F: Field, R: Rng + ?Sized>(
    ideal: &Ideal<F>,
    rng: &mut R,
    deadline: &Deadline,
) -> Result<ZeroDimScheme<F>, GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    if n < 2 {
        return Err(GroebnerError::TooFewVariables { needed: 2, nvars: n });
    }
    let field = ring.field().clone();
    let grevlex = ring.with_order(MonomialOrder::DegRevLex);
    let ideal = ideal.with_order(MonomialOrder::DegRevLex);
    let aff = PolyRing::with_names(field.clone(), ring.names()[..n - 1].to_vec(), MonomialOrder::DegRevLex)?;
    for _ in 0..SHAPE_ATTEMPTS {
        let shift: Vec<F::Elem> = (0..n - 1).map(|_| field.sample(rng)).collect();
        let mut images = grevlex.vars();
        let mut last = grevlex.var(n - 1);
        for (i, s) in shift.iter().enumerate() {
            last = &last + &grevlex.var(i).scale(s);
        }
        images[n - 1] = last;
        let moved: Vec<Poly<F>> = ideal.gens().iter().map(|g| g.substitute(&grevlex, &images)).collect::<Result<_, _>>()?;
        let gb = buchberger(&Ideal::new(&grevlex, moved)?, MonomialOrder::DegRevLex, deadline)?;
        let dim = gb.projective_dimension();
        if dim > 0 {
            return Err(GroebnerError::PositiveDimensional(dim));
        }
        if dim < 0 {
            let empty = GroebnerBasis::interreduce(&aff, vec![aff.one()], deadline)?;
            let mut s = ZeroDimScheme::empty(&ring, empty);
            s.chart = Some(Chart { shift });
            return Ok(s);
        }
        // no point on x_{n-1} = 0 iff in(I) + <x_{n-1}> is primary to the
        // irrelevant ideal
        let lms = gb.leading_monomials();
        let at_infinity = (0..n - 1).any(|v| !lms.iter().any(|m| m.support().all(|s| s == v) && m.exponent(v) > 0));
        if at_infinity {
            continue;
        }
        let polys = gb.basis().iter().map(|g| g.dehomogenize_last(&aff)).collect::<Result<Vec<_>, _>>()?;
        let chart_gb = GroebnerBasis::interreduce(&aff, polys, deadline)?;
        return analyze_basis(&ring, chart_gb, Some(Chart { shift }), rng, deadline);
    }
    Err(GroebnerError::GenericityFailure(SHAPE_ATTEMPTS))
}

fn analyze_basis<F: Field, R: Rng + ?Sized>(
    ring: &Arc<PolyRing<F>>,
    gb: GroebnerBasis<F>,
    chart: Option<Chart<F>>,
    rng: &mut R,
    deadline: &Deadline,
) -> Result<ZeroDimScheme<F>, GroebnerError> {
    let field = gb.ring().field().clone();
    let std = gb.standard_monomials().ok_or(GroebnerError::PositiveDimensional(gb.dimension()))?;
    let length = std.len();
    if length == 0 {
        let mut s = ZeroDimScheme::empty(ring, gb);
        s.chart = chart;
        return Ok(s);
    }
    let mats = multiplication_matrices(&gb, &std, deadline)?;
    let characteristic = field.characteristic();
    let (rad_mats, one) = if characteristic == 0u32.into() || characteristic > length.into() {
        reduced_quotient(&field, &std, &mats, deadline)?
    } else {
        let radical = seidenberg_radical(&gb, &std, &mats, deadline)?;
        let rad_std = radical.standard_monomials().expect("radical of a zero-dimensional ideal");
        let rad_mats = multiplication_matrices(&radical, &rad_std, deadline)?;
        (rad_mats, unit_vector(&field, rad_std.len(), 0))
    };
    let point_count = one.len();

    let mut profile = None;
    let mut shape = None;
    for _ in 0..SHAPE_ATTEMPTS {
        deadline.check()?;
        let form: Vec<F::Elem> = (0..mats.len()).map(|_| field.sample(rng)).collect();
        let mu = combine(&field, &mats, &form);
        let chi = mu.charpoly()?;
        let length_factors = up::squarefree_decomposition(&field, &chi);
        let distinct: usize = length_factors.iter().map(|(g, _)| g.len() - 1).sum();
        if distinct != point_count {
            continue;
        }
        let mu_rad = combine(&field, &rad_mats, &form);
        let (eliminant, powers) = krylov(&mu_rad, &one);
        if eliminant.len() != point_count + 1 {
            continue;
        }
        // columns 1, u, ..., u^(R-1) of the radical quotient
        let vander = FieldMatrix::from_fn(field.clone(), point_count, point_count, |i, j| powers[j][i].clone());
        let mut coords = Vec::with_capacity(rad_mats.len());
        for m in &rad_mats {
            let xv = m.mul_vec(&one)?;
            let h = vander.solve(&xv)?.expect("powers of a separating form span the reduced quotient");
            coords.push(up::normalize(&field, h));
        }
        profile = Some(length_factors.iter().map(|(g, k)| (*k, g.len() - 1)).collect());
        shape = Some(Shape { form, eliminant, coords, length_factors });
        break;
    }
    if profile.is_none() {
        log::warn!("no separating linear form found after {SHAPE_ATTEMPTS} attempts; multiplicity profile unavailable");
    }
    Ok(ZeroDimScheme { ring: ring.clone(), gb, length, point_count, profile, shape, chart })
}

/// Multiplication matrices of the reduced quotient `A / nil(A)` and the
/// image of `1`, computed from the trace form `(a, b) -> tr(M_ab)`, whose
/// kernel is the nilradical when the characteristic is zero or exceeds
/// `dim A`.
fn reduced_quotient<F: Field>(
    field: &F,
    std: &[Monomial],
    mats: &[FieldMatrix<F>],
    deadline: &Deadline,
) -> Result<(Vec<FieldMatrix<F>>, Vec<F::Elem>), GroebnerError> {
    let n = std.len();
    let index: HashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // std is an order ideal in increasing degree, so parents come first
    let mut mb: Vec<FieldMatrix<F>> = Vec::with_capacity(n);
    for b in std {
        deadline.check()?;
        let m = match b.support().next() {
            None => FieldMatrix::identity(field.clone(), n),
            Some(v) => {
                let parent = Monomial::var(v).quotient_of(b).expect("variable divides its support");
                mats[v].mul(&mb[index[&parent]])?
            }
        };
        mb.push(m);
    }
    let tau: Vec<F::Elem> = mb
        .iter()
        .map(|m| (0..n).fold(field.zero(), |acc, i| field.add(&acc, m.get(i, i))))
        .collect();
    let trace_form = FieldMatrix::from_fn(field.clone(), n, n, |i, j| {
        let mut acc = field.zero();
        for (k, t) in tau.iter().enumerate() {
            let e = mb[i].get(k, j);
            if !field.is_zero(e) {
                acc = field.add(&acc, &field.mul(t, e));
            }
        }
        acc
    });
    // rows of the echelon form span the annihilator of the nilradical, and
    // their pivot columns give coordinates on the reduced quotient
    let (echelon, pivots) = trace_form.rref();
    let r = pivots.len();
    let proj = echelon.submatrix(0..r, 0..n);
    let rows: Vec<usize> = (0..r).collect();
    let reduced = mats.iter().map(|m| Ok(proj.mul(m)?.select(&rows, &pivots))).collect::<Result<Vec<_>, GroebnerError>>()?;
    Ok((reduced, proj.column(0)))
}

/// Seidenberg's radical: adjoin the squarefree parts of the eliminants of
/// the variables until nothing changes.
fn seidenberg_radical<F: Field>(
    gb: &GroebnerBasis<F>,
    std: &[Monomial],
    mats: &[FieldMatrix<F>],
    deadline: &Deadline,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let field = gb.ring().field().clone();
    let mut radical = gb.clone();
    let mut rad_std = std.to_vec();
    let mut rad_mats = mats.to_vec();
    loop {
        let mut extra = Vec::new();
        for (v, m) in rad_mats.iter().enumerate() {
            deadline.check()?;
            let e = unit_vector(&field, rad_std.len(), 0);
            let (minpoly, _) = krylov(m, &e);
            let sq = up::squarefree_part(&field, &minpoly);
            if sq.len() < minpoly.len() {
                extra.push(univariate_in_var(radical.ring(), v, &sq));
            }
        }
        if extra.is_empty() {
            return Ok(radical);
        }
        let mut gens = radical.basis().to_vec();
        gens.extend(extra);
        radical = buchberger(&Ideal::new(radical.ring(), gens)?, MonomialOrder::DegRevLex, deadline)?;
        rad_std = radical.standard_monomials().expect("radical of a zero-dimensional ideal");
        rad_mats = multiplication_matrices(&radical, &rad_std, deadline)?;
    }
}

/// Reduced basis of the radical of a zero-dimensional affine ideal.
pub fn zero_dim_radical<F: Field>(ideal: &Ideal<F>, deadline: &Deadline) -> Result<GroebnerBasis<F>, GroebnerError> {
    let gb = buchberger(ideal, MonomialOrder::DegRevLex, deadline)?;
    if gb.is_unit() {
        return Ok(gb);
    }
    let std = gb.standard_monomials().ok_or(GroebnerError::PositiveDimensional(gb.dimension()))?;
    let mats = multiplication_matrices(&gb, &std, deadline)?;
    seidenberg_radical(&gb, &std, &mats, deadline)
}

fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn univariate_in_var<F: Field>(ring: &Arc<PolyRing<F>>, v: usize, coeffs: &[F::Elem]) -> Poly<F> {
    let terms = coeffs.iter().enumerate().map(|(k, c)| (Monomial::var_pow(v, k as u32), c.clone())).collect();
    Poly::from_terms(ring, terms)
}

fn combine<F: Field>(field: &F, mats: &[FieldMatrix<F>], coeffs: &[F::Elem]) -> FieldMatrix<F> {
    let n = mats[0].rows();
    let mut acc = FieldMatrix::zeros(field.clone(), n, n);
    for (m, c) in mats.iter().zip(coeffs) {
        acc = acc.add(&m.scale(c)).expect("equal shapes");
    }
    acc
}

/// Matrices of multiplication by each variable on the quotient, in the basis
/// of standard monomials (`std[0]` must be `1`).
fn multiplication_matrices<F: Field>(gb: &GroebnerBasis<F>, std: &[Monomial], deadline: &Deadline) -> Result<Vec<FieldMatrix<F>>, GroebnerError> {
    let ring = gb.ring();
    let field = ring.field();
    let index: HashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    debug_assert!(std[0].is_one());
    let n = std.len();
    let mut out = Vec::with_capacity(ring.nvars());
    for v in 0..ring.nvars() {
        let mut m = FieldMatrix::zeros(field.clone(), n, n);
        for (j, b) in std.iter().enumerate() {
            let prod = b.mul(&Monomial::var(v));
            if let Some(&i) = index.get(&prod) {
                m.set(i, j, field.one());
                continue;
            }
            let nf = gb.normal_form_with_deadline(&Poly::monomial(ring, field.one(), prod), deadline)?;
            for (mono, c) in nf.terms() {
                m.set(index[mono], j, c.clone());
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Minimal polynomial of `m` relative to `e` (monic, constant term first)
/// and the Krylov vectors `e, m e, ..., m^(d-1) e`.
fn krylov<F: Field>(m: &FieldMatrix<F>, e: &[F::Elem]) -> (Vec<F::Elem>, Vec<Vec<F::Elem>>) {
    let field = m.field();
    let n = e.len();
    let mut powers: Vec<Vec<F::Elem>> = Vec::new();
    // reduced vectors with their pivot and expression in the Krylov basis
    let mut reduced: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
    let mut v = e.to_vec();
    loop {
        let k = powers.len();
        let mut w = v.clone();
        let mut coef = vec![field.zero(); k + 1];
        coef[k] = field.one();
        for (piv, r, rc) in &reduced {
            if field.is_zero(&w[*piv]) {
                continue;
            }
            let factor = w[*piv].clone();
            for i in 0..n {
                w[i] = field.sub_mul(&w[i], &factor, &r[i]);
            }
            for (i, c) in rc.iter().enumerate() {
                coef[i] = field.sub_mul(&coef[i], &factor, c);
            }
        }
        match (0..n).find(|&i| !field.is_zero(&w[i])) {
            None => return (coef, powers),
            Some(piv) => {
                let inv = field.inv(&w[piv]).expect("nonzero pivot");
                let w: Vec<F::Elem> = w.iter().map(|x| field.mul(x, &inv)).collect();
                let coef: Vec<F::Elem> = coef.iter().map(|x| field.mul(x, &inv)).collect();
                reduced.push((piv, w, coef));
            }
        }
        let next = m.mul_vec(&v).expect("square matrix");
        powers.push(std::mem::replace(&mut v, next));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::RationalField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn analyze<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[&str]) -> ZeroDimScheme<F> {
        let ideal = Ideal::new(ring, gens.iter().map(|g| ring.parse(g).unwrap()).collect()).unwrap();
        zero_dim_analyze(&ideal, &mut ChaCha8Rng::seed_from_u64(1), &Deadline::never()).unwrap()
    }

    #[test]
    fn double_point() {
        let r = PolyRing::new(RationalField, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let s = analyze(&r, &["x^2", "y"]);
        assert_eq!((s.length(), s.point_count()), (2, 1));
        assert_eq!(s.profile().unwrap(), &[(2, 1)]);
    }

    #[test]
    fn two_simple_points() {
        let f = PrimeField::new(1_000_003).unwrap();
        let r = PolyRing::new(f, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let s = analyze(&r, &["x^2 - 1", "y"]);
        assert_eq!((s.length(), s.point_count()), (2, 2));
        assert_eq!(s.profile().unwrap(), &[(1, 2)]);
    }

    #[test]
    fn mixed_profile_and_orbits() {
        // (x^2+1)^1 (x-2)^2 on the line y = x, over F_p with p = 3 mod 4
        let f = PrimeField::new(1_000_003).unwrap();
        let r = PolyRing::new(f.clone(), &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let s = analyze(&r, &["(x^2 + 1)*(x - 2)^2", "y - x"]);
        assert_eq!((s.length(), s.point_count()), (4, 3));
        assert_eq!(s.profile().unwrap(), &[(1, 2), (2, 1)]);
        let orbits = s.orbits(&mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(orbits.len(), 2);
        let rational = orbits.iter().find(|o| o.size == 1).unwrap();
        assert_eq!(rational.local_length, 2);
        assert_eq!(rational.field.as_base(&rational.coords[0]), Some(2));
        let conj = orbits.iter().find(|o| o.size == 2).unwrap();
        assert_eq!(conj.local_length, 1);
        let k = &conj.field;
        let x = &conj.coords[0];
        assert!(k.is_zero(&k.add(&k.mul(x, x), &k.one())));
        assert_eq!(&conj.coords[1], x);
    }

    #[test]
    fn projective_points() {
        // (0:1:0) doubled and (1:0:0) simple
        let f = PrimeField::new(1_000_003).unwrap();
        let r = PolyRing::new(f.clone(), &["a", "b", "c"], MonomialOrder::DegRevLex).unwrap();
        let ideal = Ideal::new(&r, vec![r.parse("a^2*b").unwrap(), r.parse("c").unwrap()]).unwrap();
        let s = zero_dim_analyze_projective(&ideal, &mut ChaCha8Rng::seed_from_u64(2), &Deadline::never()).unwrap();
        assert_eq!((s.length(), s.point_count()), (3, 2));
        assert_eq!(s.profile().unwrap(), &[(1, 1), (2, 1)]);
        let orbits = s.orbits(&mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        for o in &orbits {
            let k = &o.field;
            for g in ideal.gens() {
                let v = g.evaluate_in(k, |c| k.embed(*c), &o.coords).unwrap();
                assert!(k.is_zero(&v));
            }
            let a = k.as_base(&o.coords[0]).unwrap();
            let expected_length = if a == 0 { 2 } else { 1 };
            assert_eq!(o.local_length, expected_length);
        }
    }

    #[test]
    fn positive_dimension_rejected() {
        let r = PolyRing::new(RationalField, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let ideal = Ideal::new(&r, vec![r.parse("x*y").unwrap()]).unwrap();
        let err = zero_dim_analyze(&ideal, &mut ChaCha8Rng::seed_from_u64(1), &Deadline::never()).unwrap_err();
        assert_eq!(err, GroebnerError::PositiveDimensional(1));
    }
}
