use std::sync::Arc;

use super::WebError;
use crate::exactnum::Field;
use crate::multipoly::{MonomialOrder, Poly, PolyRing};
use crate::polymatrix::{BlockRegion, FieldMatrix, PolyMatrix};

/// Four 8×8 integer matrices, row-major.
pub type IntegerWeb = [[[i64; 8]; 8]; 4];

/// A web of four quadrics in P7, each containing the plane `x0 = ... = x4 = 0`.
#[derive(Debug, Clone)]
pub struct Web<F: Field> {
    field: F,
    integers: IntegerWeb,
    mats: Vec<FieldMatrix<F>>,
}

/// Check symmetry, the zero lower-right block and linear independence over
/// `field`, then build the web.
pub fn validate_web<F: Field>(field: &F, matrices: &IntegerWeb) -> Result<Web<F>, WebError> {
    for (k, m) in matrices.iter().enumerate() {
        for i in 0..8 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(WebError::NotSymmetric { matrix: k, row: i, col: j });
                }
            }
        }
        for i in 5..8 {
            for j in 5..8 {
                if m[i][j] != 0 {
                    return Err(WebError::PlaneNotContained { matrix: k, row: i, col: j });
                }
            }
        }
    }
    let mats: Vec<FieldMatrix<F>> = matrices
        .iter()
        .map(|m| FieldMatrix::from_fn(field.clone(), 8, 8, |i, j| field.from_i64(m[i][j])))
        .collect();
    // Upper triangles as rows of a 4×36 matrix.
    let stacked = FieldMatrix::from_fn(field.clone(), 4, 36, |k, t| {
        let (i, j) = upper_index(t);
        mats[k].get(i, j).clone()
    });
    if stacked.rank() < 4 {
        return Err(WebError::LinearlyDependent);
    }
    Ok(Web { field: field.clone(), integers: *matrices, mats })
}

/// A random integer web containing the plane: symmetric entries drawn
/// uniformly from `[-bound, bound]`, lower-right 3×3 blocks zero. Not
/// validated; the four matrices may be dependent.
pub fn random_web<R: rand::Rng + ?Sized>(rng: &mut R, bound: i64) -> IntegerWeb {
    let mut w = [[[0i64; 8]; 8]; 4];
    for m in w.iter_mut() {
        for i in 0..8 {
            for j in i..8 {
                if i >= 5 {
                    continue;
                }
                let v = rng.gen_range(-bound..=bound);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
    }
    w
}

fn upper_index(t: usize) -> (usize, usize) {
    let mut t = t;
    for i in 0..8 {
        if t < 8 - i {
            return (i, i + t);
        }
        t -= 8 - i;
    }
    unreachable!("index below 36")
}

impl<F: Field> Web<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn integers(&self) -> &IntegerWeb {
        &self.integers
    }

    pub fn matrices(&self) -> &[FieldMatrix<F>] {
        &self.mats
    }

    /// `𝔮(y) = Σ yᵢ 𝔮ᵢ` at a point with coordinates in `target`.
    pub fn member_at<G: Field>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem, y: &[G::Elem]) -> FieldMatrix<G> {
        FieldMatrix::from_fn(target.clone(), 8, 8, |i, j| {
            let mut acc = target.zero();
            for (m, yk) in self.mats.iter().zip(y) {
                acc = target.add(&acc, &target.mul(&embed(m.get(i, j)), yk));
            }
            acc
        })
    }

    /// The same web over another field.
    pub fn over<G: Field>(&self, field: &G) -> Result<Web<G>, WebError> {
        validate_web(field, &self.integers)
    }

    /// The web with its members reordered: member `k` of the result is member
    /// `perm[k]` of `self`.
    pub fn permuted(&self, perm: [usize; 4]) -> Result<Web<F>, WebError> {
        let ints = [self.integers[perm[0]], self.integers[perm[1]], self.integers[perm[2]], self.integers[perm[3]]];
        validate_web(&self.field, &ints)
    }
}

/// The block matrices of a web and the polynomial matrices built from them.
///
/// Coordinates: `x` is `x0..x7` on P7, `x̲ = (x0..x4)` on P4, `(x5, x6, x7)`
/// on the plane and `y0..y3` on the web.
#[derive(Debug, Clone)]
pub struct DerivedMatrices<F: Field> {
    pub field: F,
    pub full_ring: Arc<PolyRing<F>>,
    pub low_ring: Arc<PolyRing<F>>,
    pub plane_ring: Arc<PolyRing<F>>,
    pub web_ring: Arc<PolyRing<F>>,
    /// Upper-left 5×5 blocks 𝔮̲ᵢ.
    pub q_low: Vec<FieldMatrix<F>>,
    /// Lower-left 3×5 blocks 𝔅ᵢ.
    pub b: Vec<FieldMatrix<F>>,
    /// 𝔅(y) = Σ yᵢ 𝔅ᵢ, 3×5 over `web_ring`.
    pub b_of_y: PolyMatrix<F>,
    /// ℭ(x5, x6, x7), 5×4 over `plane_ring`; column i is 𝔅ᵢᵀ (x5, x6, x7)ᵀ.
    pub c: PolyMatrix<F>,
    /// 𝔞(x̲), 3×4 over `low_ring`; column i is 𝔅ᵢ x̲.
    pub a: PolyMatrix<F>,
    /// 𝔄(x̲), 4×4 over `low_ring`: first column Q̲ᵢ, then 𝔞(x̲)ᵀ.
    pub big_a: PolyMatrix<F>,
    /// Q̲ᵢ = x̲ᵀ 𝔮̲ᵢ x̲.
    pub low_quadrics: Vec<Poly<F>>,
    /// Qᵢ = xᵀ 𝔮ᵢ x over `full_ring`.
    pub quadrics: Vec<Poly<F>>,
}

/// `vᵀ M v` for a symmetric constant matrix and linear forms `v`.
pub(crate) fn quadratic_form<F: Field>(m: &FieldMatrix<F>, v: &[Poly<F>]) -> Poly<F> {
    let ring = v[0].ring().clone();
    let field = ring.field().clone();
    let two = field.from_i64(2);
    let mut acc = ring.zero();
    for i in 0..m.rows() {
        for j in i..m.cols() {
            let c = m.get(i, j);
            if field.is_zero(c) {
                continue;
            }
            let c = if i == j { c.clone() } else { field.mul(c, &two) };
            acc = &acc + &(&v[i] * &v[j]).scale(&c);
        }
    }
    acc
}

/// `M v` for a constant matrix and polynomial vector `v`.
pub(crate) fn apply<F: Field>(m: &FieldMatrix<F>, v: &[Poly<F>]) -> Vec<Poly<F>> {
    let ring = v[0].ring().clone();
    (0..m.rows())
        .map(|i| {
            let mut acc = ring.zero();
            for (j, vj) in v.iter().enumerate() {
                acc = &acc + &vj.scale(m.get(i, j));
            }
            acc
        })
        .collect()
}

impl<F: Field> DerivedMatrices<F> {
    pub fn new(web: &Web<F>) -> Self {
        let field = web.field().clone();
        let order = MonomialOrder::DegRevLex;
        let full_ring = PolyRing::indexed(field.clone(), "x", 0, 8, order).expect("8 variables");
        let low_ring = PolyRing::indexed(field.clone(), "x", 0, 5, order).expect("5 variables");
        let plane_ring = PolyRing::indexed(field.clone(), "x", 5, 3, order).expect("3 variables");
        let web_ring = PolyRing::indexed(field.clone(), "y", 0, 4, order).expect("4 variables");
        let q_low: Vec<_> = web.matrices().iter().map(|m| m.block_extract(BlockRegion::UpperLeft5x5).expect("8×8")).collect();
        let b: Vec<_> = web.matrices().iter().map(|m| m.block_extract(BlockRegion::LowerLeft3x5).expect("8×8")).collect();
        let b_of_y = PolyMatrix::linear_combination(&web_ring, &b, &[0, 1, 2, 3]).expect("equal shapes");

        let plane_vars = plane_ring.vars();
        let c = PolyMatrix::from_fn(&plane_ring, 5, 4, |r, i| {
            let mut acc = plane_ring.zero();
            for (k, xk) in plane_vars.iter().enumerate() {
                acc = &acc + &xk.scale(b[i].get(k, r));
            }
            acc
        })
        .expect("5×4");

        let low_vars = low_ring.vars();
        let columns: Vec<Vec<Poly<F>>> = b.iter().map(|bi| apply(bi, &low_vars)).collect();
        let a = PolyMatrix::from_fn(&low_ring, 3, 4, |k, i| columns[i][k].clone()).expect("3×4");
        let low_quadrics: Vec<Poly<F>> = q_low.iter().map(|q| quadratic_form(q, &low_vars)).collect();
        let big_a = PolyMatrix::from_fn(&low_ring, 4, 4, |i, j| if j == 0 { low_quadrics[i].clone() } else { a.get(j - 1, i).clone() })
            .expect("4×4");
        let full_vars = full_ring.vars();
        let quadrics = web.matrices().iter().map(|m| quadratic_form(m, &full_vars)).collect();
        Self { field, full_ring, low_ring, plane_ring, web_ring, q_low, b, b_of_y, c, a, big_a, low_quadrics, quadrics }
    }

    /// The plane coordinates `(x5, x6, x7)` of `full_ring` as a 3-variable
    /// ring map target: `x0..x4 -> 0`.
    pub fn restrict_to_plane(&self, f: &Poly<F>) -> Poly<F> {
        let mut images = vec![self.plane_ring.zero(); 5];
        images.extend(self.plane_ring.vars());
        f.substitute(&self.plane_ring, &images).expect("8 images")
    }

    /// Check the three structural identities coefficient-wise.
    pub fn identities(&self) -> IdentityReport {
        IdentityReport {
            columns_of_a: self.check_columns_of_a(),
            kernel_relation: self.check_kernel_relation(),
            restriction: self.check_restriction(),
        }
    }

    /// 𝔞(x̲) y = 𝔅(y) x̲ in F[x0..x4, y0..y3].
    fn check_columns_of_a(&self) -> bool {
        let ring = PolyRing::with_names(
            self.field.clone(),
            (0..5).map(|i| format!("x{i}")).chain((0..4).map(|i| format!("y{i}"))).collect(),
            MonomialOrder::DegRevLex,
        )
        .expect("9 variables");
        let vars = ring.vars();
        let (xs, ys) = vars.split_at(5);
        let a = self.a.map(&ring, |p| p.substitute(&ring, xs)).expect("same shape");
        let b = self.b_of_y.map(&ring, |p| p.substitute(&ring, ys)).expect("same shape");
        a.mul_vec(ys).expect("4 columns") == b.mul_vec(xs).expect("5 columns")
    }

    /// ℭ(x5, x6, x7) y = 𝔅(y)ᵀ (x5, x6, x7)ᵀ in F[x5, x6, x7, y0..y3].
    fn check_kernel_relation(&self) -> bool {
        let ring = PolyRing::with_names(
            self.field.clone(),
            (5..8).map(|i| format!("x{i}")).chain((0..4).map(|i| format!("y{i}"))).collect(),
            MonomialOrder::DegRevLex,
        )
        .expect("7 variables");
        let vars = ring.vars();
        let (xs, ys) = vars.split_at(3);
        let c = self.c.map(&ring, |p| p.substitute(&ring, xs)).expect("same shape");
        let bt = self.b_of_y.transpose().map(&ring, |p| p.substitute(&ring, ys)).expect("same shape");
        c.mul_vec(ys).expect("4 columns") == bt.mul_vec(xs).expect("3 columns")
    }

    /// xᵀ𝔮(y)x = x̲ᵀ𝔮̲(y)x̲ + 2 (x5, x6, x7) 𝔅(y) x̲. Both sides are linear in
    /// y, so the identity holds iff it holds at each basis vector y = eᵢ,
    /// which keeps the check inside eight variables.
    fn check_restriction(&self) -> bool {
        let vars = self.full_ring.vars();
        let (low, plane) = vars.split_at(5);
        let two = self.field.from_i64(2);
        self.quadrics.iter().enumerate().all(|(i, qi)| {
            let mut rhs = quadratic_form(&self.q_low[i], low);
            for (xk, bx) in plane.iter().zip(apply(&self.b[i], low)) {
                rhs = &rhs + &(xk * &bx).scale(&two);
            }
            *qi == rhs
        })
    }

    /// det 𝔄(x̲) and the four cubics ℭ₀..ℭ₃ (minor of 𝔞 with column i deleted).
    pub fn bordiga_cubics(&self) -> Vec<Poly<F>> {
        self.a.deleted_column_minors().expect("3×4")
    }
}

/// Outcome of the coefficient-wise identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct IdentityReport {
    /// 𝔞(x̲) y = 𝔅(y) x̲.
    pub columns_of_a: bool,
    /// ℭ(x5, x6, x7) y = 𝔅(y)ᵀ (x5, x6, x7)ᵀ.
    pub kernel_relation: bool,
    /// The restriction of the web to the span of x̲ and the plane.
    pub restriction: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.columns_of_a && self.kernel_relation && self.restriction
    }
}
