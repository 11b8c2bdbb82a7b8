use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{subsets, FieldMatrix, MatrixError};
use crate::exactnum::Field;
use crate::multipoly::{Poly, PolyError, PolyRing};

/// A dense row-major matrix of polynomials over one ring.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, rows: usize, cols: usize, entries: Vec<Poly<F>>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyDimension { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| !Arc::ptr_eq(e.ring(), ring) && **e.ring() != **ring) {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(Self { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_fn(ring: &Arc<PolyRing<F>>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<F>) -> Result<Self, MatrixError> {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(ring, rows, cols, entries)
    }

    /// `Σ vars[k] · mats[k]` for constant matrices of equal shape.
    pub fn linear_combination(ring: &Arc<PolyRing<F>>, mats: &[FieldMatrix<F>], vars: &[usize]) -> Result<Self, MatrixError> {
        let first = mats.first().ok_or(MatrixError::EmptyDimension { rows: 0, cols: 0 })?;
        let (rows, cols) = (first.rows(), first.cols());
        if mats.len() != vars.len() {
            return Err(PolyError::ArityMismatch { expected: mats.len(), got: vars.len() }.into());
        }
        if let Some(m) = mats.iter().find(|m| (m.rows(), m.cols()) != (rows, cols)) {
            return Err(MatrixError::DimensionMismatch { left: (rows, cols), right: (m.rows(), m.cols()) });
        }
        if let Some(&v) = vars.iter().find(|&&v| v >= ring.nvars()) {
            return Err(PolyError::VariableOutOfRange { index: v, nvars: ring.nvars() }.into());
        }
        Self::from_fn(ring, rows, cols, |i, j| {
            let terms = mats
                .iter()
                .zip(vars)
                .map(|(m, &v)| (crate::multipoly::Monomial::var(v), m.get(i, j).clone()))
                .collect();
            Poly::from_terms(ring, terms)
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.rows * self.cols).map(|k| self.get(k % self.rows, k / self.rows).clone()).collect();
        Self { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        Self { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self { ring: self.ring.clone(), rows: self.rows, cols: other.cols, entries })
    }

    pub fn mul_vec(&self, v: &[Poly<F>]) -> Result<Vec<Poly<F>>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(self.ring.zero(), |acc, (a, b)| acc.checked_add(&a.checked_mul(b)?))
                    .map_err(MatrixError::from)
            })
            .collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<FieldMatrix<F>, MatrixError> {
        let values = self.entries.iter().map(|e| e.evaluate(point)).collect::<Result<Vec<_>, _>>()?;
        FieldMatrix::new(self.ring.field().clone(), self.rows, self.cols, values)
    }

    /// Evaluate at a point over another field reached through `embed`.
    pub fn evaluate_in<G: Field>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem + Copy, point: &[G::Elem]) -> Result<FieldMatrix<G>, MatrixError> {
        let values = self.entries.iter().map(|e| e.evaluate_in(target, embed, point)).collect::<Result<Vec<_>, _>>()?;
        FieldMatrix::new(target.clone(), self.rows, self.cols, values)
    }

    /// Apply a ring map entrywise.
    pub fn map<G: Field>(&self, target: &Arc<PolyRing<G>>, f: impl Fn(&Poly<F>) -> Result<Poly<G>, PolyError>) -> Result<PolyMatrix<G>, MatrixError> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::new(target, self.rows, self.cols, entries)
    }

    fn max_entry_degree(&self) -> u32 {
        self.entries.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Exact determinant. Fraction-free Bareiss elimination when every entry
    /// has degree at most one, memoized Laplace expansion otherwise.
    pub fn det(&self) -> Result<Poly<F>, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.max_entry_degree() <= 1 {
            Ok(self.det_bareiss())
        } else {
            Ok(self.det_cofactor())
        }
    }

    pub(crate) fn det_bareiss(&self) -> Poly<F> {
        let n = self.rows;
        let mut m: Vec<Vec<Poly<F>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = self.ring.one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return self.ring.zero();
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            if k + 1 == n {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
                }
                m[i][k] = self.ring.zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate { -d } else { d }
    }

    pub(crate) fn det_cofactor(&self) -> Poly<F> {
        let n = self.rows;
        let mut memo: HashMap<u32, Poly<F>> = HashMap::new();
        self.cofactor_rec(0, ((1u64 << n) - 1) as u32, &mut memo)
    }

    // Determinant of rows `row..n` against the column set `mask`.
    fn cofactor_rec(&self, row: usize, mask: u32, memo: &mut HashMap<u32, Poly<F>>) -> Poly<F> {
        if mask == 0 {
            return self.ring.one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = self.ring.zero();
        let mut sign_positive = true;
        for j in (0..self.cols).filter(|j| mask & (1 << j) != 0) {
            let a = self.get(row, j);
            if !a.is_zero() {
                let sub = self.cofactor_rec(row + 1, mask & !(1 << j), memo);
                let term = a * &sub;
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `k×k` minors, row subsets outer and column subsets inner, both in
    /// lexicographic order.
    pub fn minors(&self, k: usize) -> Result<Vec<Poly<F>>, MatrixError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(MatrixError::MinorTooLarge { k, rows: self.rows, cols: self.cols });
        }
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for r in &rs {
            for c in &cs {
                out.push(self.select(r, c).det()?);
            }
        }
        Ok(out)
    }

    /// For an `n×(n+1)` matrix, the unsigned maximal minors `[M_0, ..., M_n]`
    /// where `M_i` deletes column `i`.
    pub fn deleted_column_minors(&self) -> Result<Vec<Poly<F>>, MatrixError> {
        if self.cols != self.rows + 1 {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (self.rows, self.rows + 1) });
        }
        let all_rows: Vec<usize> = (0..self.rows).collect();
        (0..self.cols)
            .map(|i| {
                let cols: Vec<usize> = (0..self.cols).filter(|&c| c != i).collect();
                self.select(&all_rows, &cols).det()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, RationalField};
    use crate::multipoly::MonomialOrder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> Arc<PolyRing<PrimeField>> {
        PolyRing::indexed(PrimeField::new(1_000_000_007).unwrap(), "y", 0, n, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn diagonal_determinant() {
        let r = PolyRing::new(RationalField, &["x", "y", "z"], MonomialOrder::DegRevLex).unwrap();
        let zero = r.zero();
        let m = PolyMatrix::from_fn(&r, 3, 3, |i, j| if i == j { r.var(i) } else { zero.clone() }).unwrap();
        assert_eq!(m.det().unwrap(), r.parse("x*y*z").unwrap());
    }

    #[test]
    fn two_by_two_minors() {
        let r = PolyRing::new(RationalField, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let m = PolyMatrix::new(&r, 2, 2, vec![x.clone(), y.clone(), y, x]).unwrap();
        assert_eq!(m.minors(2).unwrap(), vec![r.parse("x^2 - y^2").unwrap()]);
        assert!(m.minors(3).is_err());
    }

    #[test]
    fn deleted_column_minors_follow_column_index() {
        let r = PolyRing::new(RationalField, &["a", "b"], MonomialOrder::DegRevLex).unwrap();
        let (a, b) = (r.var(0), r.var(1));
        let one = r.one();
        let zero = r.zero();
        // [[1, 0, a], [0, 1, b]]
        let m = PolyMatrix::new(&r, 2, 3, vec![one.clone(), zero.clone(), a.clone(), zero, one, b.clone()]).unwrap();
        let d = m.deleted_column_minors().unwrap();
        assert_eq!(d, vec![-a.clone(), b, r.one()]);
        let lex = m.minors(2).unwrap();
        assert_eq!(lex, vec![d[2].clone(), d[1].clone(), d[0].clone()]);
    }

    #[test]
    fn strategies_agree_with_numeric_determinant() {
        let r = ring(4);
        let f = r.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let mats: Vec<FieldMatrix<PrimeField>> =
                (0..4).map(|_| FieldMatrix::from_fn(f.clone(), n, n, |_, _| f.from_u64(rng.gen_range(0..7)))).collect();
            let m = PolyMatrix::linear_combination(&r, &mats, &[0, 1, 2, 3]).unwrap();
            let bareiss = m.det_bareiss();
            assert_eq!(bareiss, m.det_cofactor());
            if !bareiss.is_zero() {
                assert_eq!(bareiss.homogeneous_degree(), Some(n as u32));
            }
            for _ in 0..50 {
                let p: Vec<u64> = (0..4).map(|_| f.from_u64(rng.gen())).collect();
                assert_eq!(bareiss.evaluate(&p).unwrap(), m.evaluate(&p).unwrap().det().unwrap());
            }
        }
    }

    #[test]
    fn mixed_degree_uses_cofactor() {
        let r = ring(2);
        let m = PolyMatrix::new(&r, 2, 2, vec![r.parse("y0^2").unwrap(), r.var(1), r.var(1), r.var(0)]).unwrap();
        assert_eq!(m.det().unwrap(), r.parse("y0^3 - y1^2").unwrap());
    }

    #[test]
    fn transpose_and_product() {
        let r = ring(2);
        let m = PolyMatrix::new(&r, 1, 2, vec![r.var(0), r.var(1)]).unwrap();
        let g = m.mul(&m.transpose()).unwrap();
        assert_eq!(g.get(0, 0), &r.parse("y0^2 + y1^2").unwrap());
        assert_eq!(m.transpose().mul(&m).unwrap().det().unwrap(), r.zero());
    }
}
