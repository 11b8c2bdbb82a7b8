use std::fmt;
use std::ops::Range;

use super::{BlockRegion, MatrixError};
use crate::exactnum::Field;

/// A dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct FieldMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.format_elem(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> FieldMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyDimension { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount { expected: rows * cols, got: entries.len() });
        }
        Ok(Self { field, rows, cols, entries })
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { field, rows, cols, entries }
    }

    /// Integer rows mapped into the field; all rows must share a length.
    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(MatrixError::EntryCount { expected: ncols, got: bad.len() });
        }
        let entries = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Self::new(field, rows.len(), ncols, entries)
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Self::from_fn(field, rows, cols, |_, _| z.clone())
    }

    pub fn identity(field: F, n: usize) -> Self {
        let (z, o) = (field.zero(), field.one());
        Self::from_fn(field, n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.field.clone(), rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field.clone(), rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn block_extract(&self, region: BlockRegion) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (8, 8) {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (8, 8) });
        }
        let (r, c) = region.ranges();
        Ok(self.submatrix(r, c))
    }

    /// Rebuild a symmetric 8×8 matrix from its upper-left 5×5, lower-left
    /// 3×5 and lower-right 3×3 blocks.
    pub fn assemble_symmetric(ul: &Self, ll: &Self, lr: &Self) -> Result<Self, MatrixError> {
        for (m, want) in [(ul, (5, 5)), (ll, (3, 5)), (lr, (3, 3))] {
            if (m.rows, m.cols) != want {
                return Err(MatrixError::DimensionMismatch { left: (m.rows, m.cols), right: want });
            }
        }
        Ok(Self::from_fn(ul.field.clone(), 8, 8, |i, j| match (i < 5, j < 5) {
            (true, true) => ul.get(i, j).clone(),
            (false, true) => ll.get(i - 5, j).clone(),
            (true, false) => ll.get(j - 5, i).clone(),
            (false, false) => lr.get(i - 5, j - 5).clone(),
        }))
    }

    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> G::Elem) -> FieldMatrix<G> {
        let entries = self.entries.iter().map(f).collect();
        FieldMatrix { field: target, rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|a| self.field.mul(a, c)).collect();
        Self { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let f = &self.field;
        Ok(Self::from_fn(f.clone(), self.rows, other.cols, |i, j| {
            (0..self.cols).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(self.get(i, k), other.get(k, j))))
        }))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub_mul(m.get(i, j), &factor, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::DimensionMismatch { left: (self.rows, self.cols), right: (b.len(), 1) });
        }
        let aug = Self::from_fn(self.field.clone(), self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { b[i].clone() }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<F::Elem, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("pivot is nonzero");
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub_mul(m.get(i, j), &factor, m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(t·I − self)`, coefficients lowest
    /// degree first (monic, length `n + 1`). Hessenberg reduction.
    pub fn charpoly(&self) -> Result<Vec<F::Elem>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
                continue;
            };
            h.swap_rows(p, j + 1);
            h.swap_cols(p, j + 1);
            let inv = f.inv(h.get(j + 1, j)).expect("pivot is nonzero");
            for k in j + 2..n {
                if f.is_zero(h.get(k, j)) {
                    continue;
                }
                let u = f.mul(h.get(k, j), &inv);
                for c in 0..n {
                    let v = f.sub_mul(h.get(k, c), &u, h.get(j + 1, c));
                    h.set(k, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), &f.mul(&u, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p[m] = charpoly of the leading m×m block
        let mut p: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for m in 1..=n {
            let prev = &p[m - 1];
            let mut next = vec![f.zero(); m + 1];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] = f.add(&next[d + 1], c);
                next[d] = f.sub_mul(&next[d], h.get(m - 1, m - 1), c);
            }
            let mut t = f.one();
            for i in 1..m {
                t = f.mul(&t, h.get(m - i, m - i - 1));
                if f.is_zero(&t) {
                    break;
                }
                let coef = f.mul(&t, h.get(m - i - 1, m - 1));
                for (d, c) in p[m - i - 1].iter().enumerate() {
                    next[d] = f.sub_mul(&next[d], &coef, c);
                }
            }
            p.push(next);
        }
        Ok(p.pop().expect("n + 1 entries"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, RationalField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[Vec<i64>]) -> FieldMatrix<RationalField> {
        FieldMatrix::from_i64_rows(RationalField, rows).unwrap()
    }

    fn random(field: &PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> FieldMatrix<PrimeField> {
        FieldMatrix::from_fn(field.clone(), rows, cols, |_, _| field.from_u64(rng.gen()))
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(FieldMatrix::identity(RationalField, 8).rank(), 8);
        let z = FieldMatrix::zeros(RationalField, 3, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 5);
        assert!(FieldMatrix::identity(RationalField, 4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = q(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).unwrap().iter().all(|e| *e == RationalField.zero()));
        }
    }

    #[test]
    fn small_determinants() {
        assert_eq!(q(&[vec![1, 2], vec![3, 4]]).det().unwrap(), RationalField.from_i64(-2));
        assert_eq!(q(&[vec![0, 1], vec![1, 0]]).det().unwrap(), RationalField.from_i64(-1));
        assert!(q(&[vec![1, 2, 3]]).det().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(&[vec![1, 1], vec![2, 2]]);
        let f = RationalField;
        let x = m.solve(&[f.from_i64(3), f.from_i64(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![f.from_i64(3), f.from_i64(6)]);
        assert_eq!(m.solve(&[f.from_i64(3), f.from_i64(5)]).unwrap(), None);
    }

    #[test]
    fn blocks_reassemble() {
        let id = FieldMatrix::identity(RationalField, 8);
        let ul = id.block_extract(BlockRegion::UpperLeft5x5).unwrap();
        let ll = id.block_extract(BlockRegion::LowerLeft3x5).unwrap();
        let lr = id.block_extract(BlockRegion::LowerRight3x3).unwrap();
        assert!(ll.is_zero());
        assert_eq!(FieldMatrix::assemble_symmetric(&ul, &ll, &lr).unwrap(), id);
        assert!(FieldMatrix::identity(RationalField, 4).block_extract(BlockRegion::UpperLeft5x5).is_err());
    }

    #[test]
    fn determinant_is_multiplicative() {
        let field = PrimeField::new(1_000_000_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random(&field, 5, 5, &mut rng);
            let b = random(&field, 5, 5, &mut rng);
            let lhs = a.mul(&b).unwrap().det().unwrap();
            assert_eq!(lhs, field.mul(&a.det().unwrap(), &b.det().unwrap()));
        }
    }

    #[test]
    fn rank_nullity() {
        let field = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            // low-rank products exercise deficient cases
            let k = rng.gen_range(1..7);
            let m = random(&field, r, k, &mut rng).mul(&random(&field, k, c, &mut rng)).unwrap();
            let rank = m.rank();
            assert_eq!(rank, c - m.kernel_basis().len());
            assert_eq!(rank, r - m.transpose().kernel_basis().len());
        }
    }

    #[test]
    fn charpoly_matches_det_oracle() {
        // det(t I - A) at t = s equals the charpoly evaluated at s.
        let field = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..9 {
            let mut a = random(&field, n, n, &mut rng);
            if n > 3 {
                a.set(2, 0, field.zero());
                a.set(3, 0, field.zero());
            }
            let cp = a.charpoly().unwrap();
            assert_eq!(cp.len(), n + 1);
            for _ in 0..5 {
                let s = field.from_u64(rng.gen());
                let shifted = FieldMatrix::from_fn(field.clone(), n, n, |i, j| {
                    let d = if i == j { s } else { 0 };
                    field.sub(&d, a.get(i, j))
                });
                let val = cp.iter().rev().fold(0, |acc, c| field.add(&field.mul(&acc, &s), c));
                assert_eq!(val, shifted.det().unwrap());
            }
        }
    }
}
