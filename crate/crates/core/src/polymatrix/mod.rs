//! Dense matrices over a field and over a polynomial ring.

mod field_matrix;
mod poly_matrix;

use std::ops::Range;

use thiserror::Error;

use crate::multipoly::PolyError;

pub use field_matrix::FieldMatrix;
pub use poly_matrix::PolyMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("incompatible dimensions {left:?} and {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("minor size {k} exceeds matrix dimensions {rows}x{cols}")]
    MinorTooLarge { k: usize, rows: usize, cols: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Named blocks of an 8×8 matrix split as 5 + 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BlockRegion {
    /// Rows and columns 0..5.
    UpperLeft5x5,
    /// Rows 5..8, columns 0..5.
    LowerLeft3x5,
    /// Rows and columns 5..8.
    LowerRight3x3,
}

impl BlockRegion {
    pub fn ranges(self) -> (Range<usize>, Range<usize>) {
        match self {
            BlockRegion::UpperLeft5x5 => (0..5, 0..5),
            BlockRegion::LowerLeft3x5 => (5..8, 0..5),
            BlockRegion::LowerRight3x3 => (5..8, 5..8),
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 3), vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(subsets(8, 4).len(), 70);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
