//! Gröbner bases and the ideal-theoretic toolkit built on them.
//!
//! [`buchberger`] computes reduced bases. Zero-dimensional ideals are
//! analyzed by [`zero_dim_analyze`] (affine) and [`zero_dim_analyze_projective`]
//! (homogeneous), which report quotient length, the number of points over the
//! algebraic closure and the multiplicity profile; over prime fields the
//! points themselves are available as Galois orbits.

mod buchberger;
pub mod hilbert;
mod ideal_ops;
pub mod univariate;
mod zerodim;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exactnum::ArithmeticError;
use crate::multipoly::PolyError;
use crate::polymatrix::MatrixError;

pub use buchberger::{buchberger, GroebnerBasis, Ideal};
pub use hilbert::HilbertSeries;
pub use ideal_ops::{eliminate, radical_membership};
pub use zerodim::{zero_dim_analyze, zero_dim_analyze_projective, zero_dim_radical, Chart, PointOrbit, Shape, ZeroDimScheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("computation exceeded its time budget")]
    Timeout,
    #[error("ideal is not zero-dimensional (dimension {0})")]
    PositiveDimensional(i64),
    #[error("ideal has no points (unit ideal)")]
    Empty,
    #[error("generators must be homogeneous")]
    NotHomogeneous,
    #[error("operation needs at least {needed} variables, ring has {nvars}")]
    TooFewVariables { needed: usize, nvars: usize },
    #[error("no generic coordinate choice found after {0} attempts")]
    GenericityFailure(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// Wall-clock budget shared by the steps of one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    pub fn never() -> Self {
        Self { at: None }
    }

    pub fn after(budget: Duration) -> Self {
        Self { at: Instant::now().checked_add(budget) }
    }

    pub fn expired(&self) -> bool {
        self.at.is_some_and(|t| Instant::now() >= t)
    }

    pub fn check(&self) -> Result<(), GroebnerError> {
        if self.expired() {
            Err(GroebnerError::Timeout)
        } else {
            Ok(())
        }
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.at.map(|t| t.saturating_duration_since(Instant::now()))
    }
}

impl Default for Deadline {
    fn default() -> Self {
        Self::never()
    }
}
