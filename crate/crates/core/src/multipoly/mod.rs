//! Sparse distributed multivariate polynomials.
//!
//! A [`Poly`] is a strictly descending list of `(monomial, coefficient)`
//! pairs under the [`MonomialOrder`] of its [`PolyRing`]. The zero polynomial
//! is the empty list.

mod monomial;
mod parse;
mod poly;

use std::sync::Arc;

use thiserror::Error;

use crate::exactnum::Field;

pub use monomial::{Monomial, MonomialOrder, MAX_EXPONENT, MAX_VARS};
pub use poly::{Poly, Term};
pub(crate) use poly::sub_mul_into;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("a ring supports at most {MAX_VARS} variables, got {0}")]
    TooManyVariables(usize),
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exact division failed: remainder is nonzero")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A polynomial ring `F[x_0, ..., x_{n-1}]` with a fixed term order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, names: &[&str], order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        Self::with_names(field, names.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn with_names(field: F, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        Ok(Arc::new(Self { field, names, order }))
    }

    /// Variables named `{prefix}{offset}, {prefix}{offset+1}, ...`.
    pub fn indexed(field: F, prefix: &str, offset: usize, n: usize, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        Self::with_names(field, (offset..offset + n).map(|i| format!("{prefix}{i}")).collect(), order)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The same ring with a different term order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(Self { field: self.field.clone(), names: self.names.clone(), order })
    }

    pub fn zero(self: &Arc<Self>) -> Poly<F> {
        Poly::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Poly<F> {
        Poly::constant(self, self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Poly<F> {
        Poly::constant(self, c)
    }

    pub fn from_i64(self: &Arc<Self>, c: i64) -> Poly<F> {
        Poly::constant(self, self.field.from_i64(c))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Poly<F> {
        assert!(i < self.nvars(), "variable index {i} out of range");
        Poly::from_terms_unchecked(self, vec![(Monomial::var(i), self.field.one())])
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Poly<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parse the textual form produced by `Display`, e.g. `3*x0^2*x1 - x2 + 5`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly<F>, PolyError> {
        parse::parse_poly(self, text)
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}
