//! The web-of-quadrics pipeline.
//!
//! A [`Web`] is four quadrics in P7 that all contain the plane
//! `Π = {x0 = ... = x4 = 0}`. From it we build the derived matrices, decide
//! the four genericity assumptions, study the quintic threefold and the
//! Bordiga surface in P4, and classify the singularities of the discriminant
//! octic together with the fibers of the conic bundle.

mod assumptions;
mod certificate;
mod discriminant;
mod fibers;
pub mod fixtures;
pub mod numerics;
mod surfaces;
mod web;

use serde::Serialize;
use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::multipoly::PolyError;
use crate::polymatrix::MatrixError;

pub use assumptions::{
    check_a1, check_a2, check_a3, check_nodes_on_plane, jacobian, line_witness, lines_through_four, principal_subresultants,
    reconstruct_integers, sing_on_plane, A1Verdict, A2Verdict, A3Verdict, LineSearch, LineWitness, OffPlane, ON_PLANE_POINTS,
    QUINTIC_NODES,
};
pub use certificate::{
    analyze, prime_sequence, screen, Agreement, Analysis, AnalysisOptions, AssumptionVerdicts, Certificate, FiberSample, FieldMode,
    FieldReport, IntersectionCheck, NodesCheck, RationalChecks, Screen, DEFAULT_TIMEOUT, SCHEMA_VERSION,
};
pub use discriminant::{
    check_a4, classify_discriminant, discriminant, tjurina_ideal, A4Verdict, Budget, DiscriminantReport, SingularOrbit,
    SingularityLabel, MAX_NON_A_POINTS, MILNOR_BUDGET,
};
pub use fibers::{fiber_type, fiber_type_in, FiberReport, FiberType, PlaneCubic};
pub use surfaces::{bordiga, quintic, rank2_locus, BordigaSummary, Quintic, QuinticSummary, Rank2Summary};
pub use web::{random_web, validate_web, DerivedMatrices, IdentityReport, IntegerWeb, Web};

/// Outcome of a yes/no check that may run out of time or randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b { Verdict::Holds } else { Verdict::Fails }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    /// An observation that contradicts the theory; usually an unlucky prime.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("degenerate web: {0}")]
    Degenerate(String),
}

impl From<MatrixError> for AnalysisError {
    fn from(e: MatrixError) -> Self {
        AnalysisError::Groebner(e.into())
    }
}

impl From<PolyError> for AnalysisError {
    fn from(e: PolyError) -> Self {
        AnalysisError::Groebner(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("matrix {matrix} is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { matrix: usize, row: usize, col: usize },
    #[error("plane not contained in Q{matrix}: entry ({row}, {col}) of the lower-right block is nonzero")]
    PlaneNotContained { matrix: usize, row: usize, col: usize },
    #[error("the four matrices are linearly dependent")]
    LinearlyDependent,
}
