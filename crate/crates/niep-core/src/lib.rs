//! Constructive inverse eigenvalue machinery for nonnegative matrices.
//!
//! The crate decides which realizability criteria a prescribed spectrum
//! satisfies, builds an explicit nonnegative realizing matrix by running the
//! corresponding construction (rank-one and rank-r spectral updates, list
//! merging, diagonal-element coupling), enumerates admissible Jordan forms,
//! and re-verifies every output against a characteristic-polynomial oracle.
//!
//! All numerics are generic over a scalar backend: exact big rationals or
//! double floats. Every constructor returns a new matrix; inputs are never
//! mutated, so certificates retain their pre-images.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod criteria;
pub mod diag3;
pub mod glue;
pub mod linalg;
pub mod matrix;
pub mod perturb;
pub mod scalar;
pub mod spectra;
pub mod universal;
pub mod verify;

use alloc::string::String;
use core::fmt;

/// Tolerances shared across the crate. Exact-backend code paths ignore them
/// and demand equality; float paths compare against these thresholds.
pub mod tol {
    /// Conjugate-closure matching and characteristic-coefficient comparison,
    /// relative to max(1, |coefficient|).
    pub const COEFF: f64 = 1e-9;
    /// Entrywise nonnegativity slack for float matrices.
    pub const NONNEG: f64 = 1e-9;
    /// Row-sum deviation, relative to max(1, |target sum|).
    pub const ROW_SUM: f64 = 1e-9;
    /// Eigenpair residual, relative to the matrix infinity norm.
    pub const EIGENPAIR_REL: f64 = 1e-8;
    /// Elimination pivot threshold, relative to max(1, largest entry).
    pub const PIVOT: f64 = 1e-10;
    /// Entrywise symmetry deviation for float matrices.
    pub const SYMMETRIC: f64 = 1e-12;
    /// Singular values below this fraction of the largest count as zero.
    pub const SVD_RANK_REL: f64 = 1e-7;
    /// Eigenvector-basis condition numbers above this are rejected.
    pub const COND_LIMIT: f64 = 1e12;
}

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Empty input where at least one element is required.
    EmptyInput(String),
    /// Operand shapes are incompatible.
    DimensionMismatch(String),
    /// Input list is not closed under complex conjugation.
    NotConjugateClosed(String),
    /// No real element dominates all moduli.
    NoPerronCandidate(String),
    /// Supplied (vector, value) is not an eigenpair of the matrix.
    NotAnEigenpair(String),
    /// Eigenvector block X does not have full column rank.
    RankDeficientX(String),
    /// A·X = X·Ω fails for the supplied update.
    EigenRelationViolated(String),
    /// Columns of X are not orthonormal.
    NotOrthonormal(String),
    /// A symmetric matrix was required.
    NotSymmetric(String),
    /// The shift amount must be nonnegative.
    NegativeEps(String),
    /// The bisection bracket for the negativity bound collapsed.
    BoundNotFound(String),
    /// The list fails the hypotheses of the requested criterion.
    CriterionNotSatisfied(String),
    /// A construction produced data violating its own postcondition.
    InternalConstructionError(String),
    /// No admissible grouping of the negative tail exists.
    NoPartitionFound(String),
    /// More negative entries than the partition search supports.
    TailTooLarge(String),
    /// Sign pattern of the inputs is outside the operation's domain.
    BadSigns(String),
    /// A complex element lies outside the required region.
    RegionViolated(String),
    /// The tail contains no real element to anchor the construction.
    UnsupportedTail(String),
    /// The targeted second eigenvalue must be real.
    Lambda2NotReal(String),
    /// The value is not in the spectrum of the matrix.
    NotAnEigenvalue(String),
    /// The eigenvector needed by the construction vanishes or is defective.
    DegenerateEigenvector(String),
    /// The merge parameter is below the feasibility threshold.
    EpsTooSmall(String),
    /// The host diagonal entry is smaller than the guest Perron root.
    PerronExceedsCorner(String),
    /// A unit-norm vector was required.
    NotUnit(String),
    /// The two Perron roots are in the wrong order for the transfer.
    OrderViolated(String),
    /// The diagonal/spectrum compatibility conditions fail.
    ConditionsNotSatisfied(String),
    /// No nonnegative solution of the free entries exists.
    NoNonnegativeRoot(String),
    /// The matrix is not diagonalizable.
    NotDiagonalizable(String),
    /// The eigenvector basis is numerically too ill-conditioned to trust.
    IllConditioned(String),
    /// The perturbation fails to be real.
    ComplexPerturbation(String),
    /// The requested perturbation size destroys nonnegativity.
    EpsTooLarge(String),
    /// Rank sequence of (M-λI)^k is not monotone-consistent.
    RankChainInconsistent(String),
    /// A square root required by the exact backend is irrational.
    ExactSqrtUnavailable(String),
    /// A linear system had no (unique) solution.
    SingularMatrix(String),
    /// No strictly positive diagonalizable realization could be produced.
    PositiveRealizationNotFound(String),
}

impl Error {
    /// Short stable machine-readable tag, used by the CLI output.
    pub fn tag(&self) -> &'static str {
        use Error::*;
        match self {
            EmptyInput(_) => "empty-input",
            DimensionMismatch(_) => "dimension-mismatch",
            NotConjugateClosed(_) => "not-conjugate-closed",
            NoPerronCandidate(_) => "no-perron-candidate",
            NotAnEigenpair(_) => "not-an-eigenpair",
            RankDeficientX(_) => "rank-deficient-x",
            EigenRelationViolated(_) => "eigen-relation-violated",
            NotOrthonormal(_) => "not-orthonormal",
            NotSymmetric(_) => "not-symmetric",
            NegativeEps(_) => "negative-eps",
            BoundNotFound(_) => "bound-not-found",
            CriterionNotSatisfied(_) => "criterion-not-satisfied",
            InternalConstructionError(_) => "internal-construction-error",
            NoPartitionFound(_) => "no-partition-found",
            TailTooLarge(_) => "tail-too-large",
            BadSigns(_) => "bad-signs",
            RegionViolated(_) => "region-violated",
            UnsupportedTail(_) => "unsupported-tail",
            Lambda2NotReal(_) => "lambda2-not-real",
            NotAnEigenvalue(_) => "not-an-eigenvalue",
            DegenerateEigenvector(_) => "degenerate-eigenvector",
            EpsTooSmall(_) => "eps-too-small",
            PerronExceedsCorner(_) => "perron-exceeds-corner",
            NotUnit(_) => "not-unit",
            OrderViolated(_) => "order-violated",
            ConditionsNotSatisfied(_) => "conditions-not-satisfied",
            NoNonnegativeRoot(_) => "no-nonnegative-root",
            NotDiagonalizable(_) => "not-diagonalizable",
            IllConditioned(_) => "ill-conditioned",
            ComplexPerturbation(_) => "complex-perturbation",
            EpsTooLarge(_) => "eps-too-large",
            RankChainInconsistent(_) => "rank-chain-inconsistent",
            ExactSqrtUnavailable(_) => "exact-sqrt-unavailable",
            SingularMatrix(_) => "singular-matrix",
            PositiveRealizationNotFound(_) => "positive-realization-not-found",
        }
    }

    fn message(&self) -> &str {
        use Error::*;
        match self {
            EmptyInput(m) | DimensionMismatch(m) | NotConjugateClosed(m)
            | NoPerronCandidate(m) | NotAnEigenpair(m) | RankDeficientX(m)
            | EigenRelationViolated(m) | NotOrthonormal(m) | NotSymmetric(m)
            | NegativeEps(m) | BoundNotFound(m) | CriterionNotSatisfied(m)
            | InternalConstructionError(m) | NoPartitionFound(m) | TailTooLarge(m)
            | BadSigns(m) | RegionViolated(m) | UnsupportedTail(m) | Lambda2NotReal(m)
            | NotAnEigenvalue(m) | DegenerateEigenvector(m) | EpsTooSmall(m)
            | PerronExceedsCorner(m) | NotUnit(m) | OrderViolated(m)
            | ConditionsNotSatisfied(m) | NoNonnegativeRoot(m) | NotDiagonalizable(m)
            | IllConditioned(m) | ComplexPerturbation(m) | EpsTooLarge(m)
            | RankChainInconsistent(m) | ExactSqrtUnavailable(m) | SingularMatrix(m)
            | PositiveRealizationNotFound(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.tag(), self.message())
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
