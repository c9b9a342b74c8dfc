//! Error taxonomy shared by every module of the crate.
//!
//! Variants are grouped by origin: shape/precondition violations
//! (`DimensionMismatch`, `InvalidConfig`, …), structural failures of the
//! quaternionic complex representation (`NotQuaternionic`), and numerical
//! breakdowns (`EmptyKernel`, `IllConditioned`, `OddKernelCount`). Callers
//! that need to map verdicts to process exit codes can rely on
//! [`Error::is_numerical`].

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the linear-algebra, spectral and
/// bundle layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A complex matrix does not carry the block structure
    /// `[[A, -conj(B)], [B, conj(A)]]` of a quaternionic operator.
    #[error("matrix is not a quaternionic complex representation: {0}")]
    NotQuaternionic(String),

    /// Two quaternions do not lie on a common axial sphere.
    #[error("inputs are not axially symmetric: {0}")]
    NotSymmetric(String),

    /// Gram–Schmidt hit a (numerically) dependent vector.
    #[error("linearly dependent input at index {index} (residual {residual:.3e})")]
    DependentInput {
        /// Position of the offending vector in the input slice.
        index: usize,
        /// Norm of the orthogonal remainder relative to the input norm.
        residual: f64,
    },

    /// A weight rule produced a zero (non-invertible) weight.
    #[error("weight rule produced a zero weight at index {0}")]
    ZeroWeight(usize),

    /// A weight rule was asked for an index it does not define.
    #[error("weight rule has no weight at index {index} (table length {len})")]
    WeightOutOfRange {
        /// 1-based index requested.
        index: usize,
        /// Number of weights the rule defines.
        len: usize,
    },

    /// An eigenvector formula that requires a non-real spectral parameter
    /// received a (numerically) real one.
    #[error("spectral parameter must be non-real (|Im s| = {0:.3e})")]
    RealParameter(f64),

    /// A banded-operator patch entry lies outside the requested truncation.
    #[error("patch entry at {0:?} exceeds truncation size {1}")]
    PatchOutOfRange((usize, usize), usize),

    /// A kernel was requested where none exists at the working tolerance.
    #[error("empty kernel: smallest relative singular value {0:.3e} is above the cutoff")]
    EmptyKernel(f64),

    /// Singular-value counts of a quaternionic pencil must be even; an odd
    /// count indicates a tolerance sitting inside a degenerate pair.
    #[error("odd kernel count {count} at tolerance {tol:.3e}; adjust the tolerance")]
    OddKernelCount {
        /// Number of singular values under the threshold.
        count: usize,
        /// Relative tolerance that produced the odd count.
        tol: f64,
    },

    /// Frame ranks/orders/base points disagree where they must match.
    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    /// A computation is numerically untrustworthy (truncation guard,
    /// non-convergence, inconsistent replay, …).
    #[error("ill-conditioned computation: {0}")]
    IllConditioned(String),

    /// Invalid parameter combination at the API boundary.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for errors that signal a *numerical* breakdown rather than a
    /// caller mistake; used by front-ends to pick exit codes.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EmptyKernel(_)
                | Error::IllConditioned(_)
                | Error::OddKernelCount { .. }
                | Error::DependentInput { .. }
        )
    }
}
