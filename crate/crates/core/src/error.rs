use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    /// Complete elliptic integral evaluated at modulus one.
    #[error("elliptic integral diverges at modulus 1")]
    Divergent,
    #[error("singular input: {0}")]
    SingularInput(&'static str),
    /// Evaluation landed on a pole of a rational function.
    #[error("evaluation point is a pole")]
    PoleHit,
    #[error("argument lies on the branch cut (-inf, 0]")]
    BranchCut,
    /// `|phi(z, alpha)| <= 1`: the probe is outside the convergence region.
    #[error("probe point does not converge (|phi| <= 1)")]
    NonConvergentProbe,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is singular to working precision")]
    Singular,
    /// A shifted system of an iteration step could not be factored.
    #[error("shifted system {shift} is singular at iteration {iteration}")]
    SingularShift { iteration: usize, shift: usize },
    /// An iterate overflowed.
    #[error("iteration diverged at step {0}")]
    Diverged(usize),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    /// A computed quantity violated an invariant it must satisfy.
    #[error("numerical breakdown: {0}")]
    Numerical(&'static str),
    #[error("nonpositive eigenvalue {0:e}")]
    NonPositiveEigenvalue(f64),
}
