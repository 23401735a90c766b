use thiserror::Error;

/// Errors raised by the hopping-spectra toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sign entries must be exactly +1 or -1, got {0}")]
    InvalidSign(i64),

    #[error("amplitude sigma must lie in (0, 1], got {0}")]
    InvalidSigma(f64),

    #[error("word amplitude {got} is not the square of sigma = {sigma}")]
    InvalidAmplitude { sigma: f64, got: f64 },

    #[error("a sign word needs at least one entry")]
    EmptyWord,

    #[error("window [{lo}, {hi}] is invalid: {reason}")]
    InvalidWindow { lo: i64, hi: i64, reason: &'static str },

    #[error("index {0} is out of range (indices start at 1)")]
    InvalidIndex(i64),

    #[error("determinant gamma = {0} lies outside (-1, 1)")]
    OutOfDomain(f64),

    #[error("closed-form spectral curves degenerate at sigma = 1")]
    DegenerateSigma,

    #[error("parameter out of range: {reason} (smallest admissible d is {required_d})")]
    DecayPrecondition { reason: String, required_d: u32 },

    #[error("QR iteration failed to converge for the eigenvalue at index {index} after {iterations} iterations")]
    SolverFailure { index: usize, iterations: usize },

    #[error("simultaneous root iteration did not converge after {iterations} iterations")]
    RootIteration { iterations: usize },

    #[error("matrix dimension {n} is invalid: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },

    #[error("twist alpha must have unit modulus, |alpha| = {0}")]
    NotUnitModulus(f64),

    #[error("period bound {n_max} exceeds the configured ceiling {ceiling}")]
    CeilingExceeded { n_max: usize, ceiling: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
