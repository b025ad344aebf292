use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has {got} entries, expected {dim}x{dim}")]
    Shape { dim: usize, got: usize },
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("state vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("density matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("density matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    DensityNotHermitian { deviation: f64 },
    #[error("density matrix has negative eigenvalue {eigenvalue:e}")]
    NegativeEigenvalue { eigenvalue: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expectation value has imaginary part {imag:e}")]
    ComplexExpectation { imag: f64 },
    #[error("variance is negative ({value:e})")]
    NegativeVariance { value: f64 },
    #[error("Bloch vector length {length} exceeds 1")]
    BlochVectorTooLong { length: f64 },
    #[error("need at least {min} observables, got {got}")]
    NTooSmall { min: usize, got: usize },
    #[error("Hilbert-space identity residual {residual:e} exceeds tolerance")]
    IdentityViolated { residual: f64 },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bound {bound} does not belong to the {kind} relation")]
    IncompatibleBound { bound: String, kind: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
