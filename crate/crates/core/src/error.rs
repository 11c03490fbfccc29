use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("not a density matrix: {0}")]
    NotAState(String),
    #[error("Bloch vector norm {norm} exceeds 1")]
    InvalidBloch { norm: f64 },
    #[error("state is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    InvalidState { min_eigenvalue: f64 },
    #[error("invalid scenario: {0}")]
    InvalidSpec(String),
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
