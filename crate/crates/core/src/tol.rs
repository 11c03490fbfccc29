//! Numerical tolerances shared by every module.

/// Max `|a_ij - conj(a_ji)|` accepted as Hermitian.
pub const HERMITIAN: f64 = 1e-10;
/// Max `|tr ρ - 1|` accepted for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// (relative to `max(1, ‖A‖_F)`).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Post-condition on `‖A v - λ v‖ / ‖A‖` and on column orthonormality.
pub const EIGEN_RESIDUAL: f64 = 1e-10;

/// Slack on `‖v‖ ≤ 1` for Bloch vectors.
pub const BLOCH_NORM: f64 = 1e-9;
/// Smallest eigenvalue still counted as non-negative.
pub const POSITIVITY: f64 = 1e-9;
/// Eigenvalues within this of 0 or 1 are snapped before taking logs.
pub const EIGEN_CLAMP: f64 = 1e-9;
/// Negativity values below this magnitude are reported as 0.
pub const DOE_CLAMP: f64 = 1e-9;

pub const ORACLE_EQUIVALENCE: f64 = 1e-9;
pub const UNITARITY: f64 = 1e-12;
pub const ANALYTIC_REDUCED: f64 = 1e-9;
pub const CONSERVATION: f64 = 1e-10;
pub const RECURRENCE: f64 = 1e-9;

/// "Equals zero" tolerance for probes of claims made at a printed time.
pub const CLAIM_PROBE: f64 = 1e-6;
/// Half-width of the window searched for a near-miss minimum around a claimed time.
pub const CLAIM_WINDOW: f64 = 0.05;
