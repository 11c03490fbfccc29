//! Two-qubit dynamics in Bloch-vector / cross-dyadic form.
//!
//! A joint state of qubits `a` and `b` is held as two Bloch vectors `s`, `t`
//! and a 3×3 correlation dyadic `C`, with
//!
//! ```text
//! ρ = ¼ (I + s·σ ⊗ I + I ⊗ t·τ + Σᵢⱼ Cᵢⱼ σᵢ ⊗ τⱼ)
//! ```
//!
//! States evolve under the canonical coupling
//! `U(t) = exp(-i t (α₁ σx⊗τx + α₂ σy⊗τy + α₃ σz⊗τz))`, and the crate reports
//! negativity, purities and von Neumann entropies along the trajectory.
//!
//! Matrices use the computational basis order `|00⟩, |01⟩, |10⟩, |11⟩`,
//! first label = qubit `a`.

#![allow(clippy::needless_range_loop)]

pub mod bloch;
pub mod error;
pub mod evolution;
pub mod measures;
pub mod scenarios;
pub mod smallmat;
pub mod tol;
pub mod verify;

pub use bloch::{
    from_matrix, product_state, purity_single, to_matrix, validate, BlochVec, SingleQubitBloch,
    TwoQubitBloch, ValidityReport,
};
pub use error::{Error, Result};
pub use evolution::{
    evolve, gammas, reduced_bloch_analytic, unitary, unitary_oracle, CouplingParams, UnitaryGamma,
};

pub use measures::{
    degree_of_entanglement, measure_all, partial_trace_a, partial_trace_b, partial_transpose_a,
    partial_transpose_b, purity, von_neumann_entropy, DensityOperator, MeasureSet,
};
pub use scenarios::{
    initial_state, record_at, reduced_entangled_analytic, sweep, ScenarioSpec, SweepConfig,
    SweepRecord,
};
pub use smallmat::{
    adjoint, eig_hermitian, kron2, mat_mul, trace, CMat4, Complex, EigenResult, Mat2, RMat3,
};
pub use verify::{verify, Check, Erratum, VerifyOptions, VerifyReport};
