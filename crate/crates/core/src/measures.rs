//! Partial trace / partial transpose, negativity, purity and von Neumann
//! entropy.
//!
//! Entropies are in nats.

use serde::{Deserialize, Serialize};

use crate::bloch::{to_matrix, TwoQubitBloch};
use crate::error::{Error, Result};
use crate::smallmat::{eig_hermitian, CMat4, Complex, Mat2};
use crate::tol;

/// A square complex matrix that can be checked and diagonalized as a density
/// operator (2×2 or 4×4).
pub trait DensityOperator {
    fn hermiticity_residual(&self) -> f64;
    fn trace_value(&self) -> Complex;
    /// `tr(m²)`, real part.
    fn trace_of_square(&self) -> f64;
    /// Ascending eigenvalues; requires hermiticity.
    fn eigenvalues(&self) -> Result<Vec<f64>>;

    /// Fails unless the matrix is Hermitian with unit trace.
    fn check_state(&self) -> Result<()> {
        let herm = self.hermiticity_residual();
        if herm > tol::HERMITIAN {
            return Err(Error::NotAState(format!("hermiticity residual {herm:.3e}")));
        }
        let tr = self.trace_value();
        if (tr - Complex::new(1.0, 0.0)).norm() > tol::TRACE {
            return Err(Error::NotAState(format!("trace {tr}")));
        }
        Ok(())
    }
}

impl DensityOperator for Mat2 {
    fn hermiticity_residual(&self) -> f64 {
        Mat2::hermiticity_residual(self)
    }

    fn trace_value(&self) -> Complex {
        self.trace()
    }

    fn trace_of_square(&self) -> f64 {
        (*self * *self).trace().re
    }

    fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigenvalues_hermitian()?.to_vec())
    }
}

impl DensityOperator for CMat4 {
    fn hermiticity_residual(&self) -> f64 {
        CMat4::hermiticity_residual(self)
    }

    fn trace_value(&self) -> Complex {
        self.trace()
    }

    fn trace_of_square(&self) -> f64 {
        // tr(m²) = Σᵢⱼ mᵢⱼ mⱼᵢ
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += self.0[i][j] * self.0[j][i];
            }
        }
        acc.re
    }

    fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(self)?.values.to_vec())
    }
}

/// Every measure reported for one joint state.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureSet {
    pub doe: f64,
    pub purity_joint: f64,
    pub purity_a: f64,
    pub purity_b: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_joint: f64,
}

impl MeasureSet {
    pub fn max_abs_diff(&self, other: &MeasureSet) -> f64 {
        [
            self.doe - other.doe,
            self.purity_joint - other.purity_joint,
            self.purity_a - other.purity_a,
            self.purity_b - other.purity_b,
            self.entropy_a - other.entropy_a,
            self.entropy_b - other.entropy_b,
            self.entropy_joint - other.entropy_joint,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }
}

/// `ρ_a = tr_b ρ`: `(ρ_a)_{ik} = Σⱼ ρ_{(ij),(kj)}`.
pub fn partial_trace_b(m: &CMat4) -> Result<Mat2> {
    m.check_state()?;
    let mut out = Mat2::zeros();
    for i in 0..2 {
        for k in 0..2 {
            out.0[i][k] = (0..2).map(|j| m.0[2 * i + j][2 * k + j]).sum();
        }
    }
    Ok(out)
}

/// `ρ_b = tr_a ρ`: `(ρ_b)_{jl} = Σᵢ ρ_{(ij),(il)}`.
pub fn partial_trace_a(m: &CMat4) -> Result<Mat2> {
    m.check_state()?;
    let mut out = Mat2::zeros();
    for j in 0..2 {
        for l in 0..2 {
            out.0[j][l] = (0..2).map(|i| m.0[2 * i + j][2 * i + l]).sum();
        }
    }
    Ok(out)
}

fn require_hermitian(m: &CMat4) -> Result<()> {
    let residual = m.hermiticity_residual();
    if residual > tol::HERMITIAN {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Transpose on qubit b: `((i,j),(k,l)) ↦ ((i,l),(k,j))`.
pub fn partial_transpose_b(m: &CMat4) -> Result<CMat4> {
    require_hermitian(m)?;
    let mut out = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + j][2 * k + l] = m.0[2 * i + l][2 * k + j];
                }
            }
        }
    }
    Ok(out)
}

/// Transpose on qubit a: `((i,j),(k,l)) ↦ ((k,j),(i,l))`.
pub fn partial_transpose_a(m: &CMat4) -> Result<CMat4> {
    require_hermitian(m)?;
    let mut out = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + j][2 * k + l] = m.0[2 * k + j][2 * i + l];
                }
            }
        }
    }
    Ok(out)
}

fn negativity_from(pt: &CMat4) -> Result<f64> {
    let eig = eig_hermitian(pt)?;
    let raw = eig.values.iter().map(|x| x.abs()).sum::<f64>() - 1.0;
    Ok(if raw.abs() < tol::DOE_CLAMP {
        0.0
    } else {
        raw.max(0.0)
    })
}

/// Negativity `Σⱼ|λⱼ| − 1` over the eigenvalues of the partial transpose.
/// Zero for separable states, one for Bell states.
pub fn degree_of_entanglement(m: &CMat4) -> Result<f64> {
    m.check_state()?;
    negativity_from(&partial_transpose_b(m)?)
}

/// Same quantity computed with the transpose on qubit a.
pub fn degree_of_entanglement_via_a(m: &CMat4) -> Result<f64> {
    m.check_state()?;
    negativity_from(&partial_transpose_a(m)?)
}

/// `tr ρ²`.
pub fn purity<M: DensityOperator>(m: &M) -> Result<f64> {
    m.check_state()?;
    Ok(m.trace_of_square())
}

/// `−Σ λ ln λ`, with `0 ln 0 = 0`.
///
/// Eigenvalues within `EIGEN_CLAMP` of 0 or 1 are snapped to that end;
/// anything outside `[0, 1]` by more than `EIGEN_CLAMP` is an error.
pub fn von_neumann_entropy<M: DensityOperator>(m: &M) -> Result<f64> {
    m.check_state()?;
    let mut entropy = 0.0;
    for lambda in m.eigenvalues()? {
        if !(-tol::EIGEN_CLAMP..=1.0 + tol::EIGEN_CLAMP).contains(&lambda) {
            return Err(Error::NotAState(format!(
                "eigenvalue {lambda} outside [0, 1]"
            )));
        }
        if lambda <= tol::EIGEN_CLAMP || lambda >= 1.0 - tol::EIGEN_CLAMP {
            continue;
        }
        entropy -= lambda * lambda.ln();
    }
    Ok(entropy)
}

pub fn measure_all(st: &TwoQubitBloch) -> Result<MeasureSet> {
    let m = to_matrix(st);
    let rho_a = partial_trace_b(&m)?;
    let rho_b = partial_trace_a(&m)?;
    Ok(MeasureSet {
        doe: degree_of_entanglement(&m)?,
        purity_joint: purity(&m)?,
        purity_a: purity(&rho_a)?,
        purity_b: purity(&rho_b)?,
        entropy_a: von_neumann_entropy(&rho_a)?,
        entropy_b: von_neumann_entropy(&rho_b)?,
        entropy_joint: von_neumann_entropy(&m)?,
    })
}
