//! The canonical two-qubit coupling `H = α₁ σx⊗τx + α₂ σy⊗τy + α₃ σz⊗τz`,
//! its propagator `U(t) = exp(-iHt)`, and state evolution `ρ ↦ U ρ U†`.
//!
//! `U` is block diagonal on `{|00⟩, |11⟩}` and `{|01⟩, |10⟩}`:
//!
//! ```text
//! Γ₁ = e^{-iα₃t} cos (α₁-α₂)t      Γ₄ = -i e^{-iα₃t} sin (α₁-α₂)t
//! Γ₂ = e^{+iα₃t} cos (α₁+α₂)t      Γ₃ = -i e^{+iα₃t} sin (α₁+α₂)t
//! ```
//!
//! The phases on `Γ₃` and `Γ₄` are the ones that keep each block unitary;
//! the variant with the exponents exchanged is not unitary (see
//! [`crate::verify`], which measures that defect).

use serde::{Deserialize, Serialize};

use crate::bloch::{from_matrix, to_matrix, validate, BlochVec, SingleQubitBloch, TwoQubitBloch};
use crate::error::{Error, Result};
use crate::smallmat::{adjoint, eig_hermitian, kron2, mat_mul, CMat4, Complex, Mat2};

/// Coupling strengths in radians per unit of scaled time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl CouplingParams {
    pub const fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        CouplingParams {
            alpha1,
            alpha2,
            alpha3,
        }
    }

    pub const fn uniform(alpha: f64) -> Self {
        Self::new(alpha, alpha, alpha)
    }

    /// `α₁σx⊗τx + α₂σy⊗τy + α₃σz⊗τz` as a 4×4 matrix.
    pub fn hamiltonian(&self) -> CMat4 {
        let [x, y, z] = Mat2::paulis();
        let re = |k: f64| Complex::new(k, 0.0);
        kron2(&x, &x).scale(re(self.alpha1))
            + kron2(&y, &y).scale(re(self.alpha2))
            + kron2(&z, &z).scale(re(self.alpha3))
    }
}

impl Default for CouplingParams {
    /// `α₁ = α₂ = α₃ = π/6`.
    fn default() -> Self {
        Self::uniform(std::f64::consts::FRAC_PI_6)
    }
}

/// The four nonzero amplitudes of `U(t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryGamma {
    pub g1: Complex,
    pub g2: Complex,
    pub g3: Complex,
    pub g4: Complex,
}

impl UnitaryGamma {
    /// Largest violation of the block unitarity conditions
    /// `|Γ₁|²+|Γ₄|² = 1`, `|Γ₂|²+|Γ₃|² = 1`, `Γ₁Γ₄* + Γ₄Γ₁* = 0`, `Γ₂Γ₃* + Γ₃Γ₂* = 0`.
    pub fn unitarity_residual(&self) -> f64 {
        let UnitaryGamma { g1, g2, g3, g4 } = *self;
        [
            (g1.norm_sqr() + g4.norm_sqr() - 1.0).abs(),
            (g2.norm_sqr() + g3.norm_sqr() - 1.0).abs(),
            (g1 * g4.conj() + g4 * g1.conj()).norm(),
            (g2 * g3.conj() + g3 * g2.conj()).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Places the amplitudes in the computational basis.
    pub fn to_matrix(&self) -> CMat4 {
        let mut u = CMat4::zeros();
        u[(0, 0)] = self.g1;
        u[(3, 3)] = self.g1;
        u[(1, 1)] = self.g2;
        u[(2, 2)] = self.g2;
        u[(2, 1)] = self.g3;
        u[(1, 2)] = self.g3;
        u[(3, 0)] = self.g4;
        u[(0, 3)] = self.g4;
        u
    }
}

pub fn gammas(p: &CouplingParams, t: f64) -> UnitaryGamma {
    let minus_i = Complex::new(0.0, -1.0);
    let phase_even = Complex::from_polar(1.0, -p.alpha3 * t);
    let phase_odd = Complex::from_polar(1.0, p.alpha3 * t);
    let diff = (p.alpha1 - p.alpha2) * t;
    let sum = (p.alpha1 + p.alpha2) * t;
    UnitaryGamma {
        g1: phase_even * diff.cos(),
        g2: phase_odd * sum.cos(),
        g3: minus_i * phase_odd * sum.sin(),
        g4: minus_i * phase_even * diff.sin(),
    }
}

pub fn unitary(p: &CouplingParams, t: f64) -> CMat4 {
    gammas(p, t).to_matrix()
}

/// `exp(-iHt)` through the eigen-decomposition of `H`. Shares nothing with
/// [`unitary`] beyond the Pauli matrices.
pub fn unitary_oracle(p: &CouplingParams, t: f64) -> Result<CMat4> {
    let eig = eig_hermitian(&p.hamiltonian())?;
    let phases = CMat4::diag(
        eig.values
            .map(|lambda| Complex::from_polar(1.0, -lambda * t)),
    );
    Ok(mat_mul(
        &mat_mul(&eig.vectors, &phases),
        &adjoint(&eig.vectors),
    ))
}

/// `from_matrix(U ρ U†)`. Rejects inputs that are not positive semidefinite.
pub fn evolve(st: &TwoQubitBloch, p: &CouplingParams, t: f64) -> Result<TwoQubitBloch> {
    let report = validate(st);
    if !report.valid {
        return Err(Error::InvalidState {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    let u = unitary(p, t);
    let rho = mat_mul(&mat_mul(&u, &to_matrix(st)), &adjoint(&u));
    from_matrix(&rho)
}

/// Closed-form reduced Bloch vectors of `evolve(st0, p, t)`.
///
/// With `cₖ = cos 2tαₖ`, `sₖ = sin 2tαₖ`:
///
/// ```text
/// s̃x = c₂c₃ sx − c₂s₃ C_yz + s₂c₃ C_zy + s₂s₃ tx
/// s̃y = c₁c₃ sy + c₁s₃ C_xz − s₁c₃ C_zx + s₁s₃ ty
/// s̃z = c₁c₂ sz − c₁s₂ C_xy + s₁c₂ C_yx + s₁s₂ tz
/// ```
///
/// and `t̃` is the same with `s ↔ t` and `C ↔ Cᵀ`.
pub fn reduced_bloch_analytic(
    st0: &TwoQubitBloch,
    p: &CouplingParams,
    t: f64,
) -> (SingleQubitBloch, SingleQubitBloch) {
    let (s1, c1) = (2.0 * t * p.alpha1).sin_cos();
    let (s2, c2) = (2.0 * t * p.alpha2).sin_cos();
    let (s3, c3) = (2.0 * t * p.alpha3).sin_cos();

    let side = |own: BlochVec, other: BlochVec, cc: &[[f64; 3]; 3]| {
        // cc[i][j] = ⟨σᵢ(own) σⱼ(other)⟩
        BlochVec::new(
            c2 * c3 * own.x - c2 * s3 * cc[1][2] + s2 * c3 * cc[2][1] + s2 * s3 * other.x,
            c1 * c3 * own.y + c1 * s3 * cc[0][2] - s1 * c3 * cc[2][0] + s1 * s3 * other.y,
            c1 * c2 * own.z - c1 * s2 * cc[0][1] + s1 * c2 * cc[1][0] + s1 * s2 * other.z,
        )
    };
    let a = side(st0.s, st0.t, &st0.c.0);
    let b = side(st0.t, st0.s, &st0.c.transpose().0);
    (SingleQubitBloch { v: a }, SingleQubitBloch { v: b })
}
