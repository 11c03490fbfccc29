//! Bloch-vector / cross-dyadic parameterization of one- and two-qubit states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smallmat::{eig_hermitian, kron2, mat_mul, CMat4, Complex, Mat2, RMat3};
use crate::tol;

/// Pauli expectation values `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlochVec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVec {
    pub const ZERO: BlochVec = BlochVec {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVec { x, y, z }
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        BlochVec { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs_diff(self, other: BlochVec) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// A single-qubit state `½(I + v·σ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitBloch {
    pub v: BlochVec,
}

impl SingleQubitBloch {
    /// Checked constructor; rejects `‖v‖ > 1`.
    pub fn new(v: BlochVec) -> Result<Self> {
        let q = SingleQubitBloch { v };
        q.check()?;
        Ok(q)
    }

    pub fn check(&self) -> Result<()> {
        let norm = self.v.norm();
        if !norm.is_finite() || norm > 1.0 + tol::BLOCH_NORM {
            return Err(Error::InvalidBloch { norm });
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Mat2 {
        let [sx, sy, sz] = Mat2::paulis();
        let half = |k: f64| Complex::new(0.5 * k, 0.0);
        Mat2::identity().scale(half(1.0))
            + sx.scale(half(self.v.x))
            + sy.scale(half(self.v.y))
            + sz.scale(half(self.v.z))
    }

    /// `vᵢ = tr(m σᵢ)`.
    pub fn from_matrix(m: &Mat2) -> Self {
        let comps = Mat2::paulis().map(|p| (*m * p).trace().re);
        SingleQubitBloch {
            v: BlochVec::from_array(comps),
        }
    }
}

/// Joint two-qubit state: Bloch vectors `s` (qubit a), `t` (qubit b) and the
/// cross dyadic `c[i][j] = ⟨σᵢ ⊗ τⱼ⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitBloch {
    pub s: BlochVec,
    pub t: BlochVec,
    pub c: RMat3,
}

impl TwoQubitBloch {
    pub fn new(s: BlochVec, t: BlochVec, c: RMat3) -> Self {
        TwoQubitBloch { s, t, c }
    }

    /// Largest componentwise difference over `s`, `t` and `c`.
    pub fn max_abs_diff(&self, other: &TwoQubitBloch) -> f64 {
        self.s
            .max_abs_diff(other.s)
            .max(self.t.max_abs_diff(other.t))
            .max(self.c.max_abs_diff(&other.c))
    }

    /// `tr ρ² = ¼(1 + ‖s‖² + ‖t‖² + ‖C‖²_F)`.
    pub fn purity(&self) -> f64 {
        0.25 * (1.0 + self.s.norm_sqr() + self.t.norm_sqr() + self.c.frobenius_norm_sqr())
    }

    pub fn reduced_a(&self) -> SingleQubitBloch {
        SingleQubitBloch { v: self.s }
    }

    pub fn reduced_b(&self) -> SingleQubitBloch {
        SingleQubitBloch { v: self.t }
    }
}

/// Diagnostics for a candidate joint state. Valid iff the smallest eigenvalue
/// of the induced density matrix is at least `-POSITIVITY`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidityReport {
    pub hermiticity_residual: f64,
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
    pub valid: bool,
}

fn local_ops() -> ([CMat4; 3], [CMat4; 3]) {
    let id = Mat2::identity();
    let p = Mat2::paulis();
    (p.map(|s| kron2(&s, &id)), p.map(|t| kron2(&id, &t)))
}

/// `¼(I + Σ sᵢ σᵢ⊗I + Σ tⱼ I⊗τⱼ + Σ cᵢⱼ σᵢ⊗τⱼ)`.
pub fn to_matrix(st: &TwoQubitBloch) -> CMat4 {
    let (a_ops, b_ops) = local_ops();
    let paulis = Mat2::paulis();
    let s = st.s.to_array();
    let t = st.t.to_array();
    let quarter = |k: f64| Complex::new(0.25 * k, 0.0);

    let mut m = CMat4::identity().scale(quarter(1.0));
    for i in 0..3 {
        m = m + a_ops[i].scale(quarter(s[i])) + b_ops[i].scale(quarter(t[i]));
        for j in 0..3 {
            m = m + kron2(&paulis[i], &paulis[j]).scale(quarter(st.c.0[i][j]));
        }
    }
    m
}

/// Tomographic inversion: `sᵢ = tr(m σᵢ⊗I)`, `tⱼ = tr(m I⊗τⱼ)`,
/// `cᵢⱼ = tr(m σᵢ⊗τⱼ)`.
pub fn from_matrix(m: &CMat4) -> Result<TwoQubitBloch> {
    let herm = m.hermiticity_residual();
    if herm > tol::HERMITIAN {
        return Err(Error::NotAState(format!("hermiticity residual {herm:.3e}")));
    }
    let tr = m.trace();
    if (tr - Complex::new(1.0, 0.0)).norm() > tol::TRACE {
        return Err(Error::NotAState(format!("trace {tr}")));
    }

    let expect = |op: &CMat4| mat_mul(m, op).trace().re;
    let (a_ops, b_ops) = local_ops();
    let paulis = Mat2::paulis();
    let mut c = RMat3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            c.0[i][j] = expect(&kron2(&paulis[i], &paulis[j]));
        }
    }
    Ok(TwoQubitBloch {
        s: BlochVec::from_array(a_ops.map(|op| expect(&op))),
        t: BlochVec::from_array(b_ops.map(|op| expect(&op))),
        c,
    })
}

/// `ρ_a ⊗ ρ_b`, whose dyadic is the outer product `c = s tᵀ`.
pub fn product_state(a: SingleQubitBloch, b: SingleQubitBloch) -> Result<TwoQubitBloch> {
    a.check()?;
    b.check()?;
    Ok(TwoQubitBloch {
        s: a.v,
        t: b.v,
        c: RMat3::outer(a.v.to_array(), b.v.to_array()),
    })
}

pub fn validate(st: &TwoQubitBloch) -> ValidityReport {
    let m = to_matrix(st);
    let hermiticity_residual = m.hermiticity_residual();
    let trace_residual = (m.trace() - Complex::new(1.0, 0.0)).norm();
    let min_eigenvalue = match eig_hermitian(&m) {
        Ok(eig) => eig.values[0],
        Err(_) => f64::NAN,
    };
    ValidityReport {
        hermiticity_residual,
        trace_residual,
        min_eigenvalue,
        valid: min_eigenvalue >= -tol::POSITIVITY,
    }
}

/// `tr ρ² = ½(1 + ‖v‖²)`.
pub fn purity_single(q: &SingleQubitBloch) -> f64 {
    0.5 * (1.0 + q.v.norm_sqr())
}
