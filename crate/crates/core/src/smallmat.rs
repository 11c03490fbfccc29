//! Fixed-size complex and real matrices (2×2, 3×3, 4×4) and a cyclic Jacobi
//! eigensolver for 4×4 Hermitian matrices.
//!
//! `CMat4` is row-major in the basis `|00⟩, |01⟩, |10⟩, |11⟩`; index `2i + j`
//! addresses `|i j⟩` with `i` the first (a) qubit.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::tol;

pub type Complex = num_complex::Complex64;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex; 2]; 2]);

/// 4×4 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat4(pub [[Complex; 4]; 4]);

/// 3×3 real matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RMat3(pub [[f64; 3]; 3]);

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues, with the
/// matching orthonormal eigenvectors as columns of `vectors`.
#[derive(Clone, Copy, Debug)]
pub struct EigenResult {
    pub values: [f64; 4],
    pub vectors: CMat4,
}

impl Mat2 {
    pub const fn new(rows: [[Complex; 2]; 2]) -> Self {
        Mat2(rows)
    }

    pub fn zeros() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Mat2([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Mat2([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `[σx, σy, σz]`.
    pub fn paulis() -> [Mat2; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn scale(&self, k: Complex) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let m = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((m[i][j] - m[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues (ascending) of a Hermitian 2×2 matrix, closed form.
    pub fn eigenvalues_hermitian(&self) -> Result<[f64; 2]> {
        let residual = self.hermiticity_residual();
        if residual > tol::HERMITIAN {
            return Err(Error::NotHermitian { residual });
        }
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        Ok([mean - radius, mean + radius])
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(mut self, rhs: Mat2) -> Mat2 {
        for i in 0..2 {
            for j in 0..2 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl CMat4 {
    pub fn zeros() -> Self {
        CMat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([ONE; 4])
    }

    pub fn diag(d: [Complex; 4]) -> Self {
        let mut m = Self::zeros();
        for (k, z) in d.into_iter().enumerate() {
            m.0[k][k] = z;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = Complex::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn scale(&self, k: Complex) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    pub fn adjoint(&self) -> Self {
        adjoint(self)
    }

    pub fn trace(&self) -> Complex {
        trace(self)
    }

    pub fn column(&self, k: usize) -> [Complex; 4] {
        [self.0[0][k], self.0[1][k], self.0[2][k], self.0[3][k]]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &CMat4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// `max |a_ij - conj(a_ji)|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in i..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    sum += self.0[i][j].norm_sqr();
                }
            }
        }
        sum.sqrt()
    }
}

impl Index<(usize, usize)> for CMat4 {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for CMat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.0[i][j]
    }
}

impl Add for CMat4 {
    type Output = CMat4;
    fn add(mut self, rhs: CMat4) -> CMat4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for CMat4 {
    type Output = CMat4;
    fn sub(mut self, rhs: CMat4) -> CMat4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul for CMat4 {
    type Output = CMat4;
    fn mul(self, rhs: CMat4) -> CMat4 {
        mat_mul(&self, &rhs)
    }
}

impl RMat3 {
    pub fn zeros() -> Self {
        RMat3([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 3])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Self::zeros();
        for k in 0..3 {
            m.0[k][k] = d[k];
        }
        m
    }

    /// `u vᵀ`.
    pub fn outer(u: [f64; 3], v: [f64; 3]) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = u[i] * v[j];
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum()
    }

    pub fn max_abs_diff(&self, other: &RMat3) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

pub fn mat_mul(a: &CMat4, b: &CMat4) -> CMat4 {
    let mut out = CMat4::zeros();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a.0[i][k];
            for j in 0..4 {
                out.0[i][j] += aik * b.0[k][j];
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint(a: &CMat4) -> CMat4 {
    let mut out = CMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out.0[i][j] = a.0[j][i].conj();
        }
    }
    out
}

/// `a ⊗ b`, with `a` acting on the first qubit.
pub fn kron2(a: &Mat2, b: &Mat2) -> CMat4 {
    let mut out = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + j][2 * k + l] = a.0[i][k] * b.0[j][l];
                }
            }
        }
    }
    out
}

pub fn trace(a: &CMat4) -> Complex {
    (0..4).map(|k| a.0[k][k]).sum()
}

/// Eigen-decomposition of a 4×4 Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies the
/// real symmetric Jacobi rotation that zeroes it. Sweeps continue until the
/// off-diagonal Frobenius norm is below `JACOBI_OFF_DIAGONAL · max(1, ‖A‖_F)`.
pub fn eig_hermitian(a: &CMat4) -> Result<EigenResult> {
    let residual = a.hermiticity_residual();
    if residual > tol::HERMITIAN {
        return Err(Error::NotHermitian { residual });
    }

    // Symmetrize so the iteration works on an exactly Hermitian matrix.
    let mut m = CMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = 0.5 * (a.0[i][j] + a.0[j][i].conj());
        }
    }
    let scale = m.frobenius_norm().max(1.0);
    let threshold = tol::JACOBI_OFF_DIAGONAL * scale;
    let mut v = CMat4::identity();

    let mut converged = m.off_diagonal_norm() < threshold;
    let mut sweep = 0;
    while !converged {
        if sweep == tol::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: sweep });
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                jacobi_rotate(&mut m, &mut v, p, q);
            }
        }
        sweep += 1;
        converged = m.off_diagonal_norm() < threshold;
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&x, &y| m.0[x][x].re.total_cmp(&m.0[y][y].re));
    let mut values = [0.0; 4];
    let mut vectors = CMat4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = m.0[src][src].re;
        for row in 0..4 {
            vectors.0[row][dst] = v.0[row][src];
        }
    }
    Ok(EigenResult { values, vectors })
}

/// One two-sided rotation `m ← Jᴴ m J`, `v ← v J`, zeroing `m[p][q]`.
fn jacobi_rotate(m: &mut CMat4, v: &mut CMat4, p: usize, q: usize) {
    let apq = m.0[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    // phase e^{iφ} of the pivot
    let phase = apq / g;
    let app = m.0[p][p].re;
    let aqq = m.0[q][q].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(.., 1 at p, e^{-iφ} at q, ..) · R(c, s); only columns p, q differ from I.
    let jpp = Complex::new(c, 0.0);
    let jpq = Complex::new(s, 0.0);
    let jqp = -s * phase.conj();
    let jqq = c * phase.conj();

    // m ← m J (columns)
    for row in 0..4 {
        let mp = m.0[row][p];
        let mq = m.0[row][q];
        m.0[row][p] = mp * jpp + mq * jqp;
        m.0[row][q] = mp * jpq + mq * jqq;
    }
    // m ← Jᴴ m (rows)
    for col in 0..4 {
        let mp = m.0[p][col];
        let mq = m.0[q][col];
        m.0[p][col] = jpp.conj() * mp + jqp.conj() * mq;
        m.0[q][col] = jpq.conj() * mp + jqq.conj() * mq;
    }
    m.0[p][q] = ZERO;
    m.0[q][p] = ZERO;
    m.0[p][p].im = 0.0;
    m.0[q][q].im = 0.0;
    for row in 0..4 {
        let vp = v.0[row][p];
        let vq = v.0[row][q];
        v.0[row][p] = vp * jpp + vq * jqp;
        v.0[row][q] = vp * jpq + vq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    pub(crate) fn random_hermitian(rng: &mut impl Rng) -> CMat4 {
        let mut m = CMat4::zeros();
        for i in 0..4 {
            m.0[i][i] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..4 {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.0[i][j] = z;
                m.0[j][i] = z.conj();
            }
        }
        m
    }

    fn singlet() -> CMat4 {
        CMat4::from_real([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.5, -0.5, 0.0],
            [0.0, -0.5, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ])
    }

    /// Laplace expansion; test-only oracle for characteristic polynomials.
    fn det4(m: &CMat4) -> Complex {
        fn det(rows: &[usize], cols: &[usize], m: &CMat4) -> Complex {
            if rows.len() == 1 {
                return m.0[rows[0]][cols[0]];
            }
            let mut acc = ZERO;
            for (k, &col) in cols.iter().enumerate() {
                let minor: Vec<usize> = cols.iter().copied().filter(|&x| x != col).collect();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * m.0[rows[0]][col] * det(&rows[1..], &minor, m);
            }
            acc
        }
        det(&[0, 1, 2, 3], &[0, 1, 2, 3], m)
    }

    #[test]
    fn identity_products() {
        let i4 = CMat4::identity();
        assert_eq!(mat_mul(&i4, &i4), i4);
        let mut rng = rand_chacha();
        let a = random_hermitian(&mut rng);
        assert!(mat_mul(&a, &i4).max_abs_diff(&a) == 0.0);
    }

    fn rand_chacha() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    #[test]
    fn kron_of_local_paulis_multiplies_out() {
        let x = Mat2::pauli_x();
        let id = Mat2::identity();
        let lhs = mat_mul(&kron2(&x, &id), &kron2(&id, &x));
        // σx⊗τx flips both bits: |00⟩↔|11⟩, |01⟩↔|10⟩
        let expected = CMat4::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(lhs, expected);
        assert_eq!(kron2(&x, &x), expected);
    }

    #[test]
    fn kron_basics() {
        assert_eq!(
            kron2(&Mat2::identity(), &Mat2::identity()),
            CMat4::identity()
        );
        let zi = kron2(&Mat2::pauli_z(), &Mat2::identity());
        assert_eq!(zi, CMat4::diag([ONE, ONE, -ONE, -ONE]));
    }

    #[test]
    fn adjoint_cases() {
        assert_eq!(adjoint(&CMat4::identity()), CMat4::identity());
        let d = CMat4::diag([I, ZERO, ZERO, ZERO]);
        assert_eq!(adjoint(&d), CMat4::diag([-I, ZERO, ZERO, ZERO]));
        let a = random_hermitian(&mut rand_chacha()) * CMat4::diag([I, ONE, c(0.0, -2.0), ONE]);
        assert_eq!(adjoint(&adjoint(&a)), a);
    }

    #[test]
    fn traces() {
        assert_eq!(trace(&CMat4::identity()), c(4.0, 0.0));
        assert_eq!(trace(&CMat4::identity().scale(c(0.25, 0.0))), ONE);
        assert_eq!(trace(&singlet()), ONE);
    }

    #[test]
    fn eig_diagonal_and_mixed() {
        let d = CMat4::from_real([
            [3.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 4.0, 0.0],
            [0.0, 0.0, 0.0, 2.0],
        ]);
        assert_eq!(eig_hermitian(&d).unwrap().values, [1.0, 2.0, 3.0, 4.0]);
        let mixed = CMat4::identity().scale(c(0.25, 0.0));
        assert_eq!(eig_hermitian(&mixed).unwrap().values, [0.25; 4]);
    }

    #[test]
    fn eig_partial_transpose_of_singlet() {
        // partial transpose on qubit b of the singlet, written out by hand
        let pt = CMat4::from_real([
            [0.0, 0.0, 0.0, -0.5],
            [0.0, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.5, 0.0],
            [-0.5, 0.0, 0.0, 0.0],
        ]);
        // characteristic polynomial (λ - ½)³(λ + ½) by Laplace expansion
        for lambda in [-0.5, 0.5] {
            let shifted = pt - CMat4::identity().scale(c(lambda, 0.0));
            assert!(det4(&shifted).norm() < 1e-15);
        }
        let shifted = pt - CMat4::identity().scale(c(0.1, 0.0));
        assert!((det4(&shifted).re - (-0.4f64).powi(3) * 0.6).abs() < 1e-15);

        let eig = eig_hermitian(&pt).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in eig.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{:?}", eig.values);
        }
    }

    #[test]
    fn eig_random_hermitian_invariants() {
        let mut rng = rand_chacha();
        for _ in 0..200 {
            let a = random_hermitian(&mut rng);
            let eig = eig_hermitian(&a).unwrap();
            let norm = a.frobenius_norm();
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            // residual and characteristic polynomial root per eigenpair
            for k in 0..4 {
                let vk = eig.vectors.column(k);
                let mut worst: f64 = 0.0;
                for i in 0..4 {
                    let av: Complex = (0..4).map(|j| a.0[i][j] * vk[j]).sum();
                    worst = worst.max((av - eig.values[k] * vk[i]).norm());
                }
                assert!(worst <= 1e-10 * norm);
                let shifted = a - CMat4::identity().scale(c(eig.values[k], 0.0));
                assert!(det4(&shifted).norm() < 1e-9 * norm.powi(4).max(1.0));
            }
            let gram = mat_mul(&adjoint(&eig.vectors), &eig.vectors);
            assert!(gram.max_abs_diff(&CMat4::identity()) < 1e-10);
            let rebuilt = mat_mul(
                &mat_mul(&eig.vectors, &CMat4::diag(eig.values.map(|x| c(x, 0.0)))),
                &adjoint(&eig.vectors),
            );
            assert!(rebuilt.max_abs_diff(&a) < 1e-10);
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - trace(&a).re).abs() < 1e-10);
            let sum_sq: f64 = eig.values.iter().map(|x| x * x).sum();
            assert!((sum_sq - trace(&mat_mul(&a, &a)).re).abs() < 1e-10);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut a = CMat4::identity();
        a.0[0][1] = c(1.0, 0.0);
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_degenerate_with_complex_coupling() {
        let mut a = CMat4::zeros();
        a.0[0][3] = c(0.0, 0.7);
        a.0[3][0] = c(0.0, -0.7);
        a.0[1][2] = c(0.3, 0.4);
        a.0[2][1] = c(0.3, -0.4);
        let eig = eig_hermitian(&a).unwrap();
        let expected = [-0.7, -0.5, 0.5, 0.7];
        for (got, want) in eig.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn mat2_eigenvalues() {
        let m = Mat2::identity().scale(c(0.5, 0.0)) + Mat2::pauli_x().scale(c(0.25, 0.0));
        assert_eq!(m.eigenvalues_hermitian().unwrap(), [0.25, 0.75]);
        let y = Mat2::pauli_y();
        assert_eq!((y * y), Mat2::identity());
    }
}
