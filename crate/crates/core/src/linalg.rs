//! Small dense complex matrices and a cyclic-Jacobi Hermitian eigensolver.
//!
//! Everything in this crate lives at dimension ≤ 16, so the representation
//! is a plain row-major `Vec<Complex64>` and the solver favors robustness
//! and portability over asymptotics.

pub use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

/// A square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>, // row-major
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidOperator(
                "matrix must be square and nonempty".into(),
            ));
        }
        let data: Vec<Complex64> = rows.into_iter().flatten().collect();
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidOperator(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_re_im(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        if re.len() != im.len() || re.iter().zip(im).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::DimensionMismatch(
                "real and imaginary parts differ in shape".into(),
            ));
        }
        Self::from_rows(
            re.iter()
                .zip(im)
                .map(|(rr, ri)| {
                    rr.iter()
                        .zip(ri)
                        .map(|(&a, &b)| Complex64::new(a, b))
                        .collect()
                })
                .collect(),
        )
    }

    /// Outer product |v⟩⟨v|.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product needs equal dimensions");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix sum needs equal dimensions");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.dim, rhs.dim,
            "matrix difference needs equal dimensions"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose M†.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; `self` is the most significant factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// ‖M − M†‖ in max norm.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.hermiticity_defect() <= tolerance
    }

    pub fn re_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).re).collect())
            .collect()
    }

    pub fn im_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).im).collect())
            .collect()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// (M + M†)/2: exactly Hermitian, diagonal exactly real.
    fn symmetrized(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.set(i, i, Complex64::new(self.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        out
    }
}

/// Full eigensystem of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns the eigenvalues sorted descending together with the unitary
/// matrix whose columns are the matching (orthonormal) eigenvectors, so the
/// input is reconstructed by V·diag(λ)·V†. Sweeps run until the
/// off-diagonal Frobenius norm drops below [`tol::JACOBI_OFF_NORM`], capped
/// at [`tol::JACOBI_MAX_SWEEPS`].
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_hermitian(tol::HERMITICITY) {
        return Err(Error::InvalidOperator(format!(
            "eigh needs a Hermitian matrix; defect {:.3e} exceeds {:.0e}",
            m.hermiticity_defect(),
            tol::HERMITICITY
        )));
    }
    let n = m.dim();
    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n <= 1 || a.off_diagonal_norm() <= tol::JACOBI_OFF_NORM;
    let mut sweeps = 0;
    while !converged && sweeps < tol::JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = a.off_diagonal_norm() <= tol::JACOBI_OFF_NORM;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            off_norm: a.off_diagonal_norm(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok((eigenvalues, vectors))
}

/// One Jacobi rotation annihilating the (p, q) entry of the Hermitian
/// working matrix `a`, accumulating the transform into `v`.
///
/// With α = a[p][p], γ = a[q][q] (both real) and β = a[p][q] = |β|·e^{iφ},
/// the unitary differs from the identity only in the 2×2 block
///
/// ```text
///   U[p][p] = c    U[p][q] = −s·e^{iφ}
///   U[q][p] = s·e^{−iφ}    U[q][q] = c
/// ```
///
/// Zeroing (U†AU)[p][q] requires (γ−α)·c·s + |β|·(c²−s²) = 0, i.e.
/// t² − 2τt − 1 = 0 with τ = (γ−α)/(2|β|) and t = s/c; the root of smaller
/// magnitude, t = −sign(τ)/(|τ| + √(1+τ²)), keeps the rotation angle ≤ 45°.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a.get(p, q);
    let babs = beta.norm();
    if babs == 0.0 {
        return;
    }
    let phase = beta / babs;
    let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * babs);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    // A ← AU, V ← VU (column update)
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, c * akp + s * phase.conj() * akq);
        a.set(k, q, -s * phase * akp + c * akq);

        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, c * vkp + s * phase.conj() * vkq);
        v.set(k, q, -s * phase * vkp + c * vkq);
    }
    // A ← U†A (row update)
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, c * apk + s * phase * aqk);
        a.set(q, k, -s * phase.conj() * apk + c * aqk);
    }
    // pin the annihilated pair and keep the diagonal exactly real
    a.set(p, q, Complex64::ZERO);
    a.set(q, p, Complex64::ZERO);
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    a.set(p, p, Complex64::new(app, 0.0));
    a.set(q, q, Complex64::new(aqq, 0.0));
}
