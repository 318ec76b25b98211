//! Dense square complex matrices, sized for two-qubit work.
//!
//! Storage is row-major over `Complex64`. Nothing here is tuned for large
//! dimensions; the point is a dependency-free, auditable carrier for the
//! 4x4 Hamiltonians, density matrices, and propagators the rest of the
//! crate manipulates.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::{Float, Zero};

/// Dense square matrix of `Complex64` entries in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Panics unless
    /// `data.len() == dim * dim` and `dim > 0`.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        assert_eq!(data.len(), dim * dim, "entry count must equal dim^2");
        ComplexMatrix { dim, data }
    }

    /// The zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self::new(dim, vec![Complex64::zero(); dim * dim])
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Diagonal matrix from complex diagonal entries.
    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    /// Diagonal matrix from real diagonal entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(x, 0.0));
        }
        m
    }

    /// Side length of the matrix.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at (row, col). Panics on out-of-range indices.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.data[row * self.dim + col]
    }

    /// Overwrites the entry at (row, col). Panics on out-of-range indices.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.data[row * self.dim + col] = value;
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose M†.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        let data = self.data.iter().map(|z| z.conj()).collect();
        Self::new(self.dim, data)
    }

    /// Kronecker product `self ⊗ other`; the left factor indexes the
    /// coarse blocks.
    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let n = self.dim * other.dim;
        let mut out = Self::zeros(n);
        for ar in 0..self.dim {
            for ac in 0..self.dim {
                let a = self.get(ar, ac);
                for br in 0..other.dim {
                    for bc in 0..other.dim {
                        out.set(ar * other.dim + br, ac * other.dim + bc, a * other.get(br, bc));
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product M·v. Panics unless `v.len() == dim`.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must equal matrix dimension");
        (0..self.dim)
            .map(|r| {
                v.iter()
                    .enumerate()
                    .map(|(c, &vc)| self.get(r, c) * vc)
                    .sum()
            })
            .collect()
    }

    /// Adjoint-times-vector M†·v without materializing the adjoint.
    pub fn adjoint_matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must equal matrix dimension");
        let mut out = vec![Complex64::zero(); self.dim];
        for (r, &vr) in v.iter().enumerate() {
            for (c, slot) in out.iter_mut().enumerate() {
                *slot += self.get(r, c).conj() * vr;
            }
        }
        out
    }

    /// Copy of column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, c)).collect()
    }

    /// Overwrites column `c`. Panics unless `v.len() == dim`.
    pub fn set_column(&mut self, c: usize, v: &[Complex64]) {
        assert_eq!(v.len(), self.dim, "vector length must equal matrix dimension");
        for (r, &z) in v.iter().enumerate() {
            self.set(r, c, z);
        }
    }

    /// Entrywise scaling by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let data = self.data.iter().map(|z| z * factor).collect();
        Self::new(self.dim, data)
    }

    /// Frobenius norm √Σ|m_ij|².
    pub fn frobenius_norm(&self) -> f64 {
        Float::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// Largest elementwise |self − other|. Panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when every entry is finite (no NaN or infinity in either
    /// component).
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// True when max|M − M†| ≤ tol elementwise.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        for r in 0..self.dim {
            for c in r..self.dim {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// True when max|M†M − 1| ≤ tol elementwise.
    pub fn is_unitary(&self, tol: f64) -> bool {
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = Complex64::zero();
                for k in 0..self.dim {
                    acc += self.get(k, r).conj() * self.get(k, c);
                }
                let target = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::zero() };
                if (acc - target).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self.get(r, c);
                write!(f, "{:+.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let data = self.data.iter().zip(rhs.data.iter()).map(|(a, b)| a + b).collect();
        ComplexMatrix::new(self.dim, data)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let data = self.data.iter().zip(rhs.data.iter()).map(|(a, b)| a - b).collect();
        ComplexMatrix::new(self.dim, data)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == Complex64::zero() {
                    continue;
                }
                for c in 0..n {
                    let cur = out.get(r, c);
                    out.set(r, c, cur + a * rhs.get(k, c));
                }
            }
        }
        out
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Complex64) -> ComplexMatrix {
        self.scaled(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scaled(Complex64::new(rhs, 0.0))
    }
}

/// Inner product ⟨a|b⟩ = Σ conj(a_i)·b_i, conjugate-linear in the first
/// argument. Panics on length mismatch.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// The 2x2 Pauli matrices.
pub mod pauli {
    use super::ComplexMatrix;
    use alloc::vec;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// σ_x = [[0, 1], [1, 0]].
    pub fn x() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    /// σ_y = [[0, −i], [i, 0]].
    pub fn y() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
    }

    /// σ_z = [[1, 0], [0, −1]].
    pub fn z() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
    }
}
