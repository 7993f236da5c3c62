//! Minimal dense complex-matrix support for the MIMO capacity evaluation.
//!
//! The only linear algebra the crate needs is `log det(I + c H H^dag)` for a
//! positive scale `c`. That matrix is Hermitian positive definite with every
//! eigenvalue at least one, so a plain Cholesky factorization is enough; no
//! eigen-decomposition and no external solver.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::math;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix dimensions must be nonzero"));
        }
        if data.len() != rows * cols {
            return Err(Error::Domain("matrix data length does not match dimensions"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Samples a matrix with i.i.d. zero-mean unit-variance complex Gaussian
    /// entries (real and imaginary parts each `N(0, 1/2)`).
    pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            data.push(Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2));
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Domain("matrix product dimension mismatch"));
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += lhs * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix `self * self^dag`, Hermitian positive semidefinite.
    pub fn gram(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n).expect("rows checked nonzero at construction");
        for i in 0..n {
            for j in 0..=i {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self[(i, k)] * self[(j, k)].conj();
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
        out
    }

    /// `log det(I + scale * self * self^dag)` via Cholesky.
    ///
    /// Valid for `scale >= 0`; the argument matrix then has eigenvalues
    /// `>= 1` so the factorization cannot break down.
    pub fn logdet_identity_plus_scaled_gram(&self, scale: f64) -> Result<f64> {
        if !scale.is_finite() || scale < 0.0 {
            return Err(Error::Domain("gram scale must be nonnegative"));
        }
        let n = self.rows;
        let mut a = self.gram();
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] *= scale;
            }
            a[(i, i)] += Complex64::new(1.0, 0.0);
        }

        // In-place lower Cholesky; only the lower triangle is referenced.
        let mut logdet = 0.0;
        for j in 0..n {
            let mut diag = a[(j, j)].re;
            for k in 0..j {
                diag -= a[(j, k)].norm_sqr();
            }
            if diag.is_nan() || diag <= 0.0 {
                return Err(Error::Domain("matrix not positive definite"));
            }
            let ljj = math::sqrt(diag);
            logdet += math::ln(ljj);
            a[(j, j)] = Complex64::new(ljj, 0.0);
            for i in (j + 1)..n {
                let mut acc = a[(i, j)];
                for k in 0..j {
                    acc -= a[(i, k)] * a[(j, k)].conj();
                }
                a[(i, j)] = acc / ljj;
            }
        }
        Ok(2.0 * logdet)
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}
