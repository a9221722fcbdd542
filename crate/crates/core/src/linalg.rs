//! Dense complex matrices: products, the matrix exponential, and functions of
//! Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape { what: "matmul inner dimensions differ" });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::Shape { what: "matvec dimension mismatch" });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c.conj()).collect() }
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape { what: "elementwise operands differ in shape" });
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &CMatrix) -> Result<CMatrix> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute row sum (induced ∞-norm).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().map(|c| c.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Leading `n × n` block.
    pub fn leading_block(&self, n: usize) -> CMatrix {
        CMatrix::from_fn(n.min(self.rows), n.min(self.cols), |i, j| self[(i, j)])
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    pub fn expm(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::Shape { what: "expm of non-square matrix" });
        }
        let norm = self.norm_inf();
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let a = self.scale(Complex64::new(scale, 0.0));
        let n = self.rows;
        let mut result = CMatrix::identity(n);
        let mut term = CMatrix::identity(n);
        let mut converged = false;
        for k in 1..60 {
            term = term.matmul(&a)?.scale(Complex64::new(1.0 / k as f64, 0.0));
            result = result.add(&term)?;
            if term.max_abs() <= f64::EPSILON * 1e-2 * result.max_abs() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence { what: "expm Taylor core", terms: 60 });
        }
        for _ in 0..squarings {
            result = result.matmul(&result)?;
        }
        Ok(result)
    }

    /// `f(H)` for Hermitian `H`, via the real symmetric embedding
    /// `[[Re H, −Im H], [Im H, Re H]]` and cyclic Jacobi rotations.
    pub fn hermitian_function(&self, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::Shape { what: "hermitian_function of non-square matrix" });
        }
        let herm_dev = self.sub(&self.adjoint())?.max_abs();
        if herm_dev > 1e-12 * self.max_abs().max(1.0) {
            return Err(Error::Shape { what: "matrix is not Hermitian" });
        }
        let dim = 2 * n;
        let mut a = vec![0.0; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let h = self[(i, j)];
                a[i * dim + j] = h.re;
                a[(i + n) * dim + (j + n)] = h.re;
                a[i * dim + (j + n)] = -h.im;
                a[(i + n) * dim + j] = h.im;
            }
        }
        let (values, vectors) = symmetric_jacobi(a, dim)?;
        // R = Q f(Λ) Qᵀ; f(H) = R₀₀ + i R₁₀.
        let fv: Vec<f64> = values.iter().map(|&l| f(l)).collect();
        let r = |i: usize, j: usize| -> f64 { (0..dim).map(|k| vectors[i * dim + k] * fv[k] * vectors[j * dim + k]).sum() };
        Ok(CMatrix::from_fn(n, n, |i, j| Complex64::new(r(i, j), r(i + n, j))))
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.rows;
        let dim = 2 * n;
        let mut a = vec![0.0; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let h = self[(i, j)];
                a[i * dim + j] = h.re;
                a[(i + n) * dim + (j + n)] = h.re;
                a[i * dim + (j + n)] = -h.im;
                a[(i + n) * dim + j] = h.im;
            }
        }
        let (mut values, _) = symmetric_jacobi(a, dim)?;
        values.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
        // Every eigenvalue of the embedding appears twice.
        Ok(values.into_iter().step_by(2).collect())
    }
}

/// Cyclic Jacobi for a real symmetric `dim × dim` matrix (row-major).
/// Returns eigenvalues and the row-major matrix whose columns are eigenvectors.
fn symmetric_jacobi(mut a: Vec<f64>, dim: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..dim)
            .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * dim + j] * a[i * dim + j])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            let values = (0..dim).map(|i| a[i * dim + i]).collect();
            return Ok((values, v));
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q * dim + q] - a[p * dim + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NonConvergence { what: "Jacobi eigensolver", terms: 100 })
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `⟨u|v⟩ = Σ conj(uᵢ) vᵢ`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expm_of_rotation_generator() {
        // exp([[0, −t], [t, 0]]) is a rotation by t.
        let t = 1.3;
        let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(-t, 0.0),
            (1, 0) => c(t, 0.0),
            _ => c(0.0, 0.0),
        });
        let e = m.expm().unwrap();
        assert!((e[(0, 0)] - c(t.cos(), 0.0)).norm() < 1e-14);
        assert!((e[(1, 0)] - c(t.sin(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn expm_diagonal_and_inverse() {
        let m = CMatrix::from_diagonal(&[c(0.5, 1.0), c(-2.0, 0.0), c(3.0, -0.5)]);
        let e = m.expm().unwrap();
        for i in 0..3 {
            assert!((e[(i, i)] - m[(i, i)].exp()).norm() < 1e-12 * e[(i, i)].norm());
        }
        let a = CMatrix::from_fn(4, 4, |i, j| c((i as f64 - j as f64) * 0.3, (i * j) as f64 * 0.1));
        let prod = a.expm().unwrap().matmul(&a.scale(c(-1.0, 0.0)).expm().unwrap()).unwrap();
        assert!(prod.sub(&CMatrix::identity(4)).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn hermitian_function_matches_eigen_structure() {
        let h = CMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                c(1.0 + i as f64, 0.0)
            } else if i < j {
                c(0.2, 0.1 * (i + j) as f64)
            } else {
                c(0.2, -0.1 * (i + j) as f64)
            }
        });
        let id = h.hermitian_function(|_| 1.0).unwrap();
        assert!(id.sub(&CMatrix::identity(3)).unwrap().max_abs() < 1e-13);
        let same = h.hermitian_function(|x| x).unwrap();
        assert!(same.sub(&h).unwrap().max_abs() < 1e-13);
        let sq = h.hermitian_function(|x| x * x).unwrap();
        assert!(sq.sub(&h.matmul(&h).unwrap()).unwrap().max_abs() < 1e-12);
        let ev = h.hermitian_eigenvalues().unwrap();
        let trace: f64 = ev.iter().sum();
        assert!((trace - 6.0).abs() < 1e-12);
        assert!(CMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 0.0)).hermitian_function(|x| x).is_err());
    }
}
