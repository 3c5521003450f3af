use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix on the truncated number basis `|0⟩..|dim−1⟩`,
/// stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl FockOperator {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![ONE; dim])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// `|ψ⟩⟨φ|`.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Self {
        assert_eq!(ket.len(), bra.len());
        Self::from_fn(ket.len(), |i, j| ket[i] * bra[j].conj())
    }

    /// `|n⟩⟨m|`.
    pub fn basis_projector(dim: usize, n: usize, m: usize) -> Self {
        let mut out = Self::zeros(dim);
        out[(n, m)] = ONE;
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&v| v * k).collect() }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&v| v * k).collect() }
    }

    pub fn matmul(&self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len());
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &FockOperator) -> FockOperator {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, rhs: &FockOperator) -> FockOperator {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Largest entry of `|self − other|` restricted to the top-left `block × block` corner.
    pub fn max_abs_diff_block(&self, other: &FockOperator, block: usize) -> f64 {
        let block = block.min(self.dim).min(other.dim);
        let mut worst: f64 = 0.0;
        for i in 0..block {
            for j in 0..block {
                worst = worst.max((self[(i, j)] - other[(i, j)]).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &FockOperator) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Whether every eigenvalue of this (Hermitian) operator is at least `-tol`,
    /// decided by a Cholesky factorization of `self + tol·I`.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let n = self.dim;
        let mut l = vec![ZERO; n * n];
        for j in 0..n {
            let mut diag = self[(j, j)].re + tol;
            for k in 0..j {
                diag -= l[j * n + k].norm_sqr();
            }
            if diag < 0.0 || diag.is_nan() {
                return false;
            }
            let ljj = diag.sqrt();
            l[j * n + j] = Complex64::new(ljj, 0.0);
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = if ljj > 0.0 { s / ljj } else { ZERO };
            }
        }
        true
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn expm(&self) -> FockOperator {
        let n = self.dim;
        let norm = self.norm_one();
        if norm == 0.0 {
            return Self::identity(n);
        }
        // scale so that ‖A/2^s‖₁ ≤ ½, where 20 Taylor terms are far below rounding
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let scaled = self.scale_real(0.5_f64.powi(squarings));
        let mut sum = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=30 {
            term = term.matmul(&scaled).scale_real(1.0 / k as f64);
            sum = &sum + &term;
            if term.max_abs() <= f64::EPSILON * 1e-3 * sum.max_abs() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }
}

impl Index<(usize, usize)> for FockOperator {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for FockOperator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        FockOperator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        FockOperator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        self.matmul(rhs)
    }
}
