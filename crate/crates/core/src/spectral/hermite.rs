//! Galerkin truncation of second-order operators in the tensor Hermite-function
//! basis `h_n(X) = Π_i h_{n_i}(x_i)` with `|n| ≤ d`.
//!
//! Matrix elements come from the one-dimensional ladder relations
//!
//! ```text
//! x h_n = sqrt((n+1)/2) h_{n+1} + sqrt(n/2) h_{n-1}
//! h_n'  = sqrt(n/2) h_{n-1} − sqrt((n+1)/2) h_{n+1}
//! ```
//!
//! so every operator assembles from banded 1-D factors.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::Monomial;
use crate::scalar::Scalar;
use crate::spectral::symbolic::FiberOperator;

/// Default cap on the number of basis functions.
pub const DEFAULT_BASIS_CAP: usize = 5000;

/// `H = Δ + i Σ_{i,k} B_ik x_k ∂_i + shift + radial |X|²` on `R^dim`.
///
/// `B` is real; when it is antisymmetric the operator is Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteOperator {
    dim: usize,
    drift: Option<DenseMatrix<f64>>,
    shift: f64,
    radial: f64,
}

impl HermiteOperator {
    pub fn new(dim: usize, drift: Option<DenseMatrix<f64>>, shift: f64, radial: f64) -> Result<Self> {
        if let Some(b) = &drift {
            if b.rows() != dim || b.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: b.rows() });
            }
        }
        Ok(Self { dim, drift, shift, radial })
    }

    /// Harmonic-oscillator calibration operator `Δ − |X|²`, whose exact
    /// eigenvalues are `−(2|n| + dim)`.
    pub fn calibration(dim: usize) -> Self {
        Self { dim, drift: None, shift: 0.0, radial: -1.0 }
    }

    /// Floating form of a fiber operator: `B = 2π j_{Z^α}`,
    /// `shift = −4π²|α|²`, `radial = −4π²|α|² c`.
    pub fn from_fiber<T: Scalar>(op: &FiberOperator<T>) -> Self {
        let two_pi = 2.0 * std::f64::consts::PI;
        let norm2 = op.mode().norm2() as f64;
        let shift = -two_pi * two_pi * norm2;
        let drift = (!op.mode().is_zero()).then(|| op.j_matrix().to_f64().scale(&two_pi));
        Self { dim: op.algebra().dim_v(), drift, shift, radial: shift * op.coeff_c().to_f64_lossy() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn without_drift(mut self) -> Self {
        self.drift = None;
        self
    }

    /// Assembles the truncation to total degree `max_degree`.
    pub fn truncate(&self, max_degree: u32, cap: usize) -> Result<HermiteTruncation> {
        let size = basis_size(self.dim, max_degree);
        if size > cap {
            return Err(Error::ResourceLimit { size, cap });
        }
        let basis = Monomial::up_to_degree(self.dim, max_degree);
        debug_assert_eq!(basis.len(), size);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let drift_terms: Vec<(usize, usize, f64)> = match &self.drift {
            Some(b) => (0..self.dim)
                .flat_map(|i| b.row_nonzeros(i).into_iter().map(move |(k, v)| (i, k, v)))
                .collect(),
            None => Vec::new(),
        };

        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); size];
        let push = |m: &Monomial, col: usize, v: Complex64, rows: &mut Vec<Vec<(usize, Complex64)>>| {
            if let Some(&row) = index.get(m) {
                rows[row].push((col, v));
            }
        };

        for (col, n) in basis.iter().enumerate() {
            let e = n.exponents();
            let half_sum: f64 = e.iter().map(|&k| f64::from(k) + 0.5).sum();
            let diag = -half_sum + self.shift + self.radial * half_sum;
            push(n, col, Complex64::new(diag, 0.0), &mut rows);

            // ∂_i² and x_i² share their ±2 bands.
            let band = 1.0 + self.radial;
            if band != 0.0 {
                for i in 0..self.dim {
                    let k = f64::from(e[i]);
                    push(&shift_index(n, i, 2), col, Complex64::new(band * ((k + 1.0) * (k + 2.0)).sqrt() / 2.0, 0.0), &mut rows);
                    if e[i] >= 2 {
                        push(&shift_index(n, i, -2), col, Complex64::new(band * (k * (k - 1.0)).sqrt() / 2.0, 0.0), &mut rows);
                    }
                }
            }

            for &(i, k, b) in &drift_terms {
                for (target, value) in x_d_images(n, k, i) {
                    push(&target, col, Complex64::new(0.0, b * value), &mut rows);
                }
            }
        }

        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| v.norm() != 0.0);
            *row = merged;
        }
        Ok(HermiteTruncation { max_total_degree: max_degree, basis, rows })
    }
}

/// `C(dim + d, d)`.
pub fn basis_size(dim: usize, d: u32) -> usize {
    let mut acc: u128 = 1;
    for k in 1..=u128::from(d) {
        acc = acc * (dim as u128 + k) / k;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

fn shift_index(n: &Monomial, i: usize, delta: i32) -> Monomial {
    let mut e = n.exponents().to_vec();
    e[i] = (i32::from(e[i]) + delta) as u8;
    Monomial::from_exponents(&e)
}

/// Images of `x_k ∂_i h_n` as `(multi-index, coefficient)` pairs.
fn x_d_images(n: &Monomial, k: usize, i: usize) -> Vec<(Monomial, f64)> {
    let ni = f64::from(n.exponents()[i]);
    // ∂_i h_n
    let mut after_d: Vec<(Monomial, f64)> = vec![(shift_index(n, i, 1), -((ni + 1.0) / 2.0).sqrt())];
    if n.exponents()[i] > 0 {
        after_d.push((shift_index(n, i, -1), (ni / 2.0).sqrt()));
    }
    let mut out = Vec::with_capacity(4);
    for (m, c) in after_d {
        let nk = f64::from(m.exponents()[k]);
        out.push((shift_index(&m, k, 1), c * ((nk + 1.0) / 2.0).sqrt()));
        if m.exponents()[k] > 0 {
            out.push((shift_index(&m, k, -1), c * (nk / 2.0).sqrt()));
        }
    }
    out
}

/// Truncated Hermite-basis matrix, stored by rows.
#[derive(Clone, Debug)]
pub struct HermiteTruncation {
    max_total_degree: u32,
    basis: Vec<Monomial>,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl HermiteTruncation {
    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|p| self.rows[row][p].1)
            .unwrap_or_default()
    }

    pub fn row(&self, row: usize) -> &[(usize, Complex64)] {
        &self.rows[row]
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// `y = M x`.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (yi, row) in y.iter_mut().zip(&self.rows) {
            *yi = row.iter().map(|&(j, v)| v * x[j]).sum();
        }
    }

    /// Frobenius norm of `M − M†`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut acc = 0.0;
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                acc += (v - self.entry(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compalg::AlgebraKind;
    use crate::heisalg::HeisenbergAlgebra;
    use crate::poly::FourierMode;

    /// Orthonormal Hermite functions on a grid via the three-term recurrence.
    fn hermite_functions(nmax: usize, x: f64) -> Vec<f64> {
        let mut h = vec![0.0; nmax + 1];
        h[0] = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
        if nmax >= 1 {
            h[1] = 2f64.sqrt() * x * h[0];
        }
        for n in 1..nmax {
            h[n + 1] = (2.0 / (n as f64 + 1.0)).sqrt() * x * h[n] - (n as f64 / (n as f64 + 1.0)).sqrt() * h[n - 1];
        }
        h
    }

    /// `∫ h_m h_n''` by trapezoid quadrature, using `h_n'' = (x² − 2n − 1) h_n`.
    fn quadrature_laplacian_1d(nmax: usize) -> Vec<Vec<f64>> {
        let (a, steps) = (12.0, 24_000);
        let dx = 2.0 * a / steps as f64;
        let mut m = vec![vec![0.0; nmax + 1]; nmax + 1];
        for s in 0..=steps {
            let x = -a + s as f64 * dx;
            let w = if s == 0 || s == steps { 0.5 * dx } else { dx };
            let h = hermite_functions(nmax, x);
            for i in 0..=nmax {
                for j in 0..=nmax {
                    m[i][j] += w * h[i] * (x * x - 2.0 * j as f64 - 1.0) * h[j];
                }
            }
        }
        m
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_size(16, 3), 969);
        assert_eq!(basis_size(2, 2), 6);
        assert_eq!(basis_size(16, 4), 4845);
    }

    #[test]
    fn free_laplacian_matches_quadrature() {
        let op = HermiteOperator::new(2, None, 0.0, 0.0).unwrap();
        let t = op.truncate(2, DEFAULT_BASIS_CAP).unwrap();
        let one_d = quadrature_laplacian_1d(4);
        for (r, m) in t.basis().iter().enumerate() {
            for (c, n) in t.basis().iter().enumerate() {
                let (m, n) = (m.exponents(), n.exponents());
                // Δ = ∂_1² ⊗ I + I ⊗ ∂_2².
                let mut expect = 0.0;
                if m[1] == n[1] {
                    expect += one_d[m[0] as usize][n[0] as usize];
                }
                if m[0] == n[0] {
                    expect += one_d[m[1] as usize][n[1] as usize];
                }
                let got = t.entry(r, c);
                assert!((got.re - expect).abs() < 1e-9 && got.im == 0.0, "({r},{c}) {got} vs {expect}");
            }
        }
    }

    #[test]
    fn calibration_operator_is_exactly_diagonal() {
        let t = HermiteOperator::calibration(3).truncate(4, DEFAULT_BASIS_CAP).unwrap();
        for (i, n) in t.basis().iter().enumerate() {
            assert_eq!(t.row(i).len(), 1);
            assert_eq!(t.entry(i, i), Complex64::new(-(2.0 * f64::from(n.degree()) + 3.0), 0.0));
        }
    }

    #[test]
    fn fiber_truncation_is_hermitian() {
        let alg = HeisenbergAlgebra::new(AlgebraKind::Octonion, 1, 1).unwrap();
        let op = FiberOperator::<f64>::new(alg, FourierMode::basis(7, 0)).unwrap();
        let t = HermiteOperator::from_fiber(&op).truncate(3, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(t.size(), 969);
        assert!(t.hermiticity_error() < 1e-12);
        assert!(t.row(0).iter().any(|(_, v)| v.im != 0.0) || t.row(1).iter().any(|(_, v)| v.im != 0.0));
    }

    #[test]
    fn cap_is_enforced() {
        let op = HermiteOperator::calibration(16);
        assert!(matches!(op.truncate(4, 2000), Err(Error::ResourceLimit { size: 4845, cap: 2000 })));
    }
}
