//! Hermitian eigensolves for Hermite truncations.
//!
//! Small problems use a dense Hermitian eigendecomposition. Large ones use
//! Lanczos with full reorthogonalization and explicit locking: every restart
//! cycle locks one converged extreme Ritz pair and later cycles run in the
//! orthogonal complement of the locked vectors, so repeated eigenvalues are
//! recovered with their multiplicities.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::hermite::HermiteTruncation;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenConfig {
    /// Largest basis handled by the dense solver.
    pub dense_limit: usize,
    /// Relative residual `|Hx − θx| / max(1, |θ|)` required to lock a Ritz pair.
    pub tol: f64,
    /// Krylov dimension per restart cycle.
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self { dense_limit: 2000, tol: 1e-10, krylov_dim: 80, max_restarts: 200, seed: 0x5eed }
    }
}

/// All eigenvalues, ascending, from a dense Hermitian solve.
pub fn dense_eigenvalues(t: &HermiteTruncation) -> Vec<f64> {
    let mut ev: Vec<f64> = t.to_dense().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// The `k` extreme eigenvalues, ascending: the `ceil(k/2)` smallest followed
/// by the `floor(k/2)` largest. Returns the whole spectrum when `k >= size`.
pub fn extreme_eigenvalues(t: &HermiteTruncation, k: usize, cfg: &EigenConfig) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let n = t.size();
    let (low, high) = ((k + 1) / 2, k / 2);
    if n <= cfg.dense_limit || k >= n {
        let all = dense_eigenvalues(t);
        if k >= n {
            return Ok(all);
        }
        let mut out = all[..low].to_vec();
        out.extend_from_slice(&all[n - high..]);
        return Ok(out);
    }
    let mut bottom = lanczos_largest(t, -1.0, low, cfg)?;
    bottom.iter_mut().for_each(|x| *x = -*x);
    let mut top = lanczos_largest(t, 1.0, high, cfg)?;
    bottom.sort_by(f64::total_cmp);
    top.sort_by(f64::total_cmp);
    bottom.extend(top);
    Ok(bottom)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

fn project_out(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for q in basis {
        let c = dot(q, v);
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= c * qi;
        }
    }
}

/// `count` largest eigenvalues of `sign · M`, descending.
fn lanczos_largest(t: &HermiteTruncation, sign: f64, count: usize, cfg: &EigenConfig) -> Result<Vec<f64>> {
    let n = t.size();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ sign.to_bits());
    let apply = |x: &[Complex64], y: &mut [Complex64]| {
        t.apply(x, y);
        if sign != 1.0 {
            y.iter_mut().for_each(|v| *v *= sign);
        }
    };
    let mut locked: Vec<Vec<Complex64>> = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    let mut start: Option<Vec<Complex64>> = None;
    let mut restarts = 0usize;

    while locked.len() < count {
        let mut v = start.take().unwrap_or_else(|| (0..n).map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect());
        project_out(&mut v, &locked);
        project_out(&mut v, &locked);
        let nv = norm(&v);
        if nv == 0.0 {
            return Err(Error::NoConvergence("start vector lies in the locked subspace".into()));
        }
        v.iter_mut().for_each(|x| *x /= nv);

        let m_max = cfg.krylov_dim.min(n - locked.len());
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m_max);
        let mut alpha: Vec<f64> = Vec::with_capacity(m_max);
        let mut beta: Vec<f64> = Vec::with_capacity(m_max);
        let mut w = vec![Complex64::default(); n];
        basis.push(v);
        loop {
            let j = basis.len() - 1;
            apply(&basis[j], &mut w);
            alpha.push(dot(&basis[j], &w).re);
            // Full reorthogonalization, twice.
            for _ in 0..2 {
                project_out(&mut w, &locked);
                project_out(&mut w, &basis);
            }
            let b = norm(&w);
            if basis.len() == m_max || b <= 1e-13 * alpha.iter().fold(1.0f64, |a, x| a.max(x.abs())) {
                beta.push(b);
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }

        let m = alpha.len();
        let tri = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(tri);
        let top = (0..m).max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b])).expect("non-empty");
        let theta = eig.eigenvalues[top];
        let y = eig.eigenvectors.column(top);
        let mut x = vec![Complex64::default(); n];
        for (qi, yi) in basis.iter().zip(y.iter()) {
            for (xk, qk) in x.iter_mut().zip(qi) {
                *xk += qk * *yi;
            }
        }
        let nx = norm(&x);
        x.iter_mut().for_each(|v| *v /= nx);
        apply(&x, &mut w);
        let resid = w.iter().zip(&x).map(|(a, b)| (a - b * theta).norm_sqr()).sum::<f64>().sqrt();
        if resid <= cfg.tol * theta.abs().max(1.0) {
            locked.push(x);
            values.push(theta);
            restarts = 0;
        } else {
            restarts += 1;
            if restarts > cfg.max_restarts {
                return Err(Error::NoConvergence(format!(
                    "Ritz residual {resid:.3e} after {} restarts (locked {} of {count})",
                    cfg.max_restarts,
                    locked.len()
                )));
            }
            start = Some(x);
        }
    }
    Ok(values)
}

/// Sorted extreme spectra of two truncations and their largest deviation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub k: usize,
    pub max_abs_diff: f64,
    pub eigenvalues_a: Vec<f64>,
    pub eigenvalues_b: Vec<f64>,
}

pub fn compare_spectra(a: &HermiteTruncation, b: &HermiteTruncation, k: usize, cfg: &EigenConfig) -> Result<SpectrumComparison> {
    if a.size() != b.size() {
        return Err(Error::DimensionMismatch { expected: a.size(), found: b.size() });
    }
    let ea = extreme_eigenvalues(a, k, cfg)?;
    let eb = extreme_eigenvalues(b, k, cfg)?;
    let max_abs_diff = ea.iter().zip(&eb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(SpectrumComparison { k, max_abs_diff, eigenvalues_a: ea, eigenvalues_b: eb })
}
