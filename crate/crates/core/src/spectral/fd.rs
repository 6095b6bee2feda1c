//! Finite-difference cross-validation of the symbolic fiber operator.
//!
//! The Laplacian uses axis-aligned second differences and the derivation term
//! a central difference along the vector field `j_{Z^α} X`, so the truncation
//! error is `O(h²)` and, for cubics, exactly proportional to `h²`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::ModePolynomial;
use crate::scalar::Scalar;
use crate::spectral::symbolic::FiberOperator;

/// Deviations below this are treated as rounding noise when fitting an order.
const NOISE_FLOOR: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FdConsistency {
    pub step: f64,
    pub deviation: f64,
    pub half_step_deviation: f64,
    /// `log2(deviation / half_step_deviation)`; `None` when both are rounding noise.
    pub order: Option<f64>,
}

/// Central-difference evaluation of `Δ̃_α f` at `x`.
pub fn fd_apply<T: Scalar>(op: &FiberOperator<T>, f: &ModePolynomial<T>, x: &[f64], h: f64) -> Complex64 {
    let n = x.len();
    let f0 = f.eval(x);
    let mut probe = x.to_vec();
    let mut lap = Complex64::new(0.0, 0.0);
    for i in 0..n {
        probe[i] = x[i] + h;
        let fp = f.eval(&probe);
        probe[i] = x[i] - h;
        let fm = f.eval(&probe);
        probe[i] = x[i];
        lap += (fp - f0 * 2.0 + fm) / (h * h);
    }
    let pi = std::f64::consts::PI;
    let norm2 = op.mode().norm2() as f64;
    if norm2 == 0.0 {
        return lap;
    }
    let v = op.j_matrix().to_f64().mul_vec(x);
    let plus: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + h * b).collect();
    let minus: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a - h * b).collect();
    let deriv = (f.eval(&plus) - f.eval(&minus)) / (2.0 * h);
    let r2: f64 = x.iter().map(|a| a * a).sum();
    let c = op.coeff_c().to_f64_lossy();
    lap + Complex64::new(0.0, 2.0 * pi) * deriv - f0 * (4.0 * pi * pi * norm2 * (1.0 + c * r2))
}

/// Largest `|symbolic − finite difference|` over `points`.
pub fn fd_deviation<T: Scalar>(op: &FiberOperator<T>, f: &ModePolynomial<T>, h: f64, points: &[Vec<f64>]) -> Result<f64> {
    let exact = op.fiber_apply(f)?;
    let mut worst = 0.0f64;
    for x in points {
        if x.len() != f.nvars() {
            return Err(Error::DimensionMismatch { expected: f.nvars(), found: x.len() });
        }
        worst = worst.max((exact.eval(x) - fd_apply(op, f, x, h)).norm());
    }
    Ok(worst)
}

/// Deviation at steps `h` and `h/2` with the fitted convergence order.
pub fn finite_difference_consistency<T: Scalar>(
    op: &FiberOperator<T>,
    f: &ModePolynomial<T>,
    h: f64,
    points: &[Vec<f64>],
) -> Result<FdConsistency> {
    let deviation = fd_deviation(op, f, h, points)?;
    let half_step_deviation = fd_deviation(op, f, h / 2.0, points)?;
    let order = (deviation > NOISE_FLOOR && half_step_deviation > NOISE_FLOOR)
        .then(|| (deviation / half_step_deviation).log2());
    Ok(FdConsistency { step: h, deviation, half_step_deviation, order })
}
