//! Fiber Laplacians on Fourier modes: exact symbolic action, Hermite-basis
//! truncation, eigensolves and finite-difference cross-checks.

pub mod eigen;
pub mod fd;
pub mod hermite;
pub mod symbolic;

pub use eigen::{compare_spectra, extreme_eigenvalues, EigenConfig, SpectrumComparison};
pub use fd::{finite_difference_consistency, FdConsistency};
pub use hermite::{HermiteOperator, HermiteTruncation, DEFAULT_BASIS_CAP};
pub use symbolic::{intertwine_residual_sym, sigma_for_mode, FiberOperator, SymbolicResidual};

use crate::error::Result;
use crate::scalar::Scalar;

/// Hermite-basis truncation of a fiber operator to total degree `max_degree`.
pub fn hermite_matrix<T: Scalar>(op: &FiberOperator<T>, max_degree: u32, cap: usize) -> Result<HermiteTruncation> {
    HermiteOperator::from_fiber(op).truncate(max_degree, cap)
}
