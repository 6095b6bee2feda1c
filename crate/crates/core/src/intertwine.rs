//! The map `σ: v(p, q) → v(p + q, 0)` intertwining the j-maps along a mode
//! direction.
//!
//! `σ` fixes the first `p` octonion slots and sends each of the last `q`
//! slots to `conj(X_k · ι(ν))`, where `ν` is a unit vector orthogonal to the
//! mode direction. It satisfies
//!
//! ```text
//! σ ∘ j^(p,q)_{ι(Z)} = j^(p+q,0)_{ι(Z)} ∘ σ      for Z on the ray of the mode direction.
//! ```
//!
//! Pulling functions back along `σ` therefore turns the `(p+q, 0)` fiber
//! operator into the `(p, q)` one: `Δ̃^(p,q)(f ∘ σ) = (Δ̃^(p+q,0) f) ∘ σ`.

use serde::Serialize;

use crate::compalg::{conj_matrix, CompositionElement};
use crate::error::{Error, Result};
use crate::heisalg::{unit_vector, HeisenbergAlgebra};
use crate::matrix::DenseMatrix;
use crate::poly::ModePolynomial;
use crate::scalar::{dot, Scalar};

/// Tolerance used to validate floating `ν` (orthogonality and unit norm).
pub const NU_TOLERANCE: f64 = 1e-12;

/// Deterministic unit vector orthogonal to `z_dir`: Gram–Schmidt applied to the
/// first standard basis vector that is not parallel to `z_dir`.
pub fn choose_nu<T: Scalar>(z_dir: &[T]) -> Result<Vec<T>> {
    if z_dir.len() < 2 {
        return Err(Error::InvalidParameters("need at least two center dimensions to choose ν".into()));
    }
    if z_dir.iter().all(|x| x.is_zero()) {
        return Err(Error::DegenerateDirection);
    }
    let n = z_dir.len();
    let k = (0..n)
        .find(|&k| z_dir.iter().enumerate().any(|(i, x)| i != k && !x.is_zero()) || z_dir[k].is_zero())
        .expect("a non-zero vector in dimension >= 2 is not parallel to every basis vector");
    let zz = dot(z_dir, z_dir);
    let coef = z_dir[k].clone() / zz;
    let w: Vec<T> = (0..n)
        .map(|i| {
            let e = if i == k { T::one() } else { T::zero() };
            e - coef.clone() * z_dir[i].clone()
        })
        .collect();
    let norm = dot(&w, &w).sqrt_checked().ok_or(Error::IrrationalNorm)?;
    Ok(w.into_iter().map(|x| x / norm.clone()).collect())
}

/// Explicit matrix of `σ` together with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaMap<T> {
    source: HeisenbergAlgebra,
    target: HeisenbergAlgebra,
    z_dir: Vec<T>,
    nu: Vec<T>,
    matrix: DenseMatrix<T>,
}

impl<T: Scalar> SigmaMap<T> {
    /// Builds `σ` for `source = n(p, q)`; `nu` defaults to [`choose_nu`].
    pub fn new(source: HeisenbergAlgebra, z_dir: &[T], nu: Option<&[T]>) -> Result<Self> {
        let dim_z = source.dim_z();
        if z_dir.len() != dim_z {
            return Err(Error::DimensionMismatch { expected: dim_z, found: z_dir.len() });
        }
        if z_dir.iter().all(|x| x.is_zero()) {
            return Err(Error::DegenerateDirection);
        }
        let nu = match nu {
            Some(nu) => {
                validate_nu(z_dir, nu)?;
                nu.to_vec()
            }
            None => choose_nu(z_dir)?,
        };
        let kind = source.kind();
        let n = kind.dim();
        let slot = &conj_matrix::<T>(kind) * &CompositionElement::embed_pure(kind, &nu)?.right_mul_matrix();
        let mut matrix = DenseMatrix::identity(source.dim_v());
        for k in source.p()..source.p() + source.q() {
            matrix.set_block(k * n, k * n, &slot);
        }
        Ok(Self { source, target: source.isotypic_partner(), z_dir: z_dir.to_vec(), nu, matrix })
    }

    /// `σ = Id`, used for the zero mode where no unit direction exists.
    pub fn identity(source: HeisenbergAlgebra) -> Self {
        let dim_z = source.dim_z();
        Self {
            source,
            target: source.isotypic_partner(),
            z_dir: vec![T::zero(); dim_z],
            nu: vec![T::zero(); dim_z],
            matrix: DenseMatrix::identity(source.dim_v()),
        }
    }

    pub fn source(&self) -> HeisenbergAlgebra {
        self.source
    }

    pub fn target(&self) -> HeisenbergAlgebra {
        self.target
    }

    pub fn z_dir(&self) -> &[T] {
        &self.z_dir
    }

    pub fn nu(&self) -> &[T] {
        &self.nu
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }

    /// `σᵀσ − Id`.
    pub fn orthogonality_residual(&self) -> DenseMatrix<T> {
        &(&self.matrix.transpose() * &self.matrix) - &DenseMatrix::identity(self.matrix.rows())
    }

    /// `σ ∘ j^src_{s·z} − j^dst_{s·z} ∘ σ`; identically zero on the whole ray.
    pub fn j_intertwine_residual(&self, scale: &T) -> DenseMatrix<T> {
        let z: Vec<T> = self.z_dir.iter().map(|x| x.clone() * scale.clone()).collect();
        let j_src = self.source.j_matrix(&z).expect("z_dir length validated");
        let j_dst = self.target.j_matrix(&z).expect("same center dimension");
        &(&self.matrix * &j_src) - &(&j_dst * &self.matrix)
    }

    /// `f ↦ f ∘ σ`. `f` lives on the `(p+q, 0)` side, the result on `(p, q)`.
    pub fn pullback(&self, f: &ModePolynomial<T>) -> Result<ModePolynomial<T>> {
        f.substitute_linear(&self.matrix)
    }

    pub fn residual_report(&self, scale: &T) -> ResidualReport {
        let r = self.j_intertwine_residual(scale);
        ResidualReport {
            p: self.source.p(),
            q: self.source.q(),
            z_dir: self.z_dir.iter().map(Scalar::to_f64_lossy).collect(),
            nu: self.nu.iter().map(Scalar::to_f64_lossy).collect(),
            residual_norm: r.frobenius_norm(),
            exact: T::EXACT,
        }
    }
}

fn validate_nu<T: Scalar>(z_dir: &[T], nu: &[T]) -> Result<()> {
    if nu.len() != z_dir.len() {
        return Err(Error::InvalidNu(format!("length {} does not match the center dimension {}", nu.len(), z_dir.len())));
    }
    let overlap = dot(nu, z_dir);
    if !overlap.is_negligible(NU_TOLERANCE) {
        return Err(Error::InvalidNu(format!("not orthogonal to the mode direction (<ν, Z> = {overlap:?})")));
    }
    let defect = dot(nu, nu) - T::one();
    if !defect.is_negligible(NU_TOLERANCE) {
        return Err(Error::InvalidNu("not a unit vector".into()));
    }
    Ok(())
}

/// JSON record of one matrix-level intertwining check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub p: usize,
    pub q: usize,
    pub z_dir: Vec<f64>,
    pub nu: Vec<f64>,
    pub residual_norm: f64,
    pub exact: bool,
}

/// Residual reports for every center basis direction with the canonical `ν`.
pub fn basis_residuals<T: Scalar>(source: HeisenbergAlgebra) -> Result<Vec<ResidualReport>> {
    (0..source.dim_z())
        .map(|k| {
            let sig = SigmaMap::<T>::new(source, &unit_vector(source.dim_z(), k), None)?;
            Ok(sig.residual_report(&T::one()))
        })
        .collect()
}
