//! Exact action of the fiber Laplacian on mode polynomials.
//!
//! On the mode `α` the operator is
//!
//! ```text
//! Δ̃_α φ = Δ_v φ + 2πi (j_{Z^α} X)•φ − 4π² |Z^α|² (1 + c |X|²) φ
//! ```
//!
//! with `(jX)•φ = Σ_i ∂φ/∂x_i · <jX, u_i>` and `c` the radial coefficient
//! (`dim v / 4` unless overridden).

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisalg::HeisenbergAlgebra;
use crate::intertwine::SigmaMap;
use crate::matrix::DenseMatrix;
use crate::poly::{FourierMode, ModePolynomial, Monomial, PiCoeff};
use crate::scalar::{dot, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct FiberOperator<T> {
    algebra: HeisenbergAlgebra,
    mode: FourierMode,
    coeff_c: T,
    j: DenseMatrix<T>,
    j_rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> FiberOperator<T> {
    /// Operator on mode `mode` with the default radial coefficient `dim v / 4`.
    pub fn new(algebra: HeisenbergAlgebra, mode: FourierMode) -> Result<Self> {
        if mode.len() != algebra.dim_z() {
            return Err(Error::DimensionMismatch { expected: algebra.dim_z(), found: mode.len() });
        }
        let j = algebra.j_matrix(&mode.z_vector::<T>())?;
        let j_rows = (0..j.rows()).map(|i| j.row_nonzeros(i)).collect();
        let coeff_c = T::from_ratio(algebra.dim_v() as i64, 4);
        Ok(Self { algebra, mode, coeff_c, j, j_rows })
    }

    pub fn with_coeff_c(mut self, c: T) -> Result<Self> {
        if c <= T::zero() {
            return Err(Error::InvalidParameters("the radial coefficient must be positive".into()));
        }
        self.coeff_c = c;
        Ok(self)
    }

    pub fn algebra(&self) -> HeisenbergAlgebra {
        self.algebra
    }

    pub fn mode(&self) -> &FourierMode {
        &self.mode
    }

    pub fn coeff_c(&self) -> &T {
        &self.coeff_c
    }

    /// `j_{Z^α}` on `v`.
    pub fn j_matrix(&self) -> &DenseMatrix<T> {
        &self.j
    }

    fn check_input(&self, f: &ModePolynomial<T>) -> Result<()> {
        if f.nvars() != self.algebra.dim_v() {
            return Err(Error::DimensionMismatch { expected: self.algebra.dim_v(), found: f.nvars() });
        }
        if f.mode() != &self.mode {
            return Err(Error::ModeMismatch(format!("operator mode ({}) vs polynomial mode ({})", self.mode, f.mode())));
        }
        Ok(())
    }

    /// `(j_{Z^α} X)•f`, a derivation that preserves degree.
    pub fn derivation_term(&self, f: &ModePolynomial<T>) -> Result<ModePolynomial<T>> {
        self.check_input(f)?;
        let mut out = ModePolynomial::zero(f.nvars(), self.mode.clone());
        for (m, c) in f.terms() {
            self.add_derivation(&mut out, m, c);
        }
        Ok(out)
    }

    pub fn laplacian(&self, f: &ModePolynomial<T>) -> Result<ModePolynomial<T>> {
        self.check_input(f)?;
        let mut out = ModePolynomial::zero(f.nvars(), self.mode.clone());
        for (m, c) in f.terms() {
            add_laplacian(&mut out, m, c);
        }
        Ok(out)
    }

    fn add_derivation(&self, out: &mut ModePolynomial<T>, m: &Monomial, c: &PiCoeff<T>) {
        let exps = m.exponents();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let de = c.scale(&T::from_u8(e).expect("u8 fits"));
            let lowered = m.bumped(i, 0, 1);
            for (k, jik) in &self.j_rows[i] {
                out.add_term(lowered.bumped(*k, 1, 0), &de.scale(jik));
            }
        }
    }

    /// Exact image `Δ̃_α f`.
    pub fn fiber_apply(&self, f: &ModePolynomial<T>) -> Result<ModePolynomial<T>> {
        self.check_input(f)?;
        let n = f.nvars();
        let two = T::from_i64(2).expect("small");
        let two_pi_i = PiCoeff::term(1, Complex::new(T::zero(), two));
        let norm2 = self.mode.norm2();
        let radial = PiCoeff::term(2, Complex::new(T::from_i64(-4 * norm2).expect("small"), T::zero()));
        let mut out = ModePolynomial::zero(n, self.mode.clone());
        for (m, c) in f.terms() {
            add_laplacian(&mut out, m, c);
            if norm2 != 0 {
                self.add_derivation(&mut out, m, &c.mul(&two_pi_i));
                let rc = c.mul(&radial);
                out.add_term(m.clone(), &rc);
                let rcc = rc.scale(&self.coeff_c);
                for i in 0..n {
                    out.add_term(m.bumped(i, 2, 0), &rcc);
                }
            }
        }
        Ok(out)
    }
}

fn add_laplacian<T: Scalar>(out: &mut ModePolynomial<T>, m: &Monomial, c: &PiCoeff<T>) {
    let exps = m.exponents();
    for (i, &e) in exps.iter().enumerate() {
        if e >= 2 {
            let factor = T::from_u32(u32::from(e) * (u32::from(e) - 1)).expect("small");
            out.add_term(m.bumped(i, 0, 2), &c.scale(&factor));
        }
    }
}

/// Outcome of the operator-level intertwining check over a monomial basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolicResidual {
    pub max_degree: u32,
    pub monomials_checked: usize,
    /// Largest absolute coefficient component over all residual polynomials.
    pub max_abs_coeff: f64,
    /// Number of basis monomials with a non-zero residual.
    pub nonzero: usize,
    /// `per_degree[d]` is the largest residual coefficient among degree-`d` monomials.
    pub per_degree: Vec<f64>,
    pub monomials_per_degree: Vec<usize>,
    pub nonzero_per_degree: Vec<usize>,
    pub exact: bool,
}

impl SymbolicResidual {
    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }
}

/// Coefficients below this count as zero when `T` is inexact.
pub const FLOAT_ZERO_TOL: f64 = 1e-9;

/// Checks `(Δ̃_dst f) ∘ σ = Δ̃_src (f ∘ σ)` for every monomial `f` of degree at
/// most `max_degree` in the `v`-coordinates.
///
/// `src` must be the source algebra of `sig` and `dst` its target; both
/// operators must act on the mode that `sig` was built for.
pub fn intertwine_residual_sym<T: Scalar>(
    src: &FiberOperator<T>,
    dst: &FiberOperator<T>,
    sig: &SigmaMap<T>,
    max_degree: u32,
) -> Result<SymbolicResidual> {
    check_residual_inputs(src, dst, sig)?;
    let nvars = src.algebra.dim_v();
    let mut per_degree = vec![0.0f64; max_degree as usize + 1];
    let mut monomials_per_degree = vec![0usize; max_degree as usize + 1];
    let mut nonzero_per_degree = vec![0usize; max_degree as usize + 1];
    let mut nonzero = 0usize;
    let mut checked = 0usize;
    for d in 0..=max_degree {
        for m in Monomial::of_degree(nvars, d) {
            let f = ModePolynomial::from_monomial(m, src.mode.clone(), PiCoeff::real(T::one()));
            let lhs = sig.pullback(&dst.fiber_apply(&f)?)?;
            let rhs = src.fiber_apply(&sig.pullback(&f)?)?;
            checked += 1;
            monomials_per_degree[d as usize] += 1;
            if T::EXACT && lhs == rhs {
                continue;
            }
            let size = lhs.checked_sub(&rhs)?.max_abs_coeff();
            if T::EXACT || size > FLOAT_ZERO_TOL {
                nonzero += 1;
                nonzero_per_degree[d as usize] += 1;
                per_degree[d as usize] = per_degree[d as usize].max(size);
            }
        }
    }
    Ok(SymbolicResidual {
        max_degree,
        monomials_checked: checked,
        max_abs_coeff: per_degree.iter().copied().fold(0.0, f64::max),
        nonzero,
        per_degree,
        monomials_per_degree,
        nonzero_per_degree,
        exact: T::EXACT,
    })
}

/// `(Δ̃_dst f) ∘ σ − Δ̃_src (f ∘ σ)` for a single polynomial.
pub fn monomial_residual<T: Scalar>(
    src: &FiberOperator<T>,
    dst: &FiberOperator<T>,
    sig: &SigmaMap<T>,
    f: &ModePolynomial<T>,
) -> Result<ModePolynomial<T>> {
    let lhs = sig.pullback(&dst.fiber_apply(f)?)?;
    let rhs = src.fiber_apply(&sig.pullback(f)?)?;
    lhs.checked_sub(&rhs)
}

fn check_residual_inputs<T: Scalar>(src: &FiberOperator<T>, dst: &FiberOperator<T>, sig: &SigmaMap<T>) -> Result<()> {
    if src.algebra != sig.source() || dst.algebra != sig.target() {
        return Err(Error::InvalidParameters(format!(
            "operators on {} -> {} do not match σ: {} -> {}",
            src.algebra,
            dst.algebra,
            sig.source(),
            sig.target()
        )));
    }
    if src.mode != dst.mode {
        return Err(Error::ModeMismatch(format!("source mode ({}) vs target mode ({})", src.mode, dst.mode)));
    }
    if !src.mode.is_zero() {
        // σ must be built on the ray of Z^α: Cauchy–Schwarz equality.
        let za = src.mode.z_vector::<T>();
        let zd = sig.z_dir();
        let cross = dot(&za, zd);
        let defect = cross.clone() * cross - dot(&za, &za) * dot(zd, zd);
        if !defect.is_negligible(1e-9) {
            return Err(Error::ModeMismatch(format!("σ was not built along the direction of mode ({})", src.mode)));
        }
    }
    Ok(())
}

/// Canonical `σ` for a mode: identity for `α = 0`, otherwise built along `Z^α`.
pub fn sigma_for_mode<T: Scalar>(source: HeisenbergAlgebra, mode: &FourierMode) -> Result<SigmaMap<T>> {
    if mode.is_zero() {
        Ok(SigmaMap::identity(source))
    } else {
        SigmaMap::new(source, &mode.z_vector::<T>(), None)
    }
}
