//! Verification toolkit for generalized Heisenberg groups `N(p, q)` built from
//! quaternions or octonions.
//!
//! The crate constructs the metric Lie algebras `n(p, q)`, the octonionic
//! intertwining map between `n(p, q)` and `n(p + q, 0)`, the fiber Laplacians
//! on each Fourier mode (symbolically and in a truncated Hermite basis), and
//! the classification tables for commutativity, weak symmetry and the g.o.
//! property.
//!
//! Algebraic routines are generic over [`Scalar`]; use [`Rational`] for exact
//! checks and `f64` for spectral numerics.

pub mod classify;
pub mod compalg;
pub mod error;
pub mod heisalg;
pub mod intertwine;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod spectral;

pub use classify::{audibility_report, classify, classify_algebra, AudibilityReport, Property, PropertyProfile};
pub use compalg::{AlgebraKind, CompositionElement};
pub use error::{Error, Result};
pub use heisalg::{GroupElement, HeisenbergAlgebra};
pub use intertwine::SigmaMap;
pub use matrix::DenseMatrix;
pub use poly::{FourierMode, ModePolynomial, Monomial, PiCoeff};
pub use scalar::Scalar;
pub use spectral::{FiberOperator, HermiteOperator, HermiteTruncation};

/// Exact arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Exact rationals over `i64`; faster, overflow-checked in debug builds.
pub type Rational64 = num_rational::Rational64;

pub type Quaternion<T> = CompositionElement<T>;
pub type Octonion<T> = CompositionElement<T>;
pub type OctonionQ = CompositionElement<Rational>;
pub type OctonionF64 = CompositionElement<f64>;

pub type ModePolynomialQ = ModePolynomial<Rational>;
pub type ModePolynomialF64 = ModePolynomial<f64>;
pub type SigmaMapQ = SigmaMap<Rational>;
pub type SigmaMapF64 = SigmaMap<f64>;
pub type FiberOperatorQ = FiberOperator<Rational>;
pub type FiberOperatorF64 = FiberOperator<f64>;
