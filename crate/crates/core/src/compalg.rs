//! Quaternions and octonions over any [`Scalar`].
//!
//! Both algebras share one element type built by Cayley–Dickson doubling
//! from the reals with the convention
//!
//! ```text
//! (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
//! ```
//!
//! Coordinates are ordered so that `coords[0]` is the real part and the
//! remaining entries are the imaginary units `e_1, ..., e_{n-1}`. With this
//! ordering quaternions satisfy `e_1 e_2 = e_3` (`i j = k`).

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Quaternion,
    Octonion,
}

impl AlgebraKind {
    pub const fn dim(self) -> usize {
        match self {
            AlgebraKind::Quaternion => 4,
            AlgebraKind::Octonion => 8,
        }
    }

    /// Dimension of the pure (imaginary) part.
    pub const fn pure_dim(self) -> usize {
        self.dim() - 1
    }

    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            4 => Ok(AlgebraKind::Quaternion),
            8 => Ok(AlgebraKind::Octonion),
            other => Err(Error::InvalidParameters(format!("no composition algebra of dimension {other} is supported"))),
        }
    }
}

impl std::fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AlgebraKind::Quaternion => "quaternion",
            AlgebraKind::Octonion => "octonion",
        })
    }
}

impl std::str::FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quaternion" | "h" => Ok(AlgebraKind::Quaternion),
            "octonion" | "o" => Ok(AlgebraKind::Octonion),
            other => Err(Error::InvalidParameters(format!("unknown algebra kind `{other}`"))),
        }
    }
}

/// An element of the quaternions or the octonions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionElement<T> {
    coords: Vec<T>,
}

impl<T: Scalar> CompositionElement<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        AlgebraKind::from_dim(coords.len())?;
        Ok(Self { coords })
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Self { coords: vec![T::zero(); kind.dim()] }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::basis(kind, 0)
    }

    /// The `i`-th basis unit (`i = 0` is the identity).
    pub fn basis(kind: AlgebraKind, i: usize) -> Self {
        let mut coords = vec![T::zero(); kind.dim()];
        coords[i] = T::one();
        Self { coords }
    }

    /// Embeds a vector of the pure part, `(0, z_1, ..., z_{n-1})`.
    pub fn embed_pure(kind: AlgebraKind, z: &[T]) -> Result<Self> {
        if z.len() != kind.pure_dim() {
            return Err(Error::DimensionMismatch { expected: kind.pure_dim(), found: z.len() });
        }
        let mut coords = Vec::with_capacity(kind.dim());
        coords.push(T::zero());
        coords.extend_from_slice(z);
        Ok(Self { coords })
    }

    pub fn kind(&self) -> AlgebraKind {
        AlgebraKind::from_dim(self.coords.len()).expect("validated at construction")
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// Imaginary coordinates, i.e. the inverse of [`Self::embed_pure`] on pure elements.
    pub fn pure_part(&self) -> &[T] {
        &self.coords[1..]
    }

    pub fn re(&self) -> T {
        self.coords[0].clone()
    }

    pub fn norm2(&self) -> T {
        crate::scalar::dot(&self.coords, &self.coords)
    }

    pub fn is_pure(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { coords: conj_slice(&self.coords) }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coords: self.coords.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.coords.len() != rhs.coords.len() {
            return Err(Error::DimensionMismatch { expected: self.coords.len(), found: rhs.coords.len() });
        }
        Ok(Self { coords: cd_mul(&self.coords, &rhs.coords) })
    }

    /// Real matrix of `x -> self * x` in the coordinate basis.
    pub fn left_mul_matrix(&self) -> DenseMatrix<T> {
        let kind = self.kind();
        let mut m = DenseMatrix::zeros(kind.dim(), kind.dim());
        for col in 0..kind.dim() {
            let image = cd_mul(&self.coords, &Self::basis(kind, col).coords);
            for (row, v) in image.into_iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        m
    }

    /// Real matrix of `x -> x * self` in the coordinate basis.
    pub fn right_mul_matrix(&self) -> DenseMatrix<T> {
        let kind = self.kind();
        let mut m = DenseMatrix::zeros(kind.dim(), kind.dim());
        for col in 0..kind.dim() {
            let image = cd_mul(&Self::basis(kind, col).coords, &self.coords);
            for (row, v) in image.into_iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        m
    }
}

/// Matrix of conjugation, `diag(1, -1, ..., -1)`.
pub fn conj_matrix<T: Scalar>(kind: AlgebraKind) -> DenseMatrix<T> {
    DenseMatrix::from_fn(kind.dim(), kind.dim(), |i, j| match (i == j, i) {
        (false, _) => T::zero(),
        (true, 0) => T::one(),
        (true, _) => -T::one(),
    })
}

fn conj_slice<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().enumerate().map(|(i, x)| if i == 0 { x.clone() } else { -x.clone() }).collect()
}

fn add_slices<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn sub_slices<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn cd_mul<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    let n = x.len();
    if n == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let first = sub_slices(&cd_mul(a, c), &cd_mul(&conj_slice(d), b));
    let second = add_slices(&cd_mul(d, a), &cd_mul(b, &conj_slice(c)));
    let mut out = first;
    out.extend(second);
    out
}

impl<T: Scalar> Mul for &CompositionElement<T> {
    type Output = CompositionElement<T>;

    /// Panics on mismatched algebras; use [`CompositionElement::checked_mul`] to recover.
    fn mul(self, rhs: &CompositionElement<T>) -> CompositionElement<T> {
        self.checked_mul(rhs).expect("composition algebra dimension mismatch")
    }
}

impl<T: Scalar> Add for &CompositionElement<T> {
    type Output = CompositionElement<T>;
    fn add(self, rhs: &CompositionElement<T>) -> CompositionElement<T> {
        assert_eq!(self.coords.len(), rhs.coords.len(), "composition algebra dimension mismatch");
        CompositionElement { coords: add_slices(&self.coords, &rhs.coords) }
    }
}

impl<T: Scalar> Sub for &CompositionElement<T> {
    type Output = CompositionElement<T>;
    fn sub(self, rhs: &CompositionElement<T>) -> CompositionElement<T> {
        assert_eq!(self.coords.len(), rhs.coords.len(), "composition algebra dimension mismatch");
        CompositionElement { coords: sub_slices(&self.coords, &rhs.coords) }
    }
}

impl<T: Scalar> Neg for &CompositionElement<T> {
    type Output = CompositionElement<T>;
    fn neg(self) -> CompositionElement<T> {
        CompositionElement { coords: self.coords.iter().map(|x| -x.clone()).collect() }
    }
}
