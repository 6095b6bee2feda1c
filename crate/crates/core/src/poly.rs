//! Fourier-mode polynomials `Φ^α(X, Z) = φ(X) E^α(Z)` with `φ` polynomial.
//!
//! Coefficients live in `Q(i)[π]`: a coefficient is a polynomial in `π` whose
//! coefficients are complex numbers over the scalar type. This keeps the
//! `2πi` and `4π²` factors of the fiber Laplacian exact over rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Lattice point `α ∈ Z^{dim z}` labelling the mode `E^α(Z) = exp(2πi <Z^α, Z>)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourierMode {
    alpha: Vec<i64>,
}

impl FourierMode {
    pub fn new(alpha: Vec<i64>) -> Self {
        Self { alpha }
    }

    pub fn zero(len: usize) -> Self {
        Self { alpha: vec![0; len] }
    }

    pub fn basis(len: usize, k: usize) -> Self {
        let mut alpha = vec![0; len];
        alpha[k] = 1;
        Self { alpha }
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(|&a| a == 0)
    }

    /// `|Z^α|^2`.
    pub fn norm2(&self) -> i64 {
        self.alpha.iter().map(|a| a * a).sum()
    }

    /// `Z^α` as a center vector.
    pub fn z_vector<T: Scalar>(&self) -> Vec<T> {
        self.alpha.iter().map(|&a| T::from_i64(a).expect("i64 fits")).collect()
    }

    fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::ModeMismatch(format!("mode lengths {} and {}", self.len(), other.len())));
        }
        Ok(Self { alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect() })
    }
}

impl fmt::Display for FourierMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Exponent vector of a monomial in the `v`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u8; 24]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        Self(SmallVec::from_slice(exps))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect())
    }

    pub(crate) fn bumped(&self, i: usize, up: u8, down: u8) -> Monomial {
        let mut m = self.clone();
        m.0[i] = m.0[i] + up - down;
        m
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&e, &xi)| xi.powi(i32::from(e))).product()
    }

    /// All monomials of total degree exactly `degree`, in lexicographic order.
    pub fn of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur.push(left as u8);
                out.push(Monomial::from_exponents(cur));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e as u8);
                rec(nvars, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(nvars, 0, degree, &mut Vec::with_capacity(nvars), &mut out);
        out
    }

    /// All monomials of total degree at most `degree`, grouped by degree.
    pub fn up_to_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        (0..=degree).flat_map(|d| Self::of_degree(nvars, d)).collect()
    }
}

// Zero-skipping arithmetic: most coefficient components vanish, and for
// big rationals every avoided operation saves an allocation.
fn mul_r<T: Scalar>(a: &T, b: &T) -> T {
    if a.is_zero() || b.is_zero() {
        T::zero()
    } else {
        a.clone() * b.clone()
    }
}

fn add_r<T: Scalar>(a: &T, b: &T) -> T {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a.clone() + b.clone()
    }
}

fn mul_c<T: Scalar>(a: &Complex<T>, b: &Complex<T>) -> Complex<T> {
    let re = add_r(&mul_r(&a.re, &b.re), &-mul_r(&a.im, &b.im));
    let im = add_r(&mul_r(&a.re, &b.im), &mul_r(&a.im, &b.re));
    Complex::new(re, im)
}

/// Element of `Q(i)[π]`: `parts[k]` is the complex coefficient of `π^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiCoeff<T> {
    parts: SmallVec<[Complex<T>; 3]>,
}

impl<T: Scalar> PiCoeff<T> {
    pub fn zero() -> Self {
        Self { parts: SmallVec::new() }
    }

    pub fn real(x: T) -> Self {
        Self::term(0, Complex::new(x, T::zero()))
    }

    /// `c · π^power`.
    pub fn term(power: usize, c: Complex<T>) -> Self {
        let mut parts = SmallVec::from_elem(Complex::zero(), power + 1);
        parts[power] = c;
        let mut out = Self { parts };
        out.trim();
        out
    }

    pub fn parts(&self) -> &[Complex<T>] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn trim(&mut self) {
        while self.parts.last().is_some_and(Zero::is_zero) {
            self.parts.pop();
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        if self.parts.len() < other.parts.len() {
            self.parts.resize(other.parts.len(), Complex::zero());
        }
        for (a, b) in self.parts.iter_mut().zip(&other.parts) {
            a.re = add_r(&a.re, &b.re);
            a.im = add_r(&a.im, &b.im);
        }
        self.trim();
    }

    pub fn neg(&self) -> Self {
        Self { parts: self.parts.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self { parts: self.parts.iter().map(|c| Complex::new(mul_r(&c.re, s), mul_r(&c.im, s))).collect() };
        out.trim();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut parts: SmallVec<[Complex<T>; 3]> =
            SmallVec::from_elem(Complex::zero(), self.parts.len() + other.parts.len() - 1);
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                let prod = mul_c(a, b);
                parts[i + j] = Complex::new(add_r(&parts[i + j].re, &prod.re), add_r(&parts[i + j].im, &prod.im));
            }
        }
        let mut out = Self { parts };
        out.trim();
        out
    }

    pub fn eval(&self, pi: f64) -> Complex<f64> {
        self.parts.iter().enumerate().fold(Complex::new(0.0, 0.0), |acc, (k, c)| {
            acc + Complex::new(c.re.to_f64_lossy(), c.im.to_f64_lossy()) * pi.powi(k as i32)
        })
    }

    /// Largest absolute value among the rational/real components.
    pub fn max_abs(&self) -> f64 {
        self.parts
            .iter()
            .flat_map(|c| [c.re.abs().to_f64().unwrap_or(f64::NAN), c.im.abs().to_f64().unwrap_or(f64::NAN)])
            .fold(0.0, f64::max)
    }
}

/// `φ(X) E^α(Z)` with `φ` a polynomial in `nvars` real variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ModePolynomial<T> {
    nvars: usize,
    mode: FourierMode,
    terms: BTreeMap<Monomial, PiCoeff<T>>,
}

impl<T: Scalar> ModePolynomial<T> {
    pub fn zero(nvars: usize, mode: FourierMode) -> Self {
        Self { nvars, mode, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, mode: FourierMode, c: PiCoeff<T>) -> Self {
        Self::from_monomial(Monomial::one(nvars), mode, c)
    }

    pub fn one(nvars: usize, mode: FourierMode) -> Self {
        Self::constant(nvars, mode, PiCoeff::real(T::one()))
    }

    pub fn variable(nvars: usize, mode: FourierMode, i: usize) -> Self {
        Self::from_monomial(Monomial::variable(nvars, i), mode, PiCoeff::real(T::one()))
    }

    pub fn from_monomial(m: Monomial, mode: FourierMode, c: PiCoeff<T>) -> Self {
        let mut p = Self::zero(m.nvars(), mode);
        p.add_term(m, &c);
        p
    }

    /// Builds a real polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms<'a>(
        nvars: usize,
        mode: FourierMode,
        terms: impl IntoIterator<Item = (&'a [u8], T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, mode);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: exps.len() });
            }
            p.add_term(Monomial::from_exponents(exps), &PiCoeff::real(c));
        }
        Ok(p)
    }

    /// `|X|^2 = Σ x_i^2`.
    pub fn norm2(nvars: usize, mode: FourierMode) -> Self {
        let mut p = Self::zero(nvars, mode);
        for i in 0..nvars {
            p.add_term(Monomial::variable(nvars, i).bumped(i, 1, 0), &PiCoeff::real(T::one()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> &FourierMode {
        &self.mode
    }

    pub fn with_mode(mut self, mode: FourierMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PiCoeff<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&PiCoeff<T>> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: &PiCoeff<T>) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(format!("modes ({}) and ({})", self.mode, other.mode)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PiCoeff<T>) -> Self {
        let mut out = Self::zero(self.nvars, self.mode.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.mul(c));
        }
        out
    }

    /// Pointwise product. Modes add, since `E^α E^β = E^{α+β}`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        let mut out = Self::zero(self.nvars, self.mode.checked_add(&other.mode)?);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.mode.clone());
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e > 0 {
                out.add_term(m.bumped(i, 0, 1), &c.scale(&T::from_u8(e).expect("u8 fits")));
            }
        }
        out
    }

    /// `x ↦ f(S x)` for a square matrix `S` acting on the coordinates.
    pub fn substitute_linear(&self, s: &DenseMatrix<T>) -> Result<Self> {
        if s.rows() != self.nvars || s.cols() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: s.rows() });
        }
        let forms: Vec<Vec<(usize, T)>> = (0..self.nvars).map(|i| s.row_nonzeros(i)).collect();
        let mut out = Self::zero(self.nvars, self.mode.clone());
        if forms.iter().all(|f| f.len() == 1) {
            // Monomial matrix: each monomial maps to a single monomial.
            for (m, c) in &self.terms {
                let mut exps = vec![0u8; self.nvars];
                let mut factor = T::one();
                for (i, &e) in m.exponents().iter().enumerate() {
                    let (j, ref sij) = forms[i][0];
                    exps[j] += e;
                    for _ in 0..e {
                        factor = factor * sij.clone();
                    }
                }
                out.add_term(Monomial::from_exponents(&exps), &c.scale(&factor));
            }
            return Ok(out);
        }
        for (m, c) in &self.terms {
            let mut acc: BTreeMap<Monomial, T> = BTreeMap::new();
            acc.insert(Monomial::one(self.nvars), T::one());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    let mut next: BTreeMap<Monomial, T> = BTreeMap::new();
                    for (am, av) in &acc {
                        for (j, sij) in &forms[i] {
                            let key = am.bumped(*j, 1, 0);
                            let v = av.clone() * sij.clone();
                            let slot = next.entry(key).or_insert_with(T::zero);
                            *slot = slot.clone() + v;
                        }
                    }
                    next.retain(|_, v| !v.is_zero());
                    acc = next;
                }
            }
            for (am, av) in acc {
                out.add_term(am, &c.scale(&av));
            }
        }
        Ok(out)
    }

    /// Evaluates `φ` at `x` with `π` replaced by its floating value.
    pub fn eval(&self, x: &[f64]) -> Complex<f64> {
        assert_eq!(x.len(), self.nvars, "evaluation point dimension mismatch");
        self.terms.iter().fold(Complex::new(0.0, 0.0), |acc, (m, c)| acc + c.eval(std::f64::consts::PI) * m.eval(x))
    }

    /// Largest absolute coefficient component; `0` for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(PiCoeff::max_abs).fold(0.0, f64::max)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for ModePolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff: Vec<String> = c
                .parts()
                .iter()
                .enumerate()
                .filter(|(_, z)| !z.is_zero())
                .map(|(k, z)| if k == 0 { format!("({z})") } else { format!("({z})π^{k}") })
                .collect();
            write!(f, "[{}]", coeff.join(" + "))?;
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
