//! Scalar abstraction shared by every algebraic routine.
//!
//! The same code path runs over exact rationals (identity and golden checks)
//! and over `f32`/`f64` (spectral numerics).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};
use rand::Rng;

/// A field-like scalar usable for composition-algebra and polynomial work.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Square root if it is representable in this scalar type.
    ///
    /// Floats always succeed for non-negative input; rationals only succeed on
    /// perfect squares.
    fn sqrt_checked(&self) -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 numerator") / Self::from_i64(den).expect("i64 denominator")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Zero test that tolerates rounding for inexact types.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs().to_f64_lossy() <= tol
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt_big(self.numer())?;
        let d = exact_isqrt_big(self.denom())?;
        Some(Ratio::new(n, d))
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;
    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt_i64(*self.numer())?;
        let d = exact_isqrt_i64(*self.denom())?;
        Some(Ratio::new(n, d))
    }
}

fn exact_isqrt_big(x: &BigInt) -> Option<BigInt> {
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

fn exact_isqrt_i64(x: i64) -> Option<i64> {
    let r = x.sqrt();
    (r * r == x).then_some(r)
}

/// Draws a small random scalar `n/d` with `|n| <= max_num`, `1 <= d <= max_den`.
pub fn sample_small<T: Scalar, R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> T {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    T::from_ratio(n, d)
}

pub fn sample_vector<T: Scalar, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<T> {
    (0..len).map(|_| sample_small(rng, 9, 5)).collect()
}

/// Euclidean inner product; zero entries are skipped, which matters for the
/// sparse structure matrices over big rationals.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
