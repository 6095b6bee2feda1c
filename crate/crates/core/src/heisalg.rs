//! The metric 2-step nilpotent Lie algebras `n(p, q) = v ⊕ z` and their groups.
//!
//! `v = A^(p+q)` and `z = Im(A)` for `A` the quaternions or octonions. The
//! j-map acts by left multiplication on the first `p` slots of `v` and by right
//! multiplication on the last `q` slots. The coordinate basis of `v ⊕ z` is
//! orthonormal and `v ⟂ z`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::compalg::{AlgebraKind, CompositionElement};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{sample_vector, Scalar};
use crate::Rational64;

/// Descriptor of `n(p, q)`; serializes as `{kind, p, q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlgebraSpec")]
pub struct HeisenbergAlgebra {
    kind: AlgebraKind,
    p: usize,
    q: usize,
}

#[derive(Deserialize)]
struct AlgebraSpec {
    kind: AlgebraKind,
    p: usize,
    q: usize,
}

impl TryFrom<AlgebraSpec> for HeisenbergAlgebra {
    type Error = Error;
    fn try_from(s: AlgebraSpec) -> Result<Self> {
        Self::new(s.kind, s.p, s.q)
    }
}

impl std::fmt::Display for HeisenbergAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n({},{})[{}]", self.p, self.q, self.kind)
    }
}

/// Outcome of the check `j_Z^2 = -|Z|^2 Id`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeisenbergTypeReport {
    pub samples: usize,
    pub max_residual: f64,
    pub exact: bool,
}

impl HeisenbergTypeReport {
    pub fn passed(&self, tol: f64) -> bool {
        if self.exact {
            self.max_residual == 0.0
        } else {
            self.max_residual <= tol
        }
    }
}

impl HeisenbergAlgebra {
    pub fn new(kind: AlgebraKind, p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidParameters("p + q must be at least 1".into()));
        }
        Ok(Self { kind, p, q })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim_v(&self) -> usize {
        self.kind.dim() * (self.p + self.q)
    }

    pub fn dim_z(&self) -> usize {
        self.kind.pure_dim()
    }

    pub fn dim(&self) -> usize {
        self.dim_v() + self.dim_z()
    }

    /// `n(p + q, 0)`, the isotypic partner with the same dimension.
    pub fn isotypic_partner(&self) -> Self {
        Self { kind: self.kind, p: self.p + self.q, q: 0 }
    }

    fn check_z<T>(&self, z: &[T]) -> Result<()> {
        if z.len() != self.dim_z() {
            return Err(Error::DimensionMismatch { expected: self.dim_z(), found: z.len() });
        }
        Ok(())
    }

    fn check_v<T>(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim_v() {
            return Err(Error::DimensionMismatch { expected: self.dim_v(), found: x.len() });
        }
        Ok(())
    }

    /// Matrix of `j_Z` on `v` in the coordinate basis.
    pub fn j_matrix<T: Scalar>(&self, z: &[T]) -> Result<DenseMatrix<T>> {
        self.check_z(z)?;
        let iz = CompositionElement::embed_pure(self.kind, z)?;
        let left = iz.left_mul_matrix();
        let right = iz.right_mul_matrix();
        let n = self.kind.dim();
        let mut j = DenseMatrix::zeros(self.dim_v(), self.dim_v());
        for slot in 0..self.p + self.q {
            let block = if slot < self.p { &left } else { &right };
            j.set_block(slot * n, slot * n, block);
        }
        Ok(j)
    }

    /// j-matrices of the center basis `e_1, ..., e_{dim z}`.
    pub fn j_basis<T: Scalar>(&self) -> Vec<DenseMatrix<T>> {
        (0..self.dim_z()).map(|k| self.j_matrix(&unit_vector::<T>(self.dim_z(), k)).expect("basis length")).collect()
    }

    /// Lie bracket `[X, Y] ∈ z`, defined by `<[X, Y], e_k> = <j_{e_k} X, Y>`.
    ///
    /// Evaluated slotwise with `<a x, y> = <a, y x̄>` on left slots and
    /// `<x a, y> = <a, x̄ y>` on right slots, so `[X, Y]` is the imaginary part
    /// of `Σ y_i x̄_i + Σ x̄_i y_i`.
    pub fn bracket<T: Scalar>(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        self.check_v(x)?;
        self.check_v(y)?;
        let n = self.kind.dim();
        let mut acc = CompositionElement::zero(self.kind);
        for slot in 0..self.p + self.q {
            let xi = CompositionElement::new(x[slot * n..(slot + 1) * n].to_vec())?;
            let yi = CompositionElement::new(y[slot * n..(slot + 1) * n].to_vec())?;
            let term = if slot < self.p { &yi * &xi.conj() } else { &xi.conj() * &yi };
            acc = &acc + &term;
        }
        Ok(acc.pure_part().to_vec())
    }

    /// Checks the Heisenberg-type identity on the center basis and on
    /// `random_samples` random vectors drawn from `rng`.
    pub fn check_heisenberg_type<T: Scalar, R: Rng + ?Sized>(
        &self,
        random_samples: usize,
        rng: &mut R,
    ) -> HeisenbergTypeReport {
        let mut zs: Vec<Vec<T>> = (0..self.dim_z()).map(|k| unit_vector(self.dim_z(), k)).collect();
        zs.extend((0..random_samples).map(|_| sample_vector(rng, self.dim_z())));
        let id = DenseMatrix::<T>::identity(self.dim_v());
        let max_residual = zs
            .iter()
            .map(|z| {
                let j = self.j_matrix(z).expect("sample length");
                let norm2 = crate::scalar::dot(z, z);
                (&(&j * &j) + &id.scale(&norm2)).max_abs()
            })
            .fold(0.0, f64::max);
        HeisenbergTypeReport { samples: zs.len(), max_residual, exact: T::EXACT }
    }

    /// Clifford volume element `ω = j_{e_1} j_{e_2} ... j_{e_{dim z}}`.
    pub fn volume_element<T: Scalar>(&self) -> DenseMatrix<T> {
        self.j_basis::<T>().iter().fold(DenseMatrix::identity(self.dim_v()), |acc, j| &acc * j)
    }

    /// `trace(ω) / dim A`. Its absolute value is `|p - q|`; with the doubling
    /// convention used here left slots contribute `-1` and right slots `+1`.
    pub fn isotypic_signature(&self) -> i64 {
        let trace = self.volume_element::<Rational64>().trace();
        assert!(trace.is_integer(), "volume element trace must be integral");
        trace.to_integer() / self.kind.dim() as i64
    }

    pub fn is_isotypic(&self) -> bool {
        self.isotypic_signature().unsigned_abs() as usize == self.p + self.q
    }

    pub fn group_mul<T: Scalar>(&self, a: &GroupElement<T>, b: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.check_element(a)?;
        self.check_element(b)?;
        let half = T::from_ratio(1, 2);
        let br = self.bracket(&a.x, &b.x)?;
        let x = a.x.iter().zip(&b.x).map(|(u, v)| u.clone() + v.clone()).collect();
        let z = a
            .z
            .iter()
            .zip(&b.z)
            .zip(br)
            .map(|((u, v), w)| u.clone() + v.clone() + half.clone() * w)
            .collect();
        Ok(GroupElement { x, z })
    }

    pub fn group_inv<T: Scalar>(&self, a: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.check_element(a)?;
        Ok(GroupElement { x: a.x.iter().map(|u| -u.clone()).collect(), z: a.z.iter().map(|u| -u.clone()).collect() })
    }

    pub fn group_identity<T: Scalar>(&self) -> GroupElement<T> {
        GroupElement { x: vec![T::zero(); self.dim_v()], z: vec![T::zero(); self.dim_z()] }
    }

    fn check_element<T>(&self, a: &GroupElement<T>) -> Result<()> {
        self.check_v(&a.x)?;
        self.check_z(&a.z)
    }
}

/// `exp(X + Z)` in exponential coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    pub x: Vec<T>,
    pub z: Vec<T>,
}

pub fn unit_vector<T: Scalar>(len: usize, k: usize) -> Vec<T> {
    let mut v = vec![T::zero(); len];
    v[k] = T::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{Signed, Zero};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn oct(p: usize, q: usize) -> HeisenbergAlgebra {
        HeisenbergAlgebra::new(AlgebraKind::Octonion, p, q).unwrap()
    }

    fn quat(p: usize, q: usize) -> HeisenbergAlgebra {
        HeisenbergAlgebra::new(AlgebraKind::Quaternion, p, q).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!((oct(1, 1).dim_v(), oct(1, 1).dim_z(), oct(1, 1).dim()), (16, 7, 23));
        assert_eq!((oct(2, 0).dim_v(), oct(2, 0).dim_z()), (16, 7));
        assert_eq!(quat(1, 1).dim(), 11);
        assert_eq!(oct(2, 1).dim(), 31);
        assert!(matches!(HeisenbergAlgebra::new(AlgebraKind::Octonion, 0, 0), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn j_of_zero_vanishes_and_k_times_one() {
        let alg = quat(1, 0);
        assert!(alg.j_matrix(&vec![Q::zero(); 3]).unwrap().is_zero());
        let j = alg.j_matrix(&unit_vector::<Q>(3, 2)).unwrap();
        // j_{e_3} applied to X = 1 is k.
        assert_eq!(j.mul_vec(&unit_vector::<Q>(4, 0)), unit_vector::<Q>(4, 3));
        assert!(alg.j_matrix(&vec![Q::zero(); 7]).is_err());
    }

    #[test]
    fn unit_z_squares_to_minus_identity() {
        for alg in [oct(1, 1), oct(2, 0), quat(3, 0)] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let report = alg.check_heisenberg_type::<Q, _>(20, &mut rng);
            assert!(report.exact);
            assert_eq!(report.max_residual, 0.0, "{alg}");
            assert_eq!(report.samples, alg.dim_z() + 20);
        }
    }

    #[test]
    fn j_is_linear_and_skew() {
        let alg = oct(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let z1: Vec<Q> = sample_vector(&mut rng, 7);
            let z2: Vec<Q> = sample_vector(&mut rng, 7);
            let a: Q = crate::scalar::sample_small(&mut rng, 9, 5);
            let b: Q = crate::scalar::sample_small(&mut rng, 9, 5);
            let comb: Vec<Q> = z1.iter().zip(&z2).map(|(x, y)| a.clone() * x + b.clone() * y).collect();
            let lhs = alg.j_matrix(&comb).unwrap();
            let rhs = &alg.j_matrix(&z1).unwrap().scale(&a) + &alg.j_matrix(&z2).unwrap().scale(&b);
            assert_eq!(lhs, rhs);
            let j1 = alg.j_matrix(&z1).unwrap();
            assert_eq!(j1.transpose(), j1.scale(&-Q::from_integer(1.into())));
            // Polarized Heisenberg-type identity.
            let j2 = alg.j_matrix(&z2).unwrap();
            let anti = &(&j1 * &j2) + &(&j2 * &j1);
            let expect = DenseMatrix::identity(alg.dim_v()).scale(&(Q::from_integer((-2).into()) * crate::scalar::dot(&z1, &z2)));
            assert_eq!(anti, expect);
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_dual_to_j() {
        let alg = oct(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x: Vec<Q> = sample_vector(&mut rng, 16);
            let y: Vec<Q> = sample_vector(&mut rng, 16);
            let z: Vec<Q> = sample_vector(&mut rng, 7);
            assert!(alg.bracket(&x, &x).unwrap().iter().all(Zero::is_zero));
            let xy = alg.bracket(&x, &y).unwrap();
            let yx = alg.bracket(&y, &x).unwrap();
            assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
            let lhs = crate::scalar::dot(&xy, &z);
            let rhs = crate::scalar::dot(&alg.j_matrix(&z).unwrap().mul_vec(&x), &y);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn volume_element_squares_to_identity_and_reads_off_p_minus_q() {
        let omega = oct(2, 0).volume_element::<Q>();
        assert_eq!(&omega * &omega, DenseMatrix::identity(16));
        assert_eq!(omega.trace().abs(), Q::from_integer(16.into()));
        assert_eq!(oct(2, 0).isotypic_signature().abs(), 2);
        assert_eq!(oct(1, 1).isotypic_signature(), 0);
        assert_eq!(oct(1, 1).volume_element::<Q>().trace(), Q::zero());
        for kind in [AlgebraKind::Quaternion, AlgebraKind::Octonion] {
            for n in 1..=4usize {
                for p in 0..=n {
                    let alg = HeisenbergAlgebra::new(kind, p, n - p).unwrap();
                    assert_eq!(alg.isotypic_signature().unsigned_abs() as usize, p.abs_diff(n - p), "{alg}");
                    assert_eq!(alg.is_isotypic(), p == 0 || p == n);
                }
            }
        }
    }

    #[test]
    fn group_law() {
        let alg = oct(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut sample = || GroupElement::<Q> { x: sample_vector(&mut rng, 16), z: sample_vector(&mut rng, 7) };
        for _ in 0..10 {
            let (a, b, c) = (sample(), sample(), sample());
            let ainv = alg.group_inv(&a).unwrap();
            assert_eq!(alg.group_mul(&a, &ainv).unwrap(), alg.group_identity());
            let left = alg.group_mul(&alg.group_mul(&a, &b).unwrap(), &c).unwrap();
            let right = alg.group_mul(&a, &alg.group_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
            let binv = alg.group_inv(&b).unwrap();
            let comm = alg.group_mul(&alg.group_mul(&alg.group_mul(&a, &b).unwrap(), &ainv).unwrap(), &binv).unwrap();
            assert!(comm.x.iter().all(Zero::is_zero));
            assert_eq!(comm.z, alg.bracket(&a.x, &b.x).unwrap());
        }
    }

    /// `n(p, q) ≅ n(q, p)`: conjugate every slot, move left slots to the right
    /// and flip the center, `Z -> -Z`.
    #[test]
    fn swap_and_conjugate_isomorphism() {
        for kind in [AlgebraKind::Quaternion, AlgebraKind::Octonion] {
            for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
                let src = HeisenbergAlgebra::new(kind, p, q).unwrap();
                let dst = HeisenbergAlgebra::new(kind, q, p).unwrap();
                let n = kind.dim();
                let conj = crate::compalg::conj_matrix::<Q>(kind);
                let mut phi = DenseMatrix::<Q>::zeros(src.dim_v(), src.dim_v());
                // Source left slots (0..p) land in destination right slots (q..q+p).
                for slot in 0..p + q {
                    let target = if slot < p { q + slot } else { slot - p };
                    phi.set_block(target * n, slot * n, &conj);
                }
                for k in 0..src.dim_z() {
                    let z = unit_vector::<Q>(src.dim_z(), k);
                    let minus_z: Vec<Q> = z.iter().map(|x| -x.clone()).collect();
                    let lhs = &phi * &src.j_matrix(&z).unwrap();
                    let rhs = &dst.j_matrix(&minus_z).unwrap() * &phi;
                    assert_eq!(lhs, rhs, "{src} -> {dst}");
                }
                assert_eq!(src.isotypic_signature(), -dst.isotypic_signature());
            }
        }
    }

    #[test]
    fn descriptor_json() {
        let s = serde_json::to_string(&oct(1, 1)).unwrap();
        assert_eq!(s, r#"{"kind":"octonion","p":1,"q":1}"#);
        let back: HeisenbergAlgebra = serde_json::from_str(&s).unwrap();
        assert_eq!(back, oct(1, 1));
        assert!(serde_json::from_str::<HeisenbergAlgebra>(r#"{"kind":"octonion","p":0,"q":0}"#).is_err());
    }
}
