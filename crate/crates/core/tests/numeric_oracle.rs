//! Pointwise oracle for the fiber intertwining: both sides are evaluated with
//! finite differences of plain closures, so neither symbolic differentiation
//! nor symbolic substitution is involved.

use heisospec::spectral::sigma_for_mode;
use heisospec::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const H: f64 = 1e-3;

/// Central-difference fiber operator with drift matrix `j` and radial coefficient `c`.
fn fd_fiber(g: &dyn Fn(&[f64]) -> Complex64, j: &DenseMatrix<f64>, norm2: f64, c: f64, x: &[f64]) -> Complex64 {
    let n = x.len();
    let g0 = g(x);
    let mut lap = Complex64::default();
    let mut probe = x.to_vec();
    for i in 0..n {
        probe[i] = x[i] + H;
        let gp = g(&probe);
        probe[i] = x[i] - H;
        let gm = g(&probe);
        probe[i] = x[i];
        lap += (gp - g0 * 2.0 + gm) / (H * H);
    }
    let mut grad_along = Complex64::default();
    for i in 0..n {
        let vi: f64 = (0..n).map(|k| j[(i, k)] * x[k]).sum();
        if vi == 0.0 {
            continue;
        }
        probe[i] = x[i] + H;
        let gp = g(&probe);
        probe[i] = x[i] - H;
        let gm = g(&probe);
        probe[i] = x[i];
        grad_along += (gp - gm) / (2.0 * H) * vi;
    }
    let r2: f64 = x.iter().map(|a| a * a).sum();
    lap + Complex64::new(0.0, 2.0 * PI) * grad_along - g0 * (4.0 * PI * PI * norm2 * (1.0 + c * r2))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32, terms: usize) -> Vec<(Vec<u8>, f64)> {
    (0..terms)
        .map(|_| {
            let mut e = vec![0u8; n];
            let d = rng.gen_range(0..=degree);
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            (e, rng.gen_range(-1.0..1.0))
        })
        .collect()
}

fn eval(poly: &[(Vec<u8>, f64)], x: &[f64]) -> Complex64 {
    let v: f64 = poly.iter().map(|(e, c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(i32::from(k))).product::<f64>()).sum();
    Complex64::new(v, 0.0)
}

fn run(degree: u32, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let src = HeisenbergAlgebra::new(AlgebraKind::Octonion, 1, 1).unwrap();
    for k in [0usize, 3, 6] {
        let mode = FourierMode::basis(7, k);
        let sig = sigma_for_mode::<f64>(src, &mode).unwrap();
        let s = sig.matrix();
        let z = mode.z_vector::<f64>();
        let j_src = src.j_matrix(&z).unwrap();
        let j_dst = sig.target().j_matrix(&z).unwrap();
        let poly = random_poly(&mut rng, 16, degree, 12);
        let f = |y: &[f64]| eval(&poly, y);
        let f_sigma = |x: &[f64]| eval(&poly, &s.mul_vec(x));

        // Cross-check the symbolic side at the same points.
        let sym = ModePolynomial::from_terms(16, mode.clone(), poly.iter().map(|(e, c)| (&e[..], *c))).unwrap();
        let op_src = FiberOperator::<f64>::new(src, mode.clone()).unwrap();
        let sym_rhs = op_src.fiber_apply(&sig.pullback(&sym).unwrap()).unwrap();

        for _ in 0..50 {
            let x: Vec<f64> = (0..16).map(|_| rng.gen_range(-0.5..0.5)).collect();
            let lhs = fd_fiber(&f, &j_dst, 1.0, 4.0, &s.mul_vec(&x));
            let rhs = fd_fiber(&f_sigma, &j_src, 1.0, 4.0, &x);
            let scale = lhs.norm().max(1.0);
            assert!((lhs - rhs).norm() < 1e-5 * scale, "degree {degree}, mode {k}: {lhs} vs {rhs}");
            assert!((sym_rhs.eval(&x) - rhs).norm() < 1e-5 * scale, "symbolic {} vs {rhs}", sym_rhs.eval(&x));
        }
    }
}

#[test]
fn intertwining_pointwise_degree_two() {
    run(2, 21);
}

#[test]
fn intertwining_pointwise_degree_six() {
    run(6, 61);
}
