use std::fmt::Write as _;

use heisospec::classify::{classify_algebra, irreducible_module_dim};
use heisospec::heisalg::unit_vector;
use heisospec::scalar::{sample_vector, Scalar};
use heisospec::spectral::{
    extreme_eigenvalues, hermite_matrix, intertwine_residual_sym, sigma_for_mode, EigenConfig, SymbolicResidual,
};
use heisospec::{
    audibility_report, classify, AlgebraKind, CompositionElement, Error as CoreError, FiberOperator, FourierMode,
    HeisenbergAlgebra, Rational, Rational64, SigmaMap,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{
    ClassifyArgs, CliError, CliResult, Exact, IntertwineArgs, Outcome, PositiveRational, ReportArgs, SpectrumArgs,
    VerifyArgs, SCHEMA_VERSION,
};

type Q = Rational;

fn document(command: &str, config: &impl Serialize, body: Value) -> Value {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
    });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

#[derive(Clone, Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    samples: usize,
    max_residual: f64,
    exact: bool,
}

impl Check {
    fn exact(name: &'static str, samples: usize, max_residual: f64) -> Self {
        Check { name, passed: max_residual == 0.0, samples, max_residual, exact: true }
    }
}

fn max_abs(v: &[Q]) -> f64 {
    v.iter().map(|x| x.to_f64_lossy().abs()).fold(0.0, f64::max)
}

fn composition_checks(kind: AlgebraKind, samples: usize, rng: &mut ChaCha8Rng) -> [Check; 2] {
    let mut norm_res = 0.0f64;
    let mut alt_res = 0.0f64;
    for _ in 0..samples {
        let a = CompositionElement::<Q>::new(sample_vector(rng, kind.dim())).expect("valid length");
        let b = CompositionElement::<Q>::new(sample_vector(rng, kind.dim())).expect("valid length");
        let d = (&a * &b).norm2() - a.norm2() * b.norm2();
        norm_res = norm_res.max(d.to_f64_lossy().abs());
        let left = &(&(&a * &a) * &b) - &(&a * &(&a * &b));
        let right = &(&(&a * &b) * &b) - &(&a * &(&b * &b));
        alt_res = alt_res.max(max_abs(left.coords())).max(max_abs(right.coords()));
    }
    [Check::exact("composition_norm", samples, norm_res), Check::exact("composition_alternative", samples, alt_res)]
}

fn bracket_check(alg: &HeisenbergAlgebra, samples: usize, rng: &mut ChaCha8Rng) -> Check {
    let mut res = 0.0f64;
    for _ in 0..samples {
        let x: Vec<Q> = sample_vector(rng, alg.dim_v());
        let y: Vec<Q> = sample_vector(rng, alg.dim_v());
        let z: Vec<Q> = sample_vector(rng, alg.dim_z());
        let br = alg.bracket(&x, &y).expect("sample lengths");
        let jz = alg.j_matrix(&z).expect("sample length");
        let d = heisospec::scalar::dot(&br, &z) - heisospec::scalar::dot(&jz.mul_vec(&x), &y);
        res = res.max(d.to_f64_lossy().abs());
    }
    Check::exact("bracket_duality", samples, res)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let alg = args.algebra.algebra()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks: Vec<Check> = composition_checks(alg.kind(), args.samples, &mut rng).into();

    let ht = alg.check_heisenberg_type::<Q, _>(args.samples, &mut rng);
    checks.push(Check::exact("heisenberg_type", ht.samples, ht.max_residual));
    checks.push(bracket_check(&alg, args.samples, &mut rng));

    let mut orth = 0.0f64;
    let mut inter = 0.0f64;
    for k in 0..alg.dim_z() {
        let sig = SigmaMap::<Q>::new(alg, &unit_vector(alg.dim_z(), k), None)?;
        orth = orth.max(sig.orthogonality_residual().max_abs());
        inter = inter.max(sig.j_intertwine_residual(&Q::from_integer(1.into())).max_abs());
    }
    checks.push(Check::exact("sigma_orthogonality", alg.dim_z(), orth));
    checks.push(Check::exact("sigma_intertwining_basis", alg.dim_z(), inter));

    let mut worst = 0.0f64;
    for _ in 0..args.unit_samples {
        let z = random_unit(&mut rng, alg.dim_z());
        let sig = SigmaMap::<f64>::new(alg, &z, None)?;
        worst = worst.max(sig.j_intertwine_residual(&1.0).frobenius_norm());
    }
    checks.push(Check {
        name: "sigma_intertwining_random_unit",
        passed: worst < args.tol,
        samples: args.unit_samples,
        max_residual: worst,
        exact: false,
    });

    let passed = checks.iter().all(|c| c.passed);
    let signature = alg.isotypic_signature();
    let mut text = format!("verify {alg} (target {})\n", alg.isotypic_partner());
    for c in &checks {
        let _ = writeln!(
            text,
            "{:<32} {:<4} samples={:<5} max_residual={:e}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.samples,
            c.max_residual
        );
    }
    let _ = writeln!(text, "isotypic_signature {signature}");
    let json = document(
        "verify",
        args,
        json!({
            "algebra": alg,
            "target": alg.isotypic_partner(),
            "isotypic_signature": signature,
            "checks": checks,
            "passed": passed,
        }),
    );
    Ok(Outcome { json, text, csv: None, passed })
}

fn sweep<T: Scalar>(
    alg: HeisenbergAlgebra,
    mode: &FourierMode,
    c: Option<PositiveRational>,
    degree: u32,
) -> Result<SymbolicResidual, CoreError> {
    let sig = sigma_for_mode::<T>(alg, mode)?;
    let mut src = FiberOperator::<T>::new(alg, mode.clone())?;
    let mut dst = FiberOperator::<T>::new(sig.target(), mode.clone())?;
    if let Some(c) = c {
        src = src.with_coeff_c(c.to_scalar())?;
        dst = dst.with_coeff_c(c.to_scalar())?;
    }
    intertwine_residual_sym(&src, &dst, &sig, degree)
}

pub fn cmd_intertwine(args: &IntertwineArgs) -> CliResult<Outcome> {
    let alg = args.algebra.algebra()?;
    let mode = args.mode.mode(alg.dim_z())?;
    if mode.is_zero() {
        return Err(CliError::Usage("alpha must be nonzero".into()));
    }
    let exact_run = match args.exact {
        Exact::Big => sweep::<Q>(alg, &mode, args.mode.coeff_c, args.degree),
        Exact::I64 => sweep::<Rational64>(alg, &mode, args.mode.coeff_c, args.degree),
    };
    // Oblique modes need an irrational ν; fall back to floating point there.
    let res = match exact_run {
        Err(CoreError::IrrationalNorm) => sweep::<f64>(alg, &mode, args.mode.coeff_c, args.degree)?,
        other => other?,
    };
    let passed = res.is_zero();
    let mut text = format!(
        "intertwine {alg} -> {} alpha=({mode}) exact={}\n{:>6} {:>10} {:>8} {:>14}\n",
        alg.isotypic_partner(),
        res.exact,
        "degree",
        "monomials",
        "nonzero",
        "max_residual"
    );
    for d in 0..res.per_degree.len() {
        let _ = writeln!(
            text,
            "{:>6} {:>10} {:>8} {:>14e}",
            d, res.monomials_per_degree[d], res.nonzero_per_degree[d], res.per_degree[d]
        );
    }
    let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
    let json = document(
        "intertwine",
        args,
        json!({
            "source": alg,
            "target": alg.isotypic_partner(),
            "alpha": mode,
            "residual": res,
            "passed": passed,
        }),
    );
    Ok(Outcome { json, text, csv: None, passed })
}

#[derive(Clone, Debug, Serialize)]
struct SpectrumRecord {
    algebra: HeisenbergAlgebra,
    basis_size: usize,
    eigenvalues: Vec<f64>,
}

fn spectrum_of(alg: HeisenbergAlgebra, mode: &FourierMode, args: &SpectrumArgs) -> CliResult<SpectrumRecord> {
    let mut op = FiberOperator::<f64>::new(alg, mode.clone())?;
    if let Some(c) = args.mode.coeff_c {
        op = op.with_coeff_c(c.to_scalar())?;
    }
    let t = hermite_matrix(&op, args.degree, args.cap)?;
    let cfg = EigenConfig { dense_limit: args.dense_limit, tol: args.eig_tol, seed: args.seed, ..EigenConfig::default() };
    let eigenvalues = extreme_eigenvalues(&t, args.k, &cfg)?;
    Ok(SpectrumRecord { algebra: alg, basis_size: t.size(), eigenvalues })
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> CliResult<Outcome> {
    let alg = args.algebra.algebra()?;
    let mode = args.mode.mode(alg.dim_z())?;
    if args.k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let records: Vec<SpectrumRecord> = if args.pair {
        let partner = alg.isotypic_partner();
        let (a, b) = rayon::join(|| spectrum_of(alg, &mode, args), || spectrum_of(partner, &mode, args));
        vec![a?, b?]
    } else {
        vec![spectrum_of(alg, &mode, args)?]
    };
    let max_abs_diff = (records.len() == 2).then(|| {
        records[0].eigenvalues.iter().zip(&records[1].eigenvalues).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    });
    let passed = max_abs_diff.is_none_or(|d| d <= args.diff_tol);

    let mut csv = String::from("algebra,p,q,alpha,degree,index,eigenvalue\n");
    let mut text = String::new();
    for r in &records {
        let _ = writeln!(text, "{} alpha=({mode}) degree={} basis={}", r.algebra, args.degree, r.basis_size);
        for (i, ev) in r.eigenvalues.iter().enumerate() {
            let _ = writeln!(csv, "{},{},{},\"{mode}\",{},{i},{ev}", r.algebra.kind(), r.algebra.p(), r.algebra.q(), args.degree);
            let _ = writeln!(text, "{i:>5} {ev:>24.12}");
        }
    }
    if let Some(d) = max_abs_diff {
        let _ = writeln!(text, "max |Δλ| = {d:e} ({})", if passed { "PASS" } else { "FAIL" });
    }
    let json = document(
        "spectrum",
        args,
        json!({
            "alpha": mode,
            "spectra": records,
            "max_abs_diff": max_abs_diff,
            "passed": passed,
        }),
    );
    Ok(Outcome { json, text, csv: Some(csv), passed })
}

pub fn cmd_classify(args: &ClassifyArgs) -> CliResult<Outcome> {
    let (input, profile) = match (args.dim_z, args.dim_v) {
        (Some(dz), Some(dv)) => {
            let isotypic = !args.non_isotypic;
            (json!({ "dim_z": dz, "dim_v": dv, "isotypic": isotypic }), classify(dz, dv, isotypic)?)
        }
        _ => {
            let alg = args.algebra.algebra()?;
            (
                json!({ "algebra": alg, "dim_z": alg.dim_z(), "dim_v": alg.dim_v(), "isotypic": alg.is_isotypic() }),
                classify_algebra(&alg),
            )
        }
    };
    let mut text = format!("classify {input}\n");
    for p in heisospec::Property::ALL {
        let _ = writeln!(text, "{:<24} {}", p.name(), profile.get(p));
    }
    let unit = input["dim_z"].as_u64().and_then(|z| irreducible_module_dim(z as usize));
    let json = document(
        "classify",
        args,
        json!({ "input": input, "irreducible_module_dim": unit, "profile": profile }),
    );
    Ok(Outcome { json, text, csv: None, passed: true })
}

pub fn cmd_report(args: &ReportArgs) -> CliResult<Outcome> {
    let a = HeisenbergAlgebra::new(args.kind, args.pair.a.0, args.pair.a.1)?;
    let b = HeisenbergAlgebra::new(args.kind, args.pair.b.0, args.pair.b.1)?;
    let report = audibility_report(&a, &b)?;
    let mut text = report.to_string();
    text.push('\n');
    let json = document("report", args, json!({ "report": report }));
    Ok(Outcome { json, text, csv: None, passed: true })
}
