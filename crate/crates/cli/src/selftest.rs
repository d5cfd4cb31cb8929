//! Cross-path consistency suite behind `pptm selftest`.

use std::fmt::Write;

use anyhow::Result;
use serde::Serialize;

use ppt_moments::circuit::{hadamard_test_probabilities, perm_moment_trace_complex, sample_hadamard_test};
use ppt_moments::graph::{graph_from_matrix, zeta_coeffs_via_moments, zeta_inverse_coeffs_via_primes, DEFAULT_EDGE_THRESHOLD};
use ppt_moments::linalg::{hermitian_eigenvalues, partial_transpose, trace_of_power, Subsystem};
use ppt_moments::ppt::{f_sequence, oracle_ppt, OracleVerdict};
use ppt_moments::states::{bell_state, random_density, random_density_with_rank, random_hermitian};
use ppt_moments::sympoly::{
    descartes_bound, elementary_closed_form, elementary_direct, elementary_from_roots, newton_elementary, Polynomial,
};
use ppt_moments::MomentVector;

use crate::output::{csv, json};
use crate::{Format, Outcome, RunConfig};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &'static str, cases: usize, max_deviation: f64, tolerance: f64) -> Self {
        Self { name, cases, max_deviation, tolerance, passed: max_deviation <= tolerance }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Seeded spectrum rescaled into `[−1, 1]`.
fn spectrum(n: usize, seed: u64) -> Result<Vec<f64>> {
    let eigs = hermitian_eigenvalues(&random_hermitian::<f64>(n, seed))?;
    let radius = eigs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    Ok(eigs.into_iter().map(|x| x / radius).collect())
}

fn symmetric_paths(cases: usize) -> Result<Check> {
    let mut worst = 0.0f64;
    for seed in 0..cases as u64 {
        let n = 1 + (seed as usize % 8);
        let eigs = spectrum(n, seed)?;
        let p = MomentVector::from_spectrum(&eigs, n + 2);
        let newton = newton_elementary(&p, n + 2);
        for k in 1..=n + 2 {
            let direct = elementary_direct(&eigs, k);
            let closed = elementary_closed_form(&p, k);
            worst = worst.max(rel(direct, newton[k - 1])).max(rel(direct, closed));
        }
    }
    Ok(Check::new("elementary: direct = Newton = closed form", cases, worst, 1e-9))
}

fn moment_identity(cases: usize) -> Result<Check> {
    let mut worst = 0.0f64;
    for seed in 0..cases as u64 {
        let rho = random_density::<f64>(2, 2, seed)?;
        let pt = partial_transpose(&rho, Subsystem::B);
        for k in 1..=3 {
            let d = perm_moment_trace_complex(&rho, k)? - trace_of_power(&pt, k)?;
            worst = worst.max(d.norm());
        }
    }
    Ok(Check::new("circuit trace = tr((rho^G)^k)", cases, worst, 1e-10))
}

fn circuit_probabilities(cases: usize) -> Result<Check> {
    let mut worst = 0.0f64;
    for seed in 0..cases as u64 {
        let rho = random_density::<f64>(2, 2, seed)?;
        for k in 1..=3 {
            let (p0, p1) = hadamard_test_probabilities(&rho, k)?;
            worst = worst.max((p0 + p1 - 1.0).abs());
        }
    }
    Ok(Check::new("ancilla P(0) + P(1) = 1", cases, worst, 1e-12))
}

fn hierarchy_vs_oracle(cases: usize, tol: f64) -> Result<Check> {
    let mut mismatches = 0usize;
    let mut decisive = 0usize;
    for seed in 0..cases as u64 {
        let (da, db) = if seed % 2 == 0 { (2, 2) } else { (2, 3) };
        let rank = 1 + (seed as usize / 2) % (da * db);
        let rho = random_density_with_rank::<f64>(da, db, rank, seed)?;
        let o = oracle_ppt(&rho, tol)?;
        if o.min_eig.abs() <= 1e-8 {
            continue;
        }
        decisive += 1;
        let f = f_sequence(&rho, rho.dim(), tol)?;
        if f.first_violation().is_some() != (o.verdict == OracleVerdict::Npt) {
            mismatches += 1;
        }
    }
    Ok(Check::new("f-sequence verdict = eigenvalue oracle", decisive, mismatches as f64, 0.0))
}

fn zeta_paths(cases: usize) -> Result<Check> {
    let mut worst = 0.0f64;
    for seed in 0..cases as u64 {
        let n = 4 + (seed as usize % 2);
        let m = random_hermitian::<f64>(n, seed);
        let g = graph_from_matrix(&m, DEFAULT_EDGE_THRESHOLD)?;
        let primes = zeta_inverse_coeffs_via_primes(&g, n)?;
        let moments = zeta_coeffs_via_moments(&m, n)?;
        let e = elementary_from_roots(&hermitian_eigenvalues(&m)?);
        for k in 0..=n {
            worst = worst.max(rel(primes[k], moments[k])).max(rel(primes[k], e[k]));
        }
    }
    Ok(Check::new("zeta: Euler product = moment exponential = e_k", cases, worst, 1e-9))
}

fn descartes(cases: usize) -> Result<Check> {
    let mut failures = 0usize;
    for seed in 0..cases as u64 {
        let n = 1 + (seed as usize % 8);
        let roots = spectrum(n, seed.wrapping_mul(31).wrapping_add(5))?;
        let positive = roots.iter().filter(|r| **r > 0.0).count();
        let bound = descartes_bound(&Polynomial::from_roots(&roots));
        if bound < positive || (bound - positive) % 2 != 0 {
            failures += 1;
        }
    }
    Ok(Check::new("Descartes bound and parity", cases, failures as f64, 0.0))
}

fn sampler(seed: u64) -> Result<Check> {
    let rho = bell_state::<f64>();
    let a = sample_hadamard_test(&rho, 3, 20_000, seed)?;
    let b = sample_hadamard_test(&rho, 3, 20_000, seed)?;
    let z = if a == b { (a.mean - 0.25).abs() / a.std_error.max(f64::MIN_POSITIVE) } else { f64::INFINITY };
    Ok(Check::new("sampler reproducible, |mean - p3| / stderr", 1, z, 5.0))
}

fn bell_example() -> Result<Check> {
    let f = f_sequence(&bell_state::<f64>(), 4, 1e-9)?;
    let expected = [1.0, 0.0, -0.25, -0.0625];
    let mut worst = f.values().iter().zip(expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if f.first_violation() != Some(3) {
        worst = f64::INFINITY;
    }
    Ok(Check::new("Bell f = (1, 0, -1/4, -1/16)", 1, worst, 1e-9))
}

pub fn checks(cases: usize, cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(vec![
        bell_example()?,
        symmetric_paths(cases)?,
        moment_identity(cases)?,
        circuit_probabilities(cases)?,
        hierarchy_vs_oracle(cases.max(2) * 4, cfg.tol)?,
        zeta_paths(cases)?,
        descartes(cases)?,
        sampler(cfg.seed)?,
    ])
}

pub fn run(cases: usize, cfg: &RunConfig) -> Result<Outcome> {
    let checks = checks(cases, cfg)?;
    let code = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
    let text = match cfg.format {
        Some(Format::Json) => json(&checks)?,
        Some(Format::Csv) => csv(&checks)?,
        None => {
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for c in &checks {
                writeln!(
                    s,
                    "{:<width$}  {:>5} cases  max dev {:<10.3e} tol {:<8.1e} {}",
                    c.name,
                    c.cases,
                    c.max_deviation,
                    c.tolerance,
                    if c.passed { "PASS" } else { "FAIL" }
                )?;
            }
            s
        }
    };
    Ok(Outcome::new(text, code))
}
