use anyhow::{bail, Result};
use serde::Serialize;

use ppt_moments::circuit::{max_circuit_order, sample_moments, ShotEstimate};
use ppt_moments::graph::{
    enumerate_prime_classes, graph_conditions, graph_from_matrix, zeta_coeffs_via_moments,
    zeta_inverse_coeffs_via_primes, GraphCondition, DEFAULT_EDGE_THRESHOLD,
};
use ppt_moments::linalg::{partial_transpose, DensityJson, Subsystem};
use ppt_moments::ppt::{
    f_sequence, moments_of_partial_transpose, oracle_ppt, report, sampled_f_sequence, OracleResult,
    ReportOptions, SampledFSequence, SignFlag, Verdict,
};
use ppt_moments::{DensityMatrix, MomentVector, TestReport};

use crate::output::{csv, json};
use crate::{Format, Outcome, RunConfig, StateSpec, EXIT_ENTANGLED, EXIT_INCONCLUSIVE, EXIT_PPT_CONSISTENT};

/// Agreement required between the two zeta coefficient paths.
pub const ZETA_PATH_TOL: f64 = 1e-9;

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::PptConsistent => EXIT_PPT_CONSISTENT,
        Verdict::Entangled => EXIT_ENTANGLED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub struct Sampled {
    pub estimates: Vec<ShotEstimate>,
    pub seq: SampledFSequence<f64>,
}

/// Moments from simulated circuit runs, then `f(k)` with propagated errors.
pub fn sampled(rho: &DensityMatrix, m: usize, cfg: &RunConfig) -> Result<Sampled> {
    let shots = cfg.shots.expect("shots mode");
    let limit = max_circuit_order(rho.partition());
    if m > limit {
        bail!("shots mode reaches k = {limit} for dimension {} under the circuit size guard; lower --max-k", rho.dim());
    }
    let estimates = sample_moments(rho, m, shots, cfg.seed)?;
    let p = MomentVector::new(estimates.iter().map(|e| e.mean).collect());
    let errors: Vec<f64> = estimates.iter().map(|e| e.std_error).collect();
    let seq = sampled_f_sequence(&p, &errors, cfg.tol);
    Ok(Sampled { estimates, seq })
}

#[derive(Serialize)]
struct TestOutput<'a> {
    state: String,
    #[serde(flatten)]
    report: &'a TestReport,
}

#[derive(Serialize)]
struct SampledOutput<'a> {
    state: String,
    shots: u64,
    seed: u64,
    tolerance: f64,
    estimates: &'a [ShotEstimate],
    f: &'a [f64],
    std_errors: &'a [f64],
    flags: &'a [SignFlag],
    verdict: Verdict,
    first_violation: Option<usize>,
    oracle: Option<OracleResult<f64>>,
}

impl<'a> SampledOutput<'a> {
    fn new(spec: &StateSpec, s: &'a Sampled, cfg: &RunConfig, oracle: Option<OracleResult<f64>>) -> Self {
        Self {
            state: spec.to_string(),
            shots: cfg.shots.unwrap_or(0),
            seed: cfg.seed,
            tolerance: cfg.tol,
            estimates: &s.estimates,
            f: s.seq.f.values(),
            std_errors: &s.seq.std_errors,
            flags: &s.seq.flags,
            verdict: s.seq.verdict,
            first_violation: s.seq.flags.iter().position(|f| *f == SignFlag::Negative).map(|i| i + 1),
            oracle,
        }
    }
}

#[derive(Serialize)]
struct FRow {
    k: usize,
    f_k: f64,
}

#[derive(Serialize)]
struct SampledFRow {
    k: usize,
    f_k: f64,
    std_error: f64,
    flag: SignFlag,
}

#[derive(Serialize)]
struct TestRow {
    k: usize,
    p_k: f64,
    f_k: f64,
}

fn sampled_f_rows(s: &Sampled) -> Vec<SampledFRow> {
    (1..=s.seq.f.len())
        .map(|k| SampledFRow { k, f_k: s.seq.f.f(k), std_error: s.seq.std_errors[k - 1], flag: s.seq.flags[k - 1] })
        .collect()
}

pub fn test(spec: &StateSpec, cfg: &RunConfig) -> Result<Outcome> {
    let rho = spec.build()?;
    let m = cfg.max_k.resolve(rho.dim())?;
    let format = cfg.format.unwrap_or(Format::Json);
    if cfg.shots.is_some() {
        let s = sampled(&rho, m, cfg)?;
        let oracle = if cfg.oracle { Some(oracle_ppt(&rho, cfg.tol)?) } else { None };
        let text = match format {
            Format::Json => json(&SampledOutput::new(spec, &s, cfg, oracle))?,
            Format::Csv => csv(sampled_f_rows(&s))?,
        };
        return Ok(Outcome::new(text, verdict_code(s.seq.verdict)));
    }
    let opts = ReportOptions { tol: cfg.tol, max_k: Some(m), subsystem: Subsystem::B, oracle: cfg.oracle };
    let rep = report(&rho, &opts)?;
    let text = match format {
        Format::Json => json(&TestOutput { state: spec.to_string(), report: &rep })?,
        Format::Csv => csv((1..=m).map(|k| TestRow { k, p_k: rep.moments[k - 1], f_k: rep.f.f(k) }))?,
    };
    Ok(Outcome::new(text, verdict_code(rep.verdict)))
}

#[derive(Serialize)]
struct FSeriesOutput<'a> {
    state: String,
    tolerance: f64,
    f: &'a [f64],
    first_violation: Option<usize>,
}

pub fn fseries(spec: &StateSpec, cfg: &RunConfig) -> Result<Outcome> {
    let rho = spec.build()?;
    let m = cfg.max_k.resolve(rho.dim())?;
    let format = cfg.format.unwrap_or(Format::Csv);
    if cfg.shots.is_some() {
        let s = sampled(&rho, m, cfg)?;
        let text = match format {
            Format::Json => json(&SampledOutput::new(spec, &s, cfg, None))?,
            Format::Csv => csv(sampled_f_rows(&s))?,
        };
        return Ok(Outcome::new(text, 0));
    }
    let f = f_sequence(&rho, m, cfg.tol)?;
    let text = match format {
        Format::Json => json(&FSeriesOutput {
            state: spec.to_string(),
            tolerance: cfg.tol,
            f: f.values(),
            first_violation: f.first_violation(),
        })?,
        Format::Csv => csv((1..=m).map(|k| FRow { k, f_k: f.f(k) }))?,
    };
    Ok(Outcome::new(text, 0))
}

#[derive(Serialize)]
struct MomentRow {
    k: usize,
    p_k: f64,
}

#[derive(Serialize)]
struct MomentsOutput<'a> {
    state: String,
    moments: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    estimates: Option<&'a [ShotEstimate]>,
}

pub fn moments(spec: &StateSpec, cfg: &RunConfig) -> Result<Outcome> {
    let rho = spec.build()?;
    let m = cfg.max_k.resolve(rho.dim())?;
    let format = cfg.format.unwrap_or(Format::Csv);
    if let Some(shots) = cfg.shots {
        let limit = max_circuit_order(rho.partition());
        if m > limit {
            bail!("shots mode reaches k = {limit} for dimension {} under the circuit size guard; lower --max-k", rho.dim());
        }
        let est = sample_moments(&rho, m, shots, cfg.seed)?;
        let means: Vec<f64> = est.iter().map(|e| e.mean).collect();
        let text = match format {
            Format::Json => json(&MomentsOutput { state: spec.to_string(), moments: &means, estimates: Some(&est) })?,
            Format::Csv => csv(&est)?,
        };
        return Ok(Outcome::new(text, 0));
    }
    let p = moments_of_partial_transpose(&rho, m)?;
    let text = match format {
        Format::Json => json(&MomentsOutput { state: spec.to_string(), moments: p.values(), estimates: None })?,
        Format::Csv => csv((1..=m).map(|k| MomentRow { k, p_k: *p.p(k) }))?,
    };
    Ok(Outcome::new(text, 0))
}

/// Vertex labels are 1-based throughout the JSON output.
#[derive(Serialize)]
pub struct PrimeJson {
    /// Edges `(from, to)` of the least rotation.
    pub rotation: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
    pub length: usize,
    pub weight_re: f64,
    pub weight_im: f64,
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct ZetaOutput {
    pub state: String,
    pub graph: Vec<EdgeJson>,
    pub adjacency: String,
    pub primes: Vec<PrimeJson>,
    pub coeffs_primes: Vec<f64>,
    pub coeffs_moments: Vec<f64>,
    pub conditions: Vec<GraphCondition<f64>>,
    pub first_violation: Option<usize>,
}

#[derive(Serialize)]
struct ZetaRow {
    k: usize,
    coeff_primes: f64,
    coeff_moments: f64,
    lhs: f64,
    rhs: f64,
    satisfied: bool,
    coefficient_satisfied: bool,
}

pub fn zeta_output(spec: &StateSpec, cfg: &RunConfig) -> Result<ZetaOutput> {
    let rho = spec.build()?;
    let m = cfg.max_k.resolve(rho.dim())?;
    let pt = partial_transpose(&rho, Subsystem::B);
    let g = graph_from_matrix(&pt, DEFAULT_EDGE_THRESHOLD)?;
    let primes = enumerate_prime_classes(&g, m)?;
    let coeffs_primes = zeta_inverse_coeffs_via_primes(&g, m)?;
    let coeffs_moments = zeta_coeffs_via_moments(&pt, m)?;
    let worst = coeffs_primes.iter().zip(&coeffs_moments).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if worst > ZETA_PATH_TOL {
        bail!("internal consistency failure: prime and moment zeta coefficients differ by {worst:e}");
    }
    let conditions = graph_conditions(&g, m)?;
    let first_violation = conditions.iter().find(|c| !c.coefficient_satisfied).map(|c| c.k);
    let primes = primes
        .iter()
        .map(|p| PrimeJson {
            rotation: p.edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect(),
            vertices: p.vertices().iter().map(|v| v + 1).collect(),
            length: p.length(),
            weight_re: p.weight().re,
            weight_im: p.weight().im,
        })
        .collect();
    let graph = g
        .edges()
        .iter()
        .map(|e| EdgeJson { from: e.from + 1, to: e.to + 1, re: e.weight.re, im: e.weight.im })
        .collect();
    Ok(ZetaOutput {
        state: spec.to_string(),
        graph,
        adjacency: g.describe(),
        primes,
        coeffs_primes,
        coeffs_moments,
        conditions,
        first_violation,
    })
}

pub fn zeta(spec: &StateSpec, cfg: &RunConfig) -> Result<Outcome> {
    let z = zeta_output(spec, cfg)?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json(&z)?,
        Format::Csv => csv(z.conditions.iter().map(|c| ZetaRow {
            k: c.k,
            coeff_primes: z.coeffs_primes[c.k],
            coeff_moments: z.coeffs_moments[c.k],
            lhs: c.lhs,
            rhs: c.rhs,
            satisfied: c.satisfied,
            coefficient_satisfied: c.coefficient_satisfied,
        }))?,
    };
    Ok(Outcome::new(text, 0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub param: f64,
    pub first_violation: Option<usize>,
    pub min_f: f64,
    pub final_f: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_pt_eig: Option<f64>,
}

pub fn scan_rows(spec: &StateSpec, param: &str, range: &crate::Range, cfg: &RunConfig) -> Result<Vec<ScanRow>> {
    // validate the parameter before doing any work
    spec.with_param(param, range.lo)?;
    range
        .points()
        .into_iter()
        .map(|x| {
            let rho = spec.with_param(param, x)?.build()?;
            let m = cfg.max_k.resolve(rho.dim())?;
            let f = f_sequence(&rho, m, cfg.tol)?;
            let min_pt_eig = if cfg.oracle { Some(oracle_ppt(&rho, cfg.tol)?.min_eig) } else { None };
            Ok(ScanRow {
                param: x,
                first_violation: f.first_violation(),
                min_f: f.min().unwrap_or(f64::NAN),
                final_f: f.last().unwrap_or(f64::NAN),
                min_pt_eig,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct ScanOutput<'a> {
    state: String,
    param: &'a str,
    rows: &'a [ScanRow],
}

pub fn scan(spec: &StateSpec, param: &str, range: &crate::Range, cfg: &RunConfig) -> Result<Outcome> {
    let rows = scan_rows(spec, param, range, cfg)?;
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => json(&ScanOutput { state: spec.to_string(), param, rows: &rows })?,
        Format::Csv => csv(&rows)?,
    };
    Ok(Outcome::new(text, 0))
}

pub fn export(spec: &StateSpec) -> Result<Outcome> {
    let rho = spec.build()?;
    Ok(Outcome::new(json(&DensityJson::from(&rho))?, 0))
}
