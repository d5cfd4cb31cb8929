//! The moment hierarchy: `f(k) = e_k(spec ρ^Γ)` evaluated from the moments
//! of the partial transpose through the cycle-index closed form, for
//! `k = 1..d`. All `f(k) ≥ 0` is equivalent to `ρ^Γ ⪰ 0`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, numerical_rank, partial_transpose, traces_of_powers, DensityMatrix, Subsystem,
};
use crate::scalar::Real;
use crate::sympoly::{elementary_closed_form, elementary_from_roots, MomentVector};

/// Default tolerance on the sign tests `f(k) ≥ −tol`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Eigenvalues above this count towards the numerical rank.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// `f(1), …, f(m)` with the least violating order.
#[derive(Debug, Clone, PartialEq)]
pub struct FSequence<T> {
    values: Vec<T>,
    tolerance: T,
    first_violation: Option<usize>,
}

impl<T: Real> FSequence<T> {
    pub fn new(values: Vec<T>, tolerance: T) -> Self {
        let first_violation = values.iter().position(|&f| f < -tolerance).map(|i| i + 1);
        Self { values, tolerance, first_violation }
    }

    /// Closed-form evaluation for `k = 1..=m`.
    pub fn from_moments(p: &MomentVector<T>, m: usize, tolerance: T) -> Self {
        Self::new((1..=m).map(|k| elementary_closed_form(p, k)).collect(), tolerance)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `f(k)`, 1-indexed.
    pub fn f(&self, k: usize) -> T {
        self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.first_violation
    }

    pub fn min(&self) -> Option<T> {
        self.values.iter().copied().reduce(T::min)
    }

    pub fn last(&self) -> Option<T> {
        self.values.last().copied()
    }
}

impl<T: Serialize> Serialize for FSequence<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Entangled,
    PptConsistent,
    /// Only produced from sampled moments.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum OracleVerdict {
    Npt,
    Ppt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult<T> {
    pub min_eig: T,
    pub verdict: OracleVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport<T> {
    pub dimension: usize,
    pub subsystem: Subsystem,
    pub tolerance: T,
    pub moments: Vec<T>,
    pub f: FSequence<T>,
    pub verdict: Verdict,
    pub first_violation: Option<usize>,
    pub oracle: Option<OracleResult<T>>,
    /// `r_k = k·f(k)` in the expanded low-order forms, `k ≤ 4`.
    pub residuals: Vec<T>,
    /// Rank of `ρ` (eigenvalues above [`RANK_THRESHOLD`]).
    pub numerical_rank: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions<T> {
    pub tol: T,
    /// Highest order evaluated; `None` means the full dimension.
    pub max_k: Option<usize>,
    pub subsystem: Subsystem,
    pub oracle: bool,
}

impl<T: Real> ReportOptions<T> {
    pub fn new(tol: T) -> Self {
        Self { tol, max_k: None, subsystem: Subsystem::B, oracle: true }
    }
}

impl<T: Real> Default for ReportOptions<T> {
    fn default() -> Self {
        Self::new(T::lit(DEFAULT_TOL))
    }
}

fn moment_imag_tol<T: Real>() -> T {
    T::validation_tol()
}

/// `p_k = tr((ρ^Γ)^k)` for `k = 1..=m`, transposing the chosen factor.
pub fn moments_with_subsystem<T: Real>(
    rho: &DensityMatrix<T>,
    m: usize,
    which: Subsystem,
) -> Result<MomentVector<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one moment".into()));
    }
    let pt = partial_transpose(rho, which);
    let traces = traces_of_powers(&pt, m)?;
    let tol = moment_imag_tol::<T>();
    let mut values = Vec::with_capacity(m);
    for (k, z) in traces.into_iter().enumerate() {
        if z.im.abs() > tol * T::one().max(z.re.abs()) {
            return Err(Error::Consistency(format!(
                "moment p_{} has imaginary part {:e}",
                k + 1,
                z.im
            )));
        }
        values.push(z.re);
    }
    if (values[0] - T::one()).abs() > tol {
        return Err(Error::Consistency(format!("p_1 = {} differs from 1", values[0])));
    }
    Ok(MomentVector::new(values))
}

/// Moments of the partial transpose on subsystem B.
pub fn moments_of_partial_transpose<T: Real>(rho: &DensityMatrix<T>, m: usize) -> Result<MomentVector<T>> {
    moments_with_subsystem(rho, m, Subsystem::B)
}

/// Spectrum of `ρ^Γ`, ascending.
pub fn pt_spectrum<T: Real>(rho: &DensityMatrix<T>, which: Subsystem) -> Result<Vec<T>> {
    hermitian_eigenvalues(&partial_transpose(rho, which))
}

fn cross_path_tol<T: Real>() -> T {
    T::lit(1e-8).max(T::validation_tol() * T::lit(100.0))
}

/// `f(1..=m)` from the closed form, checked against `e_k` of the eigenvalue
/// spectrum of `ρ^Γ`.
pub fn f_sequence<T: Real>(rho: &DensityMatrix<T>, m: usize, tol: T) -> Result<FSequence<T>> {
    f_sequence_with_subsystem(rho, m, tol, Subsystem::B)
}

pub fn f_sequence_with_subsystem<T: Real>(
    rho: &DensityMatrix<T>,
    m: usize,
    tol: T,
    which: Subsystem,
) -> Result<FSequence<T>> {
    let d = rho.dim();
    if m == 0 || m > d {
        return Err(Error::InvalidArgument(format!("order {m} outside 1..={d}")));
    }
    let p = moments_with_subsystem(rho, m, which)?;
    let f = FSequence::from_moments(&p, m, tol);
    let e = elementary_from_roots(&pt_spectrum(rho, which)?);
    let ctol = cross_path_tol::<T>();
    for k in 1..=m {
        let diff = (f.f(k) - e[k]).abs();
        if diff > ctol {
            return Err(Error::Consistency(format!(
                "f({k}) = {} but e_{k}(spectrum) = {} (difference {diff:e})",
                f.f(k),
                e[k]
            )));
        }
    }
    Ok(f)
}

/// Expanded low-order inequalities as residuals `r_k ≥ 0`:
/// `r_1 = p_1`, `r_2 = p_1² − p_2`, `r_3 = p_3 + p_1³/2 − 3p_1p_2/2`,
/// `r_4 = (p_1² − p_2)²/2 − p_1⁴/3 + 4p_1p_3/3 − p_4`.
/// Orders beyond the supplied moments are omitted.
pub fn low_order_inequalities<T: Real>(p: &MomentVector<T>) -> Vec<T> {
    let n = p.len().min(4);
    let get = |j: usize| *p.p(j);
    let half = T::lit(0.5);
    let mut r = Vec::with_capacity(n);
    if n >= 1 {
        r.push(get(1));
    }
    if n >= 2 {
        r.push(get(1) * get(1) - get(2));
    }
    if n >= 3 {
        let p1 = get(1);
        r.push(get(3) + half * p1.powi(3) - T::lit(1.5) * p1 * get(2));
    }
    if n >= 4 {
        let (p1, p2, p3, p4) = (get(1), get(2), get(3), get(4));
        let a = p1 * p1 - p2;
        r.push(half * a * a - p1.powi(4) / T::lit(3.0) + T::lit(4.0) / T::lit(3.0) * p1 * p3 - p4);
    }
    r
}

/// PPT test by direct diagonalisation of `ρ^Γ`.
pub fn oracle_ppt<T: Real>(rho: &DensityMatrix<T>, tol: T) -> Result<OracleResult<T>> {
    oracle_with_subsystem(rho, tol, Subsystem::B)
}

pub fn oracle_with_subsystem<T: Real>(rho: &DensityMatrix<T>, tol: T, which: Subsystem) -> Result<OracleResult<T>> {
    let min_eig = pt_spectrum(rho, which)?[0];
    let verdict = if min_eig < -tol { OracleVerdict::Npt } else { OracleVerdict::Ppt };
    Ok(OracleResult { min_eig, verdict })
}

/// Hierarchy over `k = 1..d` with the eigenvalue oracle.
pub fn full_report<T: Real>(rho: &DensityMatrix<T>, tol: T) -> Result<TestReport<T>> {
    report(rho, &ReportOptions::new(tol))
}

pub fn report<T: Real>(rho: &DensityMatrix<T>, opts: &ReportOptions<T>) -> Result<TestReport<T>> {
    let d = rho.dim();
    let m = opts.max_k.unwrap_or(d);
    let f = f_sequence_with_subsystem(rho, m, opts.tol, opts.subsystem)?;
    let p = moments_with_subsystem(rho, m, opts.subsystem)?;
    let verdict = if f.first_violation().is_some() { Verdict::Entangled } else { Verdict::PptConsistent };

    let oracle = if opts.oracle {
        let o = oracle_with_subsystem(rho, opts.tol, opts.subsystem)?;
        let decisive = o.min_eig.abs() > T::lit(10.0) * opts.tol;
        let agrees = matches!(
            (verdict, o.verdict),
            (Verdict::Entangled, OracleVerdict::Npt) | (Verdict::PptConsistent, OracleVerdict::Ppt)
        );
        // a truncated hierarchy (m < d) may legitimately miss a violation
        if decisive && !agrees && !(m < d && verdict == Verdict::PptConsistent) {
            return Err(Error::Consistency(format!(
                "moment hierarchy says {verdict:?} but min PT eigenvalue is {:e}",
                o.min_eig
            )));
        }
        Some(o)
    } else {
        None
    };

    let rank = numerical_rank(&hermitian_eigenvalues(rho.matrix())?, T::lit(RANK_THRESHOLD));
    Ok(TestReport {
        dimension: d,
        subsystem: opts.subsystem,
        tolerance: opts.tol,
        residuals: low_order_inequalities(&p),
        moments: p.into_values(),
        first_violation: f.first_violation(),
        f,
        verdict,
        oracle,
        numerical_rank: rank,
    })
}

/// Sign of one `f(k)` estimated from sampled moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignFlag {
    NonNegative,
    Negative,
    /// Within three standard errors of zero.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFSequence<T> {
    pub f: FSequence<T>,
    pub std_errors: Vec<T>,
    pub flags: Vec<SignFlag>,
    pub verdict: Verdict,
}

/// `f(k)` from noisy moments with first-order error propagation, using
/// `∂e_k/∂p_j = (−1)^{j+1} e_{k−j} / j`.
pub fn sampled_f_sequence<T: Real>(p: &MomentVector<T>, p_err: &[T], tol: T) -> SampledFSequence<T> {
    let m = p.len();
    assert_eq!(p_err.len(), m, "one standard error per moment");
    let f = FSequence::from_moments(p, m, tol);
    let e = |k: usize| if k == 0 { T::one() } else { f.f(k) };
    let three = T::lit(3.0);
    let mut std_errors = Vec::with_capacity(m);
    let mut flags = Vec::with_capacity(m);
    for k in 1..=m {
        let var = (1..=k).fold(T::zero(), |acc, j| {
            let g = e(k - j) / T::from_usize(j).expect("small");
            acc + (g * p_err[j - 1]).powi(2)
        });
        let sigma = var.sqrt();
        let fk = f.f(k);
        let flag = if fk < -(tol.max(three * sigma)) {
            SignFlag::Negative
        } else if sigma == T::zero() || fk >= three * sigma {
            SignFlag::NonNegative
        } else {
            SignFlag::Inconclusive
        };
        std_errors.push(sigma);
        flags.push(flag);
    }
    let verdict = if flags.contains(&SignFlag::Negative) {
        Verdict::Entangled
    } else if flags.contains(&SignFlag::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::PptConsistent
    };
    SampledFSequence { f, std_errors, flags, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Bipartition, ComplexMatrix};

    fn bell() -> DensityMatrix<f64> {
        let h = 0.5;
        let m = ComplexMatrix::from_real(
            4,
            4,
            &[h, 0., 0., h, 0., 0., 0., 0., 0., 0., 0., 0., h, 0., 0., h],
        )
        .unwrap();
        DensityMatrix::new(m, Bipartition::new(2, 2).unwrap()).unwrap()
    }

    fn mixed() -> DensityMatrix<f64> {
        DensityMatrix::new(ComplexMatrix::diag(&[0.25; 4]), Bipartition::new(2, 2).unwrap()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn moments_of_maximally_mixed_and_bell() {
        let p = moments_of_partial_transpose(&mixed(), 4).unwrap();
        assert!(close(p.values(), &[1.0, 0.25, 1.0 / 16.0, 1.0 / 64.0], 1e-15));
        let p = moments_of_partial_transpose(&bell(), 4).unwrap();
        assert!(close(p.values(), &[1.0, 1.0, 0.25, 0.25], 1e-15));
        assert!(moments_of_partial_transpose(&bell(), 0).is_err());
    }

    #[test]
    fn bell_f_sequence() {
        let f = f_sequence(&bell(), 4, 1e-9).unwrap();
        assert!(close(f.values(), &[1.0, 0.0, -0.25, -0.0625], 1e-12));
        assert_eq!(f.first_violation(), Some(3));
        assert!(f_sequence(&bell(), 5, 1e-9).is_err());
    }

    #[test]
    fn residuals_are_scaled_f_values() {
        let p = moments_of_partial_transpose(&bell(), 4).unwrap();
        let r = low_order_inequalities(&p);
        assert!((r[2] + 0.75).abs() < 1e-15);
        let f = FSequence::from_moments(&p, 4, 1e-9);
        for k in 1..=4 {
            assert!((r[k - 1] - k as f64 * f.f(k)).abs() < 1e-12);
        }
        assert!(low_order_inequalities(&moments_of_partial_transpose(&mixed(), 4).unwrap())
            .iter()
            .all(|&x| x >= 0.0));
    }

    #[test]
    fn bell_report_and_oracle() {
        let r = full_report(&bell(), 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Entangled);
        assert_eq!(r.first_violation, Some(3));
        let o = r.oracle.unwrap();
        assert_eq!(o.verdict, OracleVerdict::Npt);
        assert!((o.min_eig + 0.5).abs() < 1e-12);
        assert_eq!(r.numerical_rank, 1);
        let m = full_report(&mixed(), 1e-9).unwrap();
        assert_eq!(m.verdict, Verdict::PptConsistent);
        assert!(m.f.values().iter().all(|&x| x > 0.0));
    }

    #[test]
    fn sampled_flags() {
        let p = MomentVector::<f64>::new(vec![1.0, 1.0, 0.25]);
        let s = sampled_f_sequence(&p, &[0.0, 0.0, 0.01], 1e-9);
        assert_eq!(s.flags, vec![SignFlag::NonNegative, SignFlag::NonNegative, SignFlag::Negative]);
        assert_eq!(s.verdict, Verdict::Entangled);
        // e_3 = p_3/3 + …, so σ_3 = σ(p_3)/3
        assert!((s.std_errors[2] - 0.01 / 3.0).abs() < 1e-15);
        let noisy = sampled_f_sequence(&p, &[0.0, 0.0, 2.0], 1e-9);
        assert_eq!(noisy.flags[2], SignFlag::Inconclusive);
        assert_eq!(noisy.verdict, Verdict::Inconclusive);
    }
}
