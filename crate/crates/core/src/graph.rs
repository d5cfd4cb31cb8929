//! Weighted digraph of a matrix and its zeta function.
//!
//! A prime class is an aperiodic closed directed walk up to cyclic rotation,
//! represented by its lexicographically least rotation (a Lyndon word in the
//! vertex sequence). With that reading
//! `ζ(u) = ∏_{[P]} (1 − N_E(P) u^{ν(P)})^{-1} = exp(Σ tr(M^k) u^k / k)`,
//! so `∏_{[P]} (1 − (−1)^{ν} N_E u^{ν}) = det(I + uM) = Σ e_k(spec M) u^k`.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{traces_of_powers, ComplexMatrix};
use crate::scalar::Real;
use crate::series::{cauchy_product, series_exp};

/// Default modulus below which matrix entries do not become edges.
pub const DEFAULT_EDGE_THRESHOLD: f64 = 1e-12;

/// Imaginary parts of coefficients above this are reported as failures
/// for Hermitian inputs.
pub const IMAG_DEFECT_TOL: f64 = 1e-9;

/// Walk budget for prime enumeration.
pub const MAX_WALK_STEPS: u64 = 20_000_000;

/// Cap on the number of stored prime classes.
pub const MAX_PRIME_CLASSES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub from: usize,
    pub to: usize,
    pub weight: Complex<T>,
}

/// Digraph with at most one edge per ordered vertex pair.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph<T> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
    edge_threshold: T,
    /// `adjacency[v]` lists `(to, edge index)` in ascending `to`.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl<T: Real> WeightedDigraph<T> {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge_threshold(&self) -> T {
        self.edge_threshold
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<Complex<T>> {
        self.adjacency[from].iter().find(|(t, _)| *t == to).map(|&(_, e)| self.edges[e].weight)
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(t, _)| t)
    }

    /// Plain-text adjacency summary.
    pub fn describe(&self) -> String {
        let mut out = format!("{} vertices, {} edges\n", self.vertex_count, self.edges.len());
        for e in &self.edges {
            let kind = if e.from == e.to { "loop" } else { "edge" };
            out.push_str(&format!(
                "  {kind} {} -> {}  weight {}{:+}i\n",
                e.from + 1,
                e.to + 1,
                e.weight.re,
                e.weight.im
            ));
        }
        out
    }
}

/// One edge per entry with `|m[i,j]| > threshold`; diagonal entries are loops.
pub fn graph_from_matrix<T: Real>(m: &ComplexMatrix<T>, threshold: T) -> Result<WeightedDigraph<T>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let w = m[(i, j)];
            if w.norm() > threshold {
                adjacency[i].push((j, edges.len()));
                edges.push(Edge { from: i, to: j, weight: w });
            }
        }
    }
    Ok(WeightedDigraph { vertex_count: n, edges, edge_threshold: threshold, adjacency })
}

/// Equivalence class of prime closed walks.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeClass<T> {
    /// Vertex sequence `v_0 … v_{ν−1}` of the least rotation; edge `i` runs
    /// from `v_i` to `v_{i+1 mod ν}`.
    vertices: Vec<usize>,
    weight: Complex<T>,
}

impl<T: Real> PrimeClass<T> {
    /// `ν(P)`.
    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    /// `N_E(P)`, the product of edge weights.
    pub fn weight(&self) -> Complex<T> {
        self.weight
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Representative edge sequence `(from, to)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect()
    }

    /// Recomputes `N_E(P)` from the graph.
    pub fn recompute_weight(&self, g: &WeightedDigraph<T>) -> Option<Complex<T>> {
        self.edges().into_iter().try_fold(Complex::one(), |acc, (a, b)| g.weight(a, b).map(|w| acc * w))
    }
}

/// True iff `s` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(s: &[usize]) -> bool {
    let n = s.len();
    (1..n).all(|r| {
        let rotated = s[r..].iter().chain(&s[..r]);
        s.iter().lt(rotated)
    })
}

/// Every prime class with `ν ≤ max_len`, ordered by length then
/// lexicographically by representative.
pub fn enumerate_prime_classes<T: Real>(g: &WeightedDigraph<T>, max_len: usize) -> Result<Vec<PrimeClass<T>>> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let mut classes = Vec::new();
    let mut steps = 0u64;
    let mut path = Vec::with_capacity(max_len);
    for start in 0..g.vertex_count {
        path.clear();
        path.push(start);
        extend(g, start, max_len, &mut path, Complex::one(), &mut classes, &mut steps)?;
    }
    classes.sort_by(|a: &PrimeClass<T>, b| {
        a.length().cmp(&b.length()).then_with(|| a.vertices.cmp(&b.vertices))
    });
    Ok(classes)
}

// Walks that start at their minimum vertex and never drop below it; every
// Lyndon vertex sequence is found exactly once this way.
fn extend<T: Real>(
    g: &WeightedDigraph<T>,
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    weight: Complex<T>,
    out: &mut Vec<PrimeClass<T>>,
    steps: &mut u64,
) -> Result<()> {
    *steps += 1;
    if *steps > MAX_WALK_STEPS {
        return Err(Error::SizeGuard(format!(
            "prime enumeration exceeded {MAX_WALK_STEPS} walk steps; lower max_len"
        )));
    }
    let last = *path.last().expect("non-empty");
    if let Some(w) = g.weight(last, start) {
        if is_lyndon(path) {
            if out.len() == MAX_PRIME_CLASSES {
                return Err(Error::SizeGuard(format!(
                    "more than {MAX_PRIME_CLASSES} prime classes; lower max_len"
                )));
            }
            out.push(PrimeClass { vertices: path.clone(), weight: weight * w });
        }
    }
    if path.len() == max_len {
        return Ok(());
    }
    for &(next, e) in &g.adjacency[last] {
        if next < start {
            continue;
        }
        path.push(next);
        extend(g, start, max_len, path, weight * g.edges[e].weight, out, steps)?;
        path.pop();
    }
    Ok(())
}

/// Complex coefficients of `∏_{[P], ν ≤ k_max} (1 − (−1)^{ν} N_E u^{ν})`
/// up to degree `k_max`. Primes longer than `k_max` only touch higher
/// degrees, so the truncation is exact.
pub fn zeta_inverse_series_via_primes<T: Real>(g: &WeightedDigraph<T>, k_max: usize) -> Result<Vec<Complex<T>>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let classes = enumerate_prime_classes(g, k_max)?;
    Ok(euler_product(&classes, k_max))
}

pub fn euler_product<T: Real>(classes: &[PrimeClass<T>], k_max: usize) -> Vec<Complex<T>> {
    let mut acc = vec![Complex::zero(); k_max + 1];
    acc[0] = Complex::one();
    for c in classes.iter().filter(|c| c.length() <= k_max) {
        let nu = c.length();
        let mut factor = vec![Complex::zero(); nu + 1];
        factor[0] = Complex::one();
        factor[nu] = if nu % 2 == 1 { c.weight } else { -c.weight };
        acc = cauchy_product(&acc, &factor, k_max);
    }
    acc
}

fn real_parts<T: Real>(coeffs: Vec<Complex<T>>, what: &str) -> Result<Vec<T>> {
    let tol = T::lit(IMAG_DEFECT_TOL);
    if let Some((k, z)) = coeffs.iter().enumerate().find(|(_, z)| z.im.abs() > tol) {
        return Err(Error::Consistency(format!(
            "{what}: coefficient {k} has imaginary part {:e}",
            z.im
        )));
    }
    Ok(coeffs.into_iter().map(|z| z.re).collect())
}

/// Real coefficients `c_0..c_{k_max}` of the inverse zeta function at `−u`,
/// from the prime classes.
pub fn zeta_inverse_coeffs_via_primes<T: Real>(g: &WeightedDigraph<T>, k_max: usize) -> Result<Vec<T>> {
    real_parts(zeta_inverse_series_via_primes(g, k_max)?, "Euler product")
}

/// Same coefficients from the moments:
/// `exp(−Σ_k (−1)^k tr(M^k)/k · u^k)` through the series exponential.
pub fn zeta_coeffs_via_moments<T: Real>(m: &ComplexMatrix<T>, k_max: usize) -> Result<Vec<T>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let traces = real_parts(traces_of_powers(m, k_max)?, "moments")?;
    let mut log = vec![T::zero(); k_max + 1];
    for k in 1..=k_max {
        let p = traces[k - 1] / T::from_usize(k).expect("small");
        log[k] = if k % 2 == 0 { -p } else { p };
    }
    Ok(series_exp(&log, k_max))
}

/// `Σ_{ν(P)=len} N_E(P)`, real part.
pub fn prime_weight_sum<T: Real>(classes: &[PrimeClass<T>], len: usize) -> T {
    classes.iter().filter(|c| c.length() == len).fold(T::zero(), |acc, c| acc + c.weight.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtLeast,
    AtMost,
}

/// One graph condition, `lhs ≥ rhs` or `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphCondition<T> {
    pub k: usize,
    pub lhs: T,
    pub rhs: T,
    pub relation: Relation,
    pub satisfied: bool,
    /// `c_k`, the degree-`k` coefficient of the Euler product.
    pub coefficient: T,
    /// `c_k ≥ −tol`; this is the condition equivalent to PPT.
    pub coefficient_satisfied: bool,
}

/// Tolerance on the lhs/rhs comparisons.
pub const CONDITION_TOL: f64 = 1e-9;

/// Graph condition of order `k`. Orders 1–3 use the sum-over-primes
/// forms `Σ_{ν=1} ≥ 0`, `Σ_{ν=2} ≤ (Σ_{ν=1})²` and
/// `Σ_{ν=3} ≥ (5·Σ_{ν=1}Σ_{ν=2} − (Σ_{ν=1})³)/6`; higher orders compare the
/// Euler-product coefficient with zero.
pub fn graph_condition<T: Real>(g: &WeightedDigraph<T>, k: usize) -> Result<GraphCondition<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("condition order must be at least 1".into()));
    }
    let classes = enumerate_prime_classes(g, k)?;
    let coeffs = real_parts(euler_product(&classes, k), "Euler product")?;
    Ok(condition_from_classes(&classes, &coeffs, k))
}

/// Conditions `1..=k_max` sharing one enumeration.
pub fn graph_conditions<T: Real>(g: &WeightedDigraph<T>, k_max: usize) -> Result<Vec<GraphCondition<T>>> {
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let classes = enumerate_prime_classes(g, k_max)?;
    let coeffs = real_parts(euler_product(&classes, k_max), "Euler product")?;
    Ok((1..=k_max).map(|k| condition_from_classes(&classes, &coeffs, k)).collect())
}

fn condition_from_classes<T: Real>(classes: &[PrimeClass<T>], coeffs: &[T], k: usize) -> GraphCondition<T> {
    let tol = T::lit(CONDITION_TOL);
    let s = |len| prime_weight_sum(classes, len);
    let (lhs, rhs, relation) = match k {
        1 => (s(1), T::zero(), Relation::AtLeast),
        2 => (s(2), s(1) * s(1), Relation::AtMost),
        3 => {
            let (a1, a2) = (s(1), s(2));
            (s(3), (T::lit(5.0) * a1 * a2 - a1.powi(3)) / T::lit(6.0), Relation::AtLeast)
        }
        _ => (coeffs[k], T::zero(), Relation::AtLeast),
    };
    let satisfied = match relation {
        Relation::AtLeast => lhs >= rhs - tol,
        Relation::AtMost => lhs <= rhs + tol,
    };
    GraphCondition {
        k,
        lhs,
        rhs,
        relation,
        satisfied,
        coefficient: coeffs[k],
        coefficient_satisfied: coeffs[k] >= -tol,
    }
}

/// Least `k ≤ k_max` whose Euler-product coefficient is below `−tol`.
pub fn first_coefficient_violation<T: Real>(coeffs: &[T], tol: T) -> Option<usize> {
    coeffs.iter().enumerate().skip(1).find(|(_, &c)| c < -tol).map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_pt() -> ComplexMatrix<f64> {
        let h = 0.5;
        ComplexMatrix::from_real(4, 4, &[h, 0., 0., 0., 0., 0., h, 0., 0., h, 0., 0., 0., 0., 0., h]).unwrap()
    }

    #[test]
    fn bell_graph_shape() {
        let g = graph_from_matrix(&bell_pt(), 1e-12).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(pairs, vec![(0, 0), (1, 2), (2, 1), (3, 3)]);
        assert!(g.edges().iter().all(|e| e.weight == Complex::new(0.5, 0.0)));
    }

    #[test]
    fn trivial_graphs() {
        let z = graph_from_matrix(&ComplexMatrix::<f64>::zeros(3, 3), 1e-12).unwrap();
        assert!(z.edges().is_empty());
        assert_eq!(zeta_inverse_coeffs_via_primes(&z, 3).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        let id = graph_from_matrix(&ComplexMatrix::<f64>::identity(3), 1e-12).unwrap();
        assert_eq!(id.edges().len(), 3);
        assert!(id.edges().iter().all(|e| e.from == e.to && e.weight == Complex::new(1.0, 0.0)));
    }

    #[test]
    fn bell_primes() {
        let g = graph_from_matrix(&bell_pt(), 1e-12).unwrap();
        let classes = enumerate_prime_classes(&g, 3).unwrap();
        let reps: Vec<_> = classes.iter().map(|c| c.edges()).collect();
        assert_eq!(reps, vec![vec![(0, 0)], vec![(3, 3)], vec![(1, 2), (2, 1)]]);
        assert_eq!(classes[2].weight(), Complex::new(0.25, 0.0));
        for c in &classes {
            assert_eq!(c.recompute_weight(&g), Some(c.weight()));
        }
    }

    #[test]
    fn single_loop_is_the_only_prime() {
        let m = ComplexMatrix::from_real(2, 2, &[0.3, 0.0, 0.0, 0.0]).unwrap();
        let g = graph_from_matrix(&m, 1e-12).unwrap();
        for len in 1..6 {
            assert_eq!(enumerate_prime_classes(&g, len).unwrap().len(), 1);
        }
    }

    #[test]
    fn lyndon_check() {
        assert!(is_lyndon(&[0]));
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(!is_lyndon(&[0, 1, 0]));
    }

    #[test]
    fn bell_coefficients_and_conditions() {
        let g = graph_from_matrix(&bell_pt(), 1e-12).unwrap();
        let c = zeta_inverse_coeffs_via_primes(&g, 4).unwrap();
        let expected = [1.0, 1.0, 0.0, -0.25, -0.0625];
        assert!(c.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-15), "{c:?}");
        let m = zeta_coeffs_via_moments(&bell_pt(), 4).unwrap();
        assert!(m.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-14), "{m:?}");

        let k3 = graph_condition(&g, 3).unwrap();
        assert_eq!(k3.lhs, 0.0);
        assert!((k3.rhs - 1.0 / 24.0).abs() < 1e-15);
        assert!(!k3.satisfied && !k3.coefficient_satisfied);
        let k2 = graph_condition(&g, 2).unwrap();
        assert_eq!((k2.lhs, k2.relation, k2.satisfied), (0.25, Relation::AtMost, true));
        assert_eq!(first_coefficient_violation(&c, 1e-9), Some(3));
    }
}
