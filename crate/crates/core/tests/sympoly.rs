use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use ppt_moments::scalar::{exact, Exact};
use ppt_moments::series::{eval, series_exp};
use ppt_moments::sympoly::{
    bell_polynomial, cycle_index_a, cycle_index_s, cycle_type, descartes_bound, elementary_closed_form,
    elementary_direct, elementary_from_roots, even_odd_split, factorial, for_each_permutation, newton_elementary,
    partitions, vieta_coefficients, MomentVector, Polynomial,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// `(1/k!) Σ_{σ ∈ S_k} ∏ x_j^{c_j(σ)}`, optionally restricted to even σ.
fn enumerate_cycle_index(k: usize, x: &[f64], even_only: bool) -> f64 {
    let mut sum = 0.0;
    for_each_permutation(k, |perm| {
        let ct = cycle_type(perm);
        if even_only && !ct.is_even_permutation() {
            return;
        }
        sum += ct.monomial(|j| x[j - 1]);
    });
    let scale = if even_only && k >= 2 { 2.0 } else { 1.0 };
    scale * sum / factorial::<f64>(k)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn examples_from_small_cases() {
    assert_eq!(elementary_direct(&[1.0, 2.0, 3.0], 2), 11.0);
    assert_eq!(elementary_direct(&[1.0, 2.0, 3.0], 0), 1.0);
    assert_eq!(elementary_direct(&[1.0, 2.0, 3.0], 4), 0.0);
    assert_eq!(elementary_direct(&[0.5, 0.5, 0.5, -0.5], 4), -1.0 / 16.0);
    let p = MomentVector::new(vec![6.0, 14.0, 36.0]);
    assert_eq!(newton_elementary(&p, 3), vec![6.0, 11.0, 6.0]);
    assert_eq!(elementary_closed_form(&p, 3), 6.0);
    assert_eq!(newton_elementary(&MomentVector::new(vec![0.0; 5]), 5), vec![0.0; 5]);
    assert_eq!(bell_polynomial(3, &[1.0, 1.0, 1.0]), 5.0);
    assert_eq!(cycle_index_s(2, &[1.0, 3.0]), 2.0);
    assert_eq!(cycle_index_a(1, &[7.0]), 7.0);
    assert_eq!(cycle_index_a(3, &[1.0, 1.0, 1.0]), 1.0);
    assert_eq!(partitions(0).count(), 1);
    assert_eq!(partitions(4).count(), 5);
    assert_eq!(partitions(10).count(), 42);
}

#[test]
fn descartes_examples() {
    let p = Polynomial::new(vec![2.0, -3.0, 1.0]).unwrap();
    assert_eq!(descartes_bound(&p), 2);
    assert_eq!(descartes_bound(&Polynomial::new(vec![1.0, 1.0, 1.0]).unwrap()), 0);
    assert!(Polynomial::<f64>::new(vec![0.0, 0.0]).is_err());
}

#[test]
fn even_odd_split_small_cases() {
    let p = MomentVector::new(vec![0.7, 0.3, 0.2]);
    assert_eq!(even_odd_split(1, &p).unwrap(), (0.7, 0.0));
    let (even, odd): (f64, f64) = even_odd_split(2, &p).unwrap();
    assert!((even - 0.49).abs() < 1e-15 && (odd - 0.3).abs() < 1e-15);
    assert!(even_odd_split(9, &MomentVector::new(vec![1.0; 9])).is_err());
}

#[test]
fn cycle_index_with_constant_argument_is_multiset_count() {
    for x in 1..=5u64 {
        for k in 1..=5usize {
            let args = vec![exact(x as i64, 1); k];
            let closed = cycle_index_s(k, &args);
            let mut enumerated = Exact::zero();
            for_each_permutation(k, |perm| {
                enumerated += ct_power(x, cycle_type(perm).parts().map(|(_, n)| n).sum());
            });
            enumerated /= factorial::<Exact>(k);
            assert_eq!(closed, enumerated);
            assert_eq!(closed, exact(binomial(x + k as u64 - 1, k as u64) as i64, 1));
        }
    }
    fn ct_power(x: u64, cycles: usize) -> Exact {
        (0..cycles).fold(Exact::one(), |acc, _| acc * exact(x as i64, 1))
    }
}

#[test]
fn truncated_newton_identity_beyond_n() {
    // for k > n: Σ_{j=k−n}^{k} (−1)^{j−1} e_{k−j} p_j = 0
    let roots = [0.4, -0.3, 0.9, 0.1];
    let n = roots.len();
    let e = elementary_from_roots(&roots);
    let p = MomentVector::from_spectrum(&roots, 3 * n);
    for k in n + 1..=3 * n {
        let s: f64 = (k - n..=k)
            .map(|j| {
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                sign * e[k - j] * p.p(j)
            })
            .sum();
        assert!(s.abs() < 1e-12, "k={k}: {s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_paths_agree(eigs in vec(-1.0f64..1.0, 1..=8)) {
        let n = eigs.len();
        let p = MomentVector::from_spectrum(&eigs, n + 3);
        let newton = newton_elementary(&p, n + 3);
        for k in 1..=n + 3 {
            let direct = elementary_direct(&eigs, k);
            let closed = elementary_closed_form(&p, k);
            prop_assert!(rel(direct, newton[k - 1]) <= 1e-9, "k={} {} vs {}", k, direct, newton[k - 1]);
            prop_assert!(rel(direct, closed) <= 1e-9, "k={} {} vs {}", k, direct, closed);
            if k > n {
                prop_assert!(newton[k - 1].abs() <= 1e-9 && closed.abs() <= 1e-9 && direct == 0.0);
            }
        }
    }

    #[test]
    fn vieta_coefficients_are_signed_elementaries(roots in vec(-2.0f64..2.0, 0..=8)) {
        let n = roots.len();
        let c = vieta_coefficients(&roots);
        prop_assert_eq!(c.len(), n + 1);
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let expected = sign * elementary_direct(&roots, k);
            prop_assert!(rel(c[n - k], expected) <= 1e-9);
        }
    }

    #[test]
    fn generating_function_at_a_point(eigs in vec(-1.0f64..1.0, 1..=6), t in -0.1f64..0.1) {
        let n = eigs.len();
        let e = elementary_from_roots(&eigs);
        let lhs = eval(&e, &t);
        let p = MomentVector::from_spectrum(&eigs, 40);
        let mut log = vec![0.0; 41];
        for k in 1..=40 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            log[k] = sign * p.p(k) / k as f64;
        }
        let series = series_exp(&log, 40);
        let rhs = eval(&series, &t);
        prop_assert!((lhs - rhs).abs() <= 1e-8);
        for k in 0..=n {
            prop_assert!(rel(series[k], e[k]) <= 1e-9);
        }
    }

    #[test]
    fn descartes_parity(roots in vec(prop_oneof![-3.0f64..-0.01, 0.01f64..3.0], 1..=8)) {
        let positive = roots.iter().filter(|r| **r > 0.0).count();
        let bound = descartes_bound(&Polynomial::from_roots(&roots));
        prop_assert!(bound >= positive);
        prop_assert_eq!((bound - positive) % 2, 0);
    }

    #[test]
    fn cycle_index_s_matches_enumeration(x in vec(-1.5f64..1.5, 6), k in 1usize..=6) {
        let closed = cycle_index_s(k, &x);
        prop_assert!(rel(closed, enumerate_cycle_index(k, &x, false)) <= 1e-12);
        let bell = bell_polynomial(k, &(1..=k).map(|j| factorial::<f64>(j - 1) * x[j - 1]).collect::<Vec<_>>());
        prop_assert!(rel(closed, bell / factorial::<f64>(k)) <= 1e-12);
    }

    #[test]
    fn cycle_index_a_matches_enumeration(x in vec(-1.5f64..1.5, 6), k in 2usize..=6) {
        prop_assert!(rel(cycle_index_a(k, &x), enumerate_cycle_index(k, &x, true)) <= 1e-12);
    }

    #[test]
    fn elementary_from_bell_polynomial(p in vec(-1.0f64..1.0, 6), k in 1usize..=6) {
        let mp = MomentVector::new(p.clone());
        let args: Vec<f64> = (1..=k).map(|j| -factorial::<f64>(j - 1) * p[j - 1]).collect();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let via_bell = sign * bell_polynomial(k, &args) / factorial::<f64>(k);
        prop_assert!(rel(via_bell, elementary_closed_form(&mp, k)) <= 1e-9);
    }

    #[test]
    fn even_minus_odd_is_scaled_elementary(p in vec(-1.0f64..1.0, 6), k in 1usize..=6) {
        let mp = MomentVector::new(p);
        let (even, odd) = even_odd_split(k, &mp).unwrap();
        let scaled = factorial::<f64>(k) * elementary_closed_form(&mp, k);
        prop_assert!((even - odd - scaled).abs() <= 1e-9);
    }

    #[test]
    fn exact_paths_agree_on_rationals(nums in vec(-9i64..=9, 1..=6)) {
        let roots: Vec<Exact> = nums.iter().map(|&n| exact(n, 4)).collect();
        let n = roots.len();
        let p = MomentVector::from_spectrum(&roots, n + 1);
        let newton = newton_elementary(&p, n + 1);
        for k in 1..=n + 1 {
            let direct = elementary_direct(&roots, k);
            prop_assert_eq!(&newton[k - 1], &direct);
            prop_assert_eq!(elementary_closed_form(&p, k), direct);
        }
    }
}
