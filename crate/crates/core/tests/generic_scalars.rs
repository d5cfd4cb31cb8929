use num_rational::Ratio;

use ppt_moments::graph::{graph_from_matrix, zeta_coeffs_via_moments, zeta_inverse_coeffs_via_primes};
use ppt_moments::linalg::{hermitian_eigenvalues, partial_transpose, Subsystem};
use ppt_moments::ppt::{f_sequence, full_report, Verdict};
use ppt_moments::scalar::{exact, Exact};
use ppt_moments::states::{bell_state, random_density, werner};
use ppt_moments::sympoly::{
    bell_polynomial, cycle_index_a, cycle_index_s, descartes_bound, elementary_closed_form, newton_elementary,
    MomentVector, Polynomial,
};

#[test]
fn bell_in_single_precision() {
    let rho = bell_state::<f32>();
    let f = f_sequence(&rho, 4, 1e-5).unwrap();
    for (a, b) in f.values().iter().zip([1.0f32, 0.0, -0.25, -0.0625]) {
        assert!((a - b).abs() < 1e-5);
    }
    assert_eq!(f.first_violation(), Some(3));
    let eigs = hermitian_eigenvalues(&partial_transpose(&rho, Subsystem::B)).unwrap();
    assert!((eigs[0] + 0.5).abs() < 1e-5);
}

#[test]
fn single_precision_reports() {
    assert_eq!(full_report(&werner(0.75f32).unwrap(), 1e-5).unwrap().verdict, Verdict::Entangled);
    assert_eq!(full_report(&werner(0.2f32).unwrap(), 1e-5).unwrap().verdict, Verdict::PptConsistent);
    let rho = random_density::<f32>(2, 2, 3).unwrap();
    let pt = partial_transpose(&rho, Subsystem::B);
    let g = graph_from_matrix(&pt, 1e-7).unwrap();
    let a = zeta_inverse_coeffs_via_primes(&g, 4).unwrap();
    let b = zeta_coeffs_via_moments(&pt, 4).unwrap();
    for k in 0..=4 {
        assert!((a[k] - b[k]).abs() < 1e-5);
    }
}

#[test]
fn bell_moments_are_exact_over_rationals() {
    let p = MomentVector::new(vec![exact(1, 1), exact(1, 1), exact(1, 4), exact(1, 4)]);
    let f: Vec<Exact> = (1..=4).map(|k| elementary_closed_form(&p, k)).collect();
    assert_eq!(f, vec![exact(1, 1), exact(0, 1), exact(-1, 4), exact(-1, 16)]);
    assert_eq!(newton_elementary(&p, 4), f);
}

#[test]
fn small_rationals_work_too() {
    let p = MomentVector::new(vec![Ratio::new(1i64, 1), Ratio::new(1, 2), Ratio::new(1, 4)]);
    assert_eq!(elementary_closed_form(&p, 2), Ratio::new(1, 4));
    assert_eq!(elementary_closed_form(&p, 3), Ratio::new(0, 1));
    let x = [Ratio::new(1i128, 1); 3];
    assert_eq!(bell_polynomial(3, &x), Ratio::new(5, 1));
    assert_eq!(cycle_index_s(3, &x), Ratio::new(1, 1));
    assert_eq!(cycle_index_a(3, &x), Ratio::new(1, 1));
}

#[test]
fn descartes_over_rationals() {
    let roots = [exact(1, 2), exact(3, 1), exact(-2, 1)];
    assert_eq!(descartes_bound(&Polynomial::from_roots(&roots)), 2);
}
