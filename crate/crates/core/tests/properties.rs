use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use fwlab_core::algebra::{
    anticommutator, commutator, dirac_matrix, even_odd_split, hermitian_eig, lift, matrix_sqrt_psd, ComplexMatrix,
    DiracKind, FwSign, FwTransform, SplitHamiltonian,
};
use fwlab_core::landau::{
    analytic_spectrum, build_dirac_hamiltonian, eps0, laguerre, orbital_numbers, EigenRecord, HalfInteger,
    ModelParams, Spin,
};
use fwlab_core::verification::{execute, random_hermitian, SuiteConfig};

fn complex_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |v| {
        ComplexMatrix::from_row_major(dim, v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap()
    })
}

fn sized_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(complex_matrix)
}

fn params() -> impl Strategy<Value = ModelParams> {
    (0.3..2.0f64, prop_oneof![-2.0..-0.5f64, 0.5..2.0f64], 0.02..1.0f64, -0.01..0.01f64, 6usize..12)
        .prop_map(|(m, e, h, mu, n_max)| ModelParams::new(m, e, h, mu, n_max).unwrap())
}

fn spin() -> impl Strategy<Value = Spin> {
    prop_oneof![Just(Spin::Up), Just(Spin::Down)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psd_square_root_squares_back(b in sized_matrix(12)) {
        let a = &b * &b.adjoint();
        let s = matrix_sqrt_psd(&a).unwrap();
        prop_assert!(s.is_hermitian());
        let scale = a.max_norm().max(1.0);
        prop_assert!((&(&s * &s) - &a).max_norm() <= 1e-10 * scale);
        let eig = hermitian_eig(&s).unwrap();
        prop_assert!(eig.values[0] >= -1e-10 * scale);
    }

    #[test]
    fn even_odd_parts_sum_and_parity(x in (1usize..4).prop_flat_map(|n| complex_matrix(4 * n))) {
        let beta = lift(&dirac_matrix(DiracKind::Beta), x.dim() / 4).unwrap();
        let (even, odd) = even_odd_split(&x, &beta).unwrap();
        prop_assert!((&(&even + &odd) - &x).max_norm() <= 1e-14);
        prop_assert!(commutator(&even, &beta).unwrap().max_norm() <= 1e-14);
        prop_assert!(anticommutator(&odd, &beta).unwrap().max_norm() <= 1e-14);
    }

    #[test]
    fn alpha_dot_products_anticommute(a in prop::array::uniform3(-2.0..2.0f64), b in prop::array::uniform3(-2.0..2.0f64)) {
        let kinds = [DiracKind::AlphaX, DiracKind::AlphaY, DiracKind::AlphaZ];
        let dot = |c: [f64; 3]| {
            kinds.iter().zip(c).fold(ComplexMatrix::zeros(4), |acc, (k, w)| &acc + &dirac_matrix(*k).scale_real(w))
        };
        let ac = anticommutator(&dot(a), &dot(b)).unwrap();
        let expected = ComplexMatrix::identity(4).scale_real(2.0 * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]));
        prop_assert!((&ac - &expected).max_norm() <= 1e-13);
        prop_assert!(anticommutator(&dot(a), &dirac_matrix(DiracKind::Beta)).unwrap().max_norm() == 0.0);
    }

    #[test]
    fn fw_operator_is_unitary_for_random_odd_parts(seed in any::<u64>(), mass in 0.1..3.0f64) {
        // any Hermitian odd part with zero even part gives an exact transformation
        let beta = lift(&dirac_matrix(DiracKind::Beta), 3).unwrap();
        let (_, odd) = even_odd_split(&random_hermitian(12, 1.0, seed), &beta).unwrap();
        let split = SplitHamiltonian::new(mass, ComplexMatrix::zeros(12), odd, beta.clone()).unwrap();
        let t = FwTransform::new(&split).unwrap();
        let u = t.unitary(FwSign::Forward);
        prop_assert!((&(&u.adjoint() * u) - &ComplexMatrix::identity(12)).max_norm() <= 1e-12);
        let fw = t.conjugate(&split.full());
        let target = &beta * &t.epsilon;
        prop_assert!((&fw - &target).max_norm() <= 1e-10);
    }

    #[test]
    fn suite_passes_for_random_parameters(p in params()) {
        let run = execute(&p, &SuiteConfig::default()).unwrap();
        for r in &run.reports {
            prop_assert!(r.passed, "{} = {:e} > {:e} at {:?}", r.check_name, r.max_residual, r.tolerance, p);
        }
    }

    #[test]
    fn charge_reversal_swaps_polarization(p in params(), n in 0usize..6, lambda in spin()) {
        let mirrored = ModelParams { e: -p.e, ..p };
        prop_assert_eq!(eps0(&p, n, lambda), eps0(&mirrored, n, lambda.flipped()));
    }

    #[test]
    fn records_are_sorted_and_positive(p in params()) {
        let records = analytic_spectrum(&p, &[]);
        prop_assert_eq!(records.len(), 2 * (p.n_max + 1));
        prop_assert!(records.windows(2).all(|w| w[0].e_total <= w[1].e_total));
        prop_assert!(records.iter().all(|r| r.eps0 >= p.m && r.e_total == r.eps0 + r.e0));
    }

    #[test]
    fn orbital_numbers_reconstruct_level(p in params(), lambda in spin(), twice in (-15i32..=15).prop_map(|t| 2 * t + 1), n in 0usize..8) {
        let m = HalfInteger::from_twice(twice).unwrap();
        match orbital_numbers(&p, n, lambda, m) {
            Ok(orb) => {
                prop_assert_eq!(2 * orb.m_l + lambda.as_i32(), twice);
                let shift = (orb.m_l.abs() - p.field_sign() as i32 * orb.m_l) / 2;
                prop_assert_eq!(orb.n_rho as i32 + shift, n as i32);
            }
            Err(_) => {
                let m_l = (twice - lambda.as_i32()) / 2;
                prop_assert!((m_l.abs() - p.field_sign() as i32 * m_l) / 2 > n as i32);
            }
        }
    }

    #[test]
    fn laguerre_at_origin_is_binomial(n in 0usize..20, alpha in 0u32..10) {
        let binom = (1..=n).fold(1.0f64, |acc, k| acc * (k as f64 + alpha as f64) / k as f64);
        assert_relative_eq!(laguerre(n, alpha, 0.0), binom, max_relative = 1e-13);
    }

    #[test]
    fn half_integer_text_round_trip(twice in (-50i32..50).prop_map(|t| 2 * t + 1)) {
        let h = HalfInteger::from_twice(twice).unwrap();
        prop_assert_eq!(HalfInteger::from_f64(h.value()).unwrap(), h);
        prop_assert_eq!(h.to_string(), format!("{twice}/2"));
    }
}

#[test]
fn psd_square_root_at_full_size() {
    let b = random_hermitian(256, 1.0, 11);
    let a = &b * &b;
    let s = matrix_sqrt_psd(&a).unwrap();
    assert!((&(&s * &s) - &a).max_norm() <= 1e-10 * a.max_norm());
}

#[test]
fn record_energy_is_sum_of_parts() {
    let p = ModelParams::default();
    let r = EigenRecord::new(&p, 3, Spin::Up, None);
    assert_eq!(r.e_total, r.eps0 + r.e0);
    assert_relative_eq!(r.e0, -1e-4, max_relative = 1e-15);
    assert!(build_dirac_hamiltonian(&p).unwrap().full().is_hermitian());
}
