//! Matrix realization of the kinetic momenta and of the Dirac and FW Hamiltonians on
//! the truncated Landau basis `|n⟩, n = 0..=n_max`.

use num_complex::Complex64;

use super::params::ModelParams;
use crate::algebra::{dirac_matrix, lift, ComplexMatrix, DiracKind, SplitHamiltonian, SPINOR_DIM};
use crate::error::{FwError, Result};

/// Which spin matrix the anomalous-moment term couples to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SpinCoupling {
    /// `𝓔 = −μ′ Π_z H`, the physical model.
    #[default]
    Polarization,
    /// `𝓔 = −μ′ Σ_z H`; does not commute with 𝓞. Negative control only.
    SpinSabotage,
}

/// Truncated annihilation and creation operators, `a|n⟩ = √n |n−1⟩`.
pub fn ladder_ops(n_max: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if n_max < 1 {
        return Err(FwError::InvalidParams("ladder operators need n_max >= 1".into()));
    }
    let a = ComplexMatrix::from_fn(n_max + 1, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let a_dag = a.adjoint();
    Ok((a, a_dag))
}

/// Kinetic momenta `(π_x, π_y)` with `[π_x, π_y] = ieH` away from the truncation edge.
///
/// For `eH > 0`, `π_x + iπ_y = √(2eH) a`; for `eH < 0` the roles of `a` and `a†` swap.
/// Either way `π_x² + π_y² = |eH|(2a†a + 1)` on interior levels.
pub fn pi_ops(params: &ModelParams) -> Result<(ComplexMatrix, ComplexMatrix)> {
    params.validate()?;
    let (a, a_dag) = ladder_ops(params.n_max)?;
    let (lower, raise) = if params.eh() > 0.0 { (a, a_dag) } else { (a_dag, a) };
    let s = (params.eh().abs() / 2.0).sqrt();
    let pi_x = (&lower + &raise).scale_real(s);
    let pi_y = (&lower - &raise).scale(Complex64::new(0.0, -s));
    Ok((pi_x, pi_y))
}

/// Dirac Hamiltonian `βm − μ′Π_z H + α_x π_x + α_y π_y` as its β-split.
pub fn build_dirac_hamiltonian(params: &ModelParams) -> Result<SplitHamiltonian> {
    build_dirac_hamiltonian_with(params, SpinCoupling::Polarization)
}

pub fn build_dirac_hamiltonian_with(params: &ModelParams, coupling: SpinCoupling) -> Result<SplitHamiltonian> {
    let (pi_x, pi_y) = pi_ops(params)?;
    let levels = params.n_levels();
    let spin = match coupling {
        SpinCoupling::Polarization => DiracKind::PiZ,
        SpinCoupling::SpinSabotage => DiracKind::SigmaZ,
    };
    let even = lift(&dirac_matrix(spin), levels)?.scale_real(-params.mu_prime * params.h);
    let odd = &pi_x.kron(&dirac_matrix(DiracKind::AlphaX)) + &pi_y.kron(&dirac_matrix(DiracKind::AlphaY));
    let beta = lift(&dirac_matrix(DiracKind::Beta), levels)?;
    SplitHamiltonian::new(params.m, even, odd, beta)
}

/// β, Σ_z and Π_z eigenvalues of spinor component `s`.
pub(crate) fn spinor_signs(s: usize) -> (f64, f64, f64) {
    let beta = if s < 2 { 1.0 } else { -1.0 };
    let sigma = if s.is_multiple_of(2) { 1.0 } else { -1.0 };
    (beta, sigma, beta * sigma)
}

/// `ε² = m² + (2n+1)|eH| − σ eH` for Landau level `n` and Σ_z eigenvalue `σ`.
///
/// The Landau factor `2n + 1 − σ·sgn(eH)` is formed as an integer so that degenerate
/// levels come out bitwise equal.
pub(crate) fn epsilon_squared(params: &ModelParams, n: usize, sigma: f64) -> f64 {
    let aligned = (sigma * params.field_sign()) as i64;
    let k = 2 * n as i64 + 1 - aligned;
    params.m * params.m + k as f64 * params.eh().abs()
}

/// The closed-form FW Hamiltonian `β√(π⊥² + m² − eΣ·H) − μ′Π·H`, diagonal in this basis.
///
/// Every level, including the edge, uses the untruncated `π⊥² = (2n+1)|eH|`.
pub fn fw_hamiltonian_closed_form(params: &ModelParams) -> Result<ComplexMatrix> {
    params.validate()?;
    let mut diag = Vec::with_capacity(params.dim());
    for n in 0..params.n_levels() {
        for s in 0..SPINOR_DIM {
            let (beta, sigma, pol) = spinor_signs(s);
            let arg = epsilon_squared(params, n, sigma);
            if arg < 0.0 {
                return Err(FwError::InvalidParams(format!("negative square-root argument {arg} at n={n}")));
            }
            diag.push(beta * arg.sqrt() - params.mu_prime * params.h * pol);
        }
    }
    Ok(ComplexMatrix::from_real_diagonal(&diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::commutator;

    fn params(e: f64) -> ModelParams {
        ModelParams::new(1.0, e, 0.1, 1e-3, 8).unwrap()
    }

    #[test]
    fn ladder_examples() {
        let (a, a_dag) = ladder_ops(1).unwrap();
        let expected = ComplexMatrix::from_row_major(
            2,
            [0.0, 1.0, 0.0, 0.0].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
        .unwrap();
        assert_eq!(a, expected);
        assert_eq!(a_dag, expected.adjoint());
        let (a, a_dag2) = ladder_ops(5).unwrap();
        let number = &a_dag2 * &a;
        let expected: Vec<f64> = (0..6).map(|n| n as f64).collect();
        assert!((&number - &ComplexMatrix::from_real_diagonal(&expected)).max_norm() < 1e-14);
        let comm = commutator(&a, &a_dag2).unwrap();
        for i in 0..5 {
            assert!((comm[(i, i)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!((comm[(5, 5)] - Complex64::new(-5.0, 0.0)).norm() < 1e-14);
        assert!(ladder_ops(0).is_err());
    }

    #[test]
    fn pi_algebra_both_charge_signs() {
        for e in [1.0, -1.0] {
            let p = params(e);
            let (px, py) = pi_ops(&p).unwrap();
            assert_eq!(px, px.adjoint());
            assert_eq!(py, py.adjoint());
            let comm = commutator(&px, &py).unwrap();
            let perp = &(&px * &px) + &(&py * &py);
            for n in 0..p.n_max {
                assert!((comm[(n, n)] - Complex64::new(0.0, p.eh())).norm() < 1e-14, "e={e} n={n}");
                let expect = (2 * n + 1) as f64 * p.eh().abs();
                assert!((perp[(n, n)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
            // Interior block of π⊥² is diagonal.
            let off = &perp - &ComplexMatrix::from_diagonal(&perp.diagonal());
            assert!(off.max_norm() < 1e-15);
        }
    }

    #[test]
    fn hamiltonian_structure() {
        let p = params(1.0);
        let split = build_dirac_hamiltonian(&p).unwrap();
        assert!(split.full().is_hermitian());
        assert_eq!(split.exactness_residual(p.interior_dim()), 0.0);
        let free = build_dirac_hamiltonian(&p.with_mu_prime(0.0)).unwrap();
        assert_eq!(free.even().max_norm(), 0.0);
        let broken = build_dirac_hamiltonian_with(&p, SpinCoupling::SpinSabotage).unwrap();
        assert!(broken.exactness_residual(p.interior_dim()) > 1e-5);
    }

    #[test]
    fn closed_form_entries() {
        let p = params(1.0).with_mu_prime(0.0);
        let h = fw_hamiltonian_closed_form(&p).unwrap();
        // n = 0: upper spin-up √(m²) = 1, upper spin-down √(1.2), lower negatives.
        assert!((h[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((h[(1, 1)].re - 1.2f64.sqrt()).abs() < 1e-15);
        assert!((h[(2, 2)].re + 1.0).abs() < 1e-15);
        assert!((h[(3, 3)].re + 1.2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_weak_field_limit() {
        let p = ModelParams::new(1.0, 1.0, 1e-6, 0.0, 6).unwrap();
        let h = fw_hamiltonian_closed_form(&p).unwrap();
        for (k, z) in h.diagonal().iter().enumerate() {
            let n = k / 4;
            // ε₀ − m ≤ (n + 1)|eH| / m, continuous in H.
            assert!(z.re.abs() - 1.0 <= (n + 1) as f64 * 1e-6 + 1e-15);
            if n == 0 {
                assert!((z.re.abs() - 1.0).abs() <= 1e-6);
            }
        }
    }
}
