//! Even/odd splitting and the exact Foldy-Wouthuysen transformation.
//!
//! For `H = βm + 𝓔 + 𝓞` with `[𝓔, 𝓞] = 0` the transformation is closed-form:
//! `ε = √(m² + 𝓞²)`, `H_FW = βε + 𝓔` and
//! `U^± = (ε + m ± β𝓞) / √(2ε(ε + m))`, with `U⁺ = U` and `U⁻ = U⁻¹`.

use super::matrix::{check_dims, commutator, hermitian_eig, ComplexMatrix, EigenDecomposition, HERMITIAN_TOL, PSD_TOL};
use crate::error::{FwError, Result};

/// Tolerance for the β-parity and β² = I checks on constructed operators.
const PARITY_TOL: f64 = 1e-12;

/// Relative exactness residual above which [`fw_unitary`] logs a warning.
const EXACTNESS_WARN: f64 = 1e-12;

/// Splits `X` into the parts commuting and anticommuting with β:
/// `even = (X + βXβ)/2`, `odd = (X − βXβ)/2`.
pub fn even_odd_split(x: &ComplexMatrix, beta: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_dims(x, beta)?;
    let conj = &(beta * x) * beta;
    let even = (x + &conj).scale_real(0.5);
    let odd = (x - &conj).scale_real(0.5);
    Ok((even, odd))
}

/// A Hamiltonian `βm + 𝓔 + 𝓞` held as its mass and β-even/β-odd parts.
#[derive(Clone, Debug)]
pub struct SplitHamiltonian {
    mass: f64,
    even: ComplexMatrix,
    odd: ComplexMatrix,
    beta: ComplexMatrix,
}

impl SplitHamiltonian {
    pub fn new(mass: f64, even: ComplexMatrix, odd: ComplexMatrix, beta: ComplexMatrix) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(FwError::InvalidParams(format!("mass must be positive, got {mass}")));
        }
        check_dims(&even, &odd)?;
        check_dims(&even, &beta)?;
        let dim = beta.dim();
        if (&(&beta * &beta) - &ComplexMatrix::identity(dim)).max_norm() > PARITY_TOL {
            return Err(FwError::ParityViolation("beta does not square to identity".into()));
        }
        for (name, m) in [("even", &even), ("odd", &odd)] {
            let residual = m.hermiticity_residual();
            if residual > HERMITIAN_TOL {
                return Err(FwError::NotHermitian { residual });
            }
            let scale = m.max_norm().max(1.0);
            let parity = if name == "even" {
                commutator(&beta, m)?
            } else {
                &(&beta * m) + &(m * &beta)
            };
            if parity.max_norm() > PARITY_TOL * scale {
                return Err(FwError::ParityViolation(format!(
                    "{name} part has wrong beta-parity (residual {:e})",
                    parity.max_norm()
                )));
            }
        }
        Ok(Self { mass, even, odd, beta })
    }

    /// Splits a mass-free operator `X` (so that `H = βm + X`) into its β-parts.
    pub fn from_operator(mass: f64, x: &ComplexMatrix, beta: ComplexMatrix) -> Result<Self> {
        let residual = x.hermiticity_residual();
        if residual > HERMITIAN_TOL {
            return Err(FwError::NotHermitian { residual });
        }
        let (even, odd) = even_odd_split(x, &beta)?;
        Self::new(mass, even, odd, beta)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn even(&self) -> &ComplexMatrix {
        &self.even
    }

    pub fn odd(&self) -> &ComplexMatrix {
        &self.odd
    }

    pub fn beta(&self) -> &ComplexMatrix {
        &self.beta
    }

    pub fn dim(&self) -> usize {
        self.beta.dim()
    }

    /// `βm + 𝓔 + 𝓞`.
    pub fn full(&self) -> ComplexMatrix {
        &(&self.beta.scale_real(self.mass) + &self.even) + &self.odd
    }

    /// `‖[𝓔, 𝓞]‖_max` over the leading `interior_dim` indices.
    pub fn exactness_residual(&self, interior_dim: usize) -> f64 {
        (&(&self.even * &self.odd) - &(&self.odd * &self.even)).max_norm_leading(interior_dim)
    }
}

/// Direction of the transformation: `U⁺ = U` or `U⁻ = U⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwSign {
    Forward,
    Inverse,
}

/// ε, U and U⁻¹ built from one eigendecomposition of `m² + 𝓞²`.
#[derive(Clone, Debug)]
pub struct FwTransform {
    pub epsilon: ComplexMatrix,
    pub forward: ComplexMatrix,
    pub inverse: ComplexMatrix,
}

fn epsilon_squared_eig(split: &SplitHamiltonian) -> Result<EigenDecomposition> {
    let m2 = ComplexMatrix::identity(split.dim()).scale_real(split.mass * split.mass);
    let arg = &m2 + &(&split.odd * &split.odd);
    let eig = hermitian_eig(&arg)?;
    let floor = -PSD_TOL * eig.spectral_radius();
    if eig.values[0] < floor {
        return Err(FwError::NotPositiveSemidefinite { eigenvalue: eig.values[0] });
    }
    Ok(eig)
}

impl FwTransform {
    pub fn new(split: &SplitHamiltonian) -> Result<Self> {
        let full_residual = split.exactness_residual(split.dim());
        let scale = split.even.max_norm().max(split.odd.max_norm()).max(1.0);
        if full_residual > EXACTNESS_WARN * scale {
            log::warn!("[E, O] = {full_residual:e} is not zero; the closed-form FW transformation is not exact here");
        }
        let m = split.mass;
        let eig = epsilon_squared_eig(split)?;
        let epsilon = eig.map(|x| x.max(0.0).sqrt());
        let norm = eig.map(|x| {
            let e = x.max(0.0).sqrt();
            1.0 / (2.0 * e * (e + m)).sqrt()
        });
        let base = &epsilon + &ComplexMatrix::identity(split.dim()).scale_real(m);
        let beta_odd = &split.beta * &split.odd;
        let forward = &(&base + &beta_odd) * &norm;
        let inverse = &(&base - &beta_odd) * &norm;
        Ok(Self { epsilon, forward, inverse })
    }

    pub fn unitary(&self, sign: FwSign) -> &ComplexMatrix {
        match sign {
            FwSign::Forward => &self.forward,
            FwSign::Inverse => &self.inverse,
        }
    }

    /// `U · X · U⁻¹`.
    pub fn conjugate(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &(&self.forward * x) * &self.inverse
    }
}

/// `ε = √(m² + 𝓞²)`.
pub fn epsilon_of(split: &SplitHamiltonian) -> Result<ComplexMatrix> {
    Ok(epsilon_squared_eig(split)?.map(|x| x.max(0.0).sqrt()))
}

/// The FW operator `U⁺` (or its inverse `U⁻`).
///
/// Non-commuting 𝓔 and 𝓞 are tolerated with a logged warning; truncated bases always
/// break exactness slightly at their edge.
pub fn fw_unitary(split: &SplitHamiltonian, sign: FwSign) -> Result<ComplexMatrix> {
    let t = FwTransform::new(split)?;
    Ok(match sign {
        FwSign::Forward => t.forward,
        FwSign::Inverse => t.inverse,
    })
}

/// `H_FW = βε + 𝓔`.
pub fn fw_hamiltonian(split: &SplitHamiltonian) -> Result<ComplexMatrix> {
    let eps = epsilon_of(split)?;
    Ok(fw_hamiltonian_from(split, &eps))
}

pub(crate) fn fw_hamiltonian_from(split: &SplitHamiltonian, epsilon: &ComplexMatrix) -> ComplexMatrix {
    &(&split.beta * epsilon) + &split.even
}

/// Residuals of the statements that 𝓔 and ε are unchanged by the transformation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvarianceResiduals {
    /// `‖U𝓔U⁻¹ − 𝓔‖_max` on the interior block.
    pub even: f64,
    /// `‖UεU⁻¹ − ε‖_max` on the interior block.
    pub epsilon: f64,
}

impl InvarianceResiduals {
    pub fn max(&self) -> f64 {
        self.even.max(self.epsilon)
    }
}

pub fn invariance_check(split: &SplitHamiltonian, interior_dim: usize) -> Result<InvarianceResiduals> {
    let t = FwTransform::new(split)?;
    Ok(invariance_with(split, &t, interior_dim))
}

pub(crate) fn invariance_with(split: &SplitHamiltonian, t: &FwTransform, interior_dim: usize) -> InvarianceResiduals {
    InvarianceResiduals {
        even: (&t.conjugate(&split.even) - &split.even).max_norm_leading(interior_dim),
        epsilon: (&t.conjugate(&t.epsilon) - &t.epsilon).max_norm_leading(interior_dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dirac::{dirac_matrix, DiracKind};

    fn beta4() -> ComplexMatrix {
        dirac_matrix(DiracKind::Beta)
    }

    #[test]
    fn split_examples() {
        let az = dirac_matrix(DiracKind::AlphaZ);
        let sz = dirac_matrix(DiracKind::SigmaZ);
        let (e, o) = even_odd_split(&az, &beta4()).unwrap();
        assert_eq!(e, ComplexMatrix::zeros(4));
        assert_eq!(o, az);
        let (e, o) = even_odd_split(&sz, &beta4()).unwrap();
        assert_eq!(e, sz);
        assert_eq!(o, ComplexMatrix::zeros(4));
        let (e, o) = even_odd_split(&(&az + &sz), &beta4()).unwrap();
        assert_eq!(e, sz);
        assert_eq!(o, az);
    }

    #[test]
    fn split_rejects_mismatch() {
        assert!(even_odd_split(&ComplexMatrix::identity(3), &beta4()).is_err());
    }

    #[test]
    fn new_validates_parity_and_mass() {
        let az = dirac_matrix(DiracKind::AlphaZ);
        let z = ComplexMatrix::zeros(4);
        assert!(matches!(
            SplitHamiltonian::new(1.0, az.clone(), z.clone(), beta4()),
            Err(FwError::ParityViolation(_))
        ));
        assert!(SplitHamiltonian::new(0.0, z.clone(), az.clone(), beta4()).is_err());
        assert!(SplitHamiltonian::new(-1.0, z.clone(), az.clone(), beta4()).is_err());
        assert!(SplitHamiltonian::new(1.0, z, az, beta4()).is_ok());
    }

    #[test]
    fn rest_frame() {
        let m = 1.3;
        let split = SplitHamiltonian::new(m, ComplexMatrix::zeros(4), ComplexMatrix::zeros(4), beta4()).unwrap();
        let eps = epsilon_of(&split).unwrap();
        assert!((&eps - &ComplexMatrix::identity(4).scale_real(m)).max_norm() < 1e-14);
        let u = fw_unitary(&split, FwSign::Forward).unwrap();
        assert!((&u - &ComplexMatrix::identity(4)).max_norm() < 1e-14);
        let hfw = fw_hamiltonian(&split).unwrap();
        assert!((&hfw - &beta4().scale_real(m)).max_norm() < 1e-14);
        let inv = invariance_check(&split, 4).unwrap();
        assert_eq!(inv.even, 0.0);
        assert!(inv.epsilon < 1e-14);
    }

    #[test]
    fn free_particle_along_z() {
        let (m, p) = (1.0, 0.75);
        let odd = dirac_matrix(DiracKind::AlphaZ).scale_real(p);
        let split = SplitHamiltonian::new(m, ComplexMatrix::zeros(4), odd, beta4()).unwrap();
        let energy = (m * m + p * p).sqrt();
        let eps = epsilon_of(&split).unwrap();
        assert!((&eps - &ComplexMatrix::identity(4).scale_real(energy)).max_norm() < 1e-14);

        let t = FwTransform::new(&split).unwrap();
        let id = ComplexMatrix::identity(4);
        assert!((&(&t.forward * &t.inverse) - &id).max_norm() < 1e-14);
        assert!((&(&t.forward.adjoint() * &t.forward) - &id).max_norm() < 1e-14);
        let conj = t.conjugate(&split.full());
        let hfw = fw_hamiltonian(&split).unwrap();
        assert!((&conj - &hfw).max_norm() < 1e-14);
        assert!((&hfw - &beta4().scale_real(energy)).max_norm() < 1e-14);
    }

    #[test]
    fn exact_case_with_even_part() {
        // 𝓔 = Π_z commutes with 𝓞 = α_x p_x + α_y p_y.
        let even = dirac_matrix(DiracKind::PiZ).scale_real(0.2);
        let odd = &dirac_matrix(DiracKind::AlphaX).scale_real(0.4) + &dirac_matrix(DiracKind::AlphaY).scale_real(-0.3);
        let split = SplitHamiltonian::new(1.0, even, odd, beta4()).unwrap();
        assert_eq!(split.exactness_residual(4), 0.0);
        let t = FwTransform::new(&split).unwrap();
        let hfw = fw_hamiltonian(&split).unwrap();
        assert!((&t.conjugate(&split.full()) - &hfw).max_norm() < 1e-14);
        assert!(invariance_with(&split, &t, 4).max() < 1e-14);
        // H_FW is β-even.
        assert!(commutator(&hfw, &beta4()).unwrap().max_norm() < 1e-14);
    }

    #[test]
    fn broken_exactness_is_visible_in_invariance() {
        let even = dirac_matrix(DiracKind::SigmaZ).scale_real(0.2);
        let odd = dirac_matrix(DiracKind::AlphaX).scale_real(0.8);
        let split = SplitHamiltonian::new(1.0, even, odd, beta4()).unwrap();
        assert!(split.exactness_residual(4) > 0.1);
        let inv = invariance_check(&split, 4).unwrap();
        assert!(inv.even > 1e-3);
    }

    #[test]
    fn from_operator_splits() {
        let x = &dirac_matrix(DiracKind::AlphaY) + &dirac_matrix(DiracKind::PiZ);
        let split = SplitHamiltonian::from_operator(2.0, &x, beta4()).unwrap();
        assert_eq!(split.even(), &dirac_matrix(DiracKind::PiZ));
        assert_eq!(split.odd(), &dirac_matrix(DiracKind::AlphaY));
        assert_eq!(split.full(), &beta4().scale_real(2.0) + &x);
    }
}
