//! Dirac eigenstates of the truncated model and their FW counterparts.

use num_complex::Complex64;

use super::operators::build_dirac_hamiltonian;
use super::params::{ModelParams, Spin};
use super::spectrum::EigenRecord;
use crate::algebra::subspace::{avoid_rows, clusters, diagonalize_within, eigen_columns, fix_phase};
use crate::algebra::{dirac_matrix, hermitian_eig, lift, ComplexMatrix, DiracKind, EigenDecomposition, SPINOR_DIM};
use crate::error::{FwError, Result};

/// Relative gap below which numeric eigenvalues are treated as one degenerate level.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Squared weight on excluded sectors below which a vector counts as free of them.
pub const EDGE_WEIGHT_TOL: f64 = 1e-12;

/// Coefficients over `|n⟩ ⊗ spinor`, flat index `4n + s`. Components `s = 0, 1` form the
/// upper spinor φ, `s = 2, 3` the lower spinor χ.
#[derive(Clone, Debug, PartialEq)]
pub struct BispinorState {
    coeffs: Vec<Complex64>,
}

impl BispinorState {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(SPINOR_DIM) {
            return Err(FwError::DimensionMismatch { left: coeffs.len(), right: SPINOR_DIM });
        }
        Ok(Self { coeffs })
    }

    /// Interleaves per-level upper and lower two-spinors.
    pub fn from_spinors(upper: &[Complex64], lower: &[Complex64]) -> Result<Self> {
        if upper.len() != lower.len() || !upper.len().is_multiple_of(2) {
            return Err(FwError::DimensionMismatch { left: upper.len(), right: lower.len() });
        }
        let coeffs = upper
            .chunks(2)
            .zip(lower.chunks(2))
            .flat_map(|(u, l)| [u[0], u[1], l[0], l[1]])
            .collect();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn n_levels(&self) -> usize {
        self.coeffs.len() / SPINOR_DIM
    }

    fn components(&self, range: std::ops::Range<usize>) -> Vec<Complex64> {
        self.coeffs.chunks(SPINOR_DIM).flat_map(|c| c[range.clone()].to_vec()).collect()
    }

    /// Upper spinor φ, two components per Landau level.
    pub fn upper(&self) -> Vec<Complex64> {
        self.components(0..2)
    }

    /// Lower spinor χ, two components per Landau level.
    pub fn lower(&self) -> Vec<Complex64> {
        self.components(2..4)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coeffs)
    }

    pub fn upper_norm_sq(&self) -> f64 {
        norm_sq(&self.upper())
    }

    pub fn lower_norm(&self) -> f64 {
        norm(&self.lower())
    }
}

pub(crate) fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    norm_sq(v).sqrt()
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `max_i |(Hψ − Eψ)_i|`.
pub(crate) fn eigen_residual(h: &ComplexMatrix, state: &[Complex64], value: f64) -> f64 {
    let hv = h.apply(state);
    hv.iter().zip(state).fold(0.0f64, |acc, (x, y)| acc.max((x - y * value).norm()))
}

/// The interior eigenstate of the truncated Dirac Hamiltonian belonging to `(n, λ)`.
///
/// The state is the unique vector in the numeric eigenspace of `E_total` that has no
/// weight on the top Landau sector and is a `Π_z = λ` eigenvector. Its phase is fixed
/// so the largest component is real positive.
pub fn dirac_eigenstate(params: &ModelParams, n: usize, lambda: Spin) -> Result<(BispinorState, EigenRecord)> {
    params.validate()?;
    let split = build_dirac_hamiltonian(params)?;
    let h = split.full();
    let eig = hermitian_eig(&h)?;
    dirac_eigenstate_from(params, &h, &eig, n, lambda)
}

/// [`dirac_eigenstate`] against a precomputed oracle diagonalization of `hamiltonian`.
pub fn dirac_eigenstate_from(
    params: &ModelParams,
    hamiltonian: &ComplexMatrix,
    eig: &EigenDecomposition,
    n: usize,
    lambda: Spin,
) -> Result<(BispinorState, EigenRecord)> {
    if !params.is_interior(n) {
        return Err(FwError::EdgeLevel { n, max_interior: params.max_interior_level() });
    }
    let record = EigenRecord::new(params, n, lambda, None);
    let target = record.e_total;
    let range = clusters(&eig.values, CLUSTER_TOL)
        .into_iter()
        .find(|r| (eig.values[r.start] - target).abs() <= CLUSTER_TOL * target.abs().max(1.0))
        .ok_or_else(|| FwError::Ambiguous(format!("no numeric eigenvalue near E = {target}")))?;
    let basis = eigen_columns(eig, range);
    let top = SPINOR_DIM * params.n_max..params.dim();
    let interior = avoid_rows(&basis, top, EDGE_WEIGHT_TOL);
    let pol = lift(&dirac_matrix(DiracKind::PiZ), params.n_levels())?;
    let (pol_values, vectors) = diagonalize_within(&interior, &pol);
    let picked: Vec<usize> = (0..pol_values.len())
        .filter(|&j| (pol_values[j] - lambda.sign()).abs() < 1e-6)
        .collect();
    if picked.len() != 1 {
        return Err(FwError::Ambiguous(format!(
            "{} candidate states for n={n}, lambda={} at E = {target}",
            picked.len(),
            lambda.as_i32()
        )));
    }
    let mut coeffs: Vec<Complex64> = vectors.column(picked[0]).iter().copied().collect();
    let scale = norm(&coeffs);
    coeffs.iter_mut().for_each(|z| *z /= scale);
    fix_phase(&mut coeffs);
    let residual = eigen_residual(hamiltonian, &coeffs, target);
    if residual > 1e-10 * target.abs().max(1.0) {
        return Err(FwError::InconsistentRecord { residual });
    }
    Ok((BispinorState::new(coeffs)?, record))
}

/// Applies `[ε₀ + β(E − 𝓔₀)] / √(2ε₀(ε₀ + m))` to a positive-energy Dirac eigenstate.
///
/// For `E = ε₀ + 𝓔₀` this is `√(2ε₀/(ε₀+m)) · (φ, 0)`.
pub fn connect_to_fw(state: &BispinorState, record: &EigenRecord, params: &ModelParams) -> Result<BispinorState> {
    params.validate()?;
    let h = build_dirac_hamiltonian(params)?.full();
    connect_to_fw_with(state, record, params.m, &h)
}

/// [`connect_to_fw`] with the Dirac Hamiltonian supplied by the caller.
pub fn connect_to_fw_with(
    state: &BispinorState,
    record: &EigenRecord,
    mass: f64,
    hamiltonian: &ComplexMatrix,
) -> Result<BispinorState> {
    if state.dim() != hamiltonian.dim() {
        return Err(FwError::DimensionMismatch { left: state.dim(), right: hamiltonian.dim() });
    }
    if record.e_total <= 0.0 {
        return Err(FwError::NegativeEnergy { energy: record.e_total });
    }
    let hv = hamiltonian.apply(state.coeffs());
    let expectation: f64 = state.coeffs().iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum::<f64>()
        / norm_sq(state.coeffs());
    if expectation <= 0.0 {
        return Err(FwError::NegativeEnergy { energy: expectation });
    }
    let residual = eigen_residual(hamiltonian, state.coeffs(), record.e_total);
    if residual > 1e-6 {
        return Err(FwError::InconsistentRecord { residual });
    }
    let eps0 = record.eps0;
    let denom = (2.0 * eps0 * (eps0 + mass)).sqrt();
    let shift = record.e_total - record.e0;
    let upper_factor = (eps0 + shift) / denom;
    let lower_factor = (eps0 - shift) / denom;
    let coeffs = state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, z)| z * if k % SPINOR_DIM < 2 { upper_factor } else { lower_factor })
        .collect();
    BispinorState::new(coeffs)
}

/// `(φ, 0) / √⟨φ|φ⟩`: the FW state rebuilt from the Dirac upper spinor alone.
pub fn renormalized_fw(phi: &[Complex64]) -> Result<BispinorState> {
    if phi.is_empty() || !phi.len().is_multiple_of(2) {
        return Err(FwError::DimensionMismatch { left: phi.len(), right: 2 });
    }
    let scale = norm(phi);
    if scale == 0.0 {
        return Err(FwError::ZeroSpinor);
    }
    let upper: Vec<Complex64> = phi.iter().map(|z| z / scale).collect();
    BispinorState::from_spinors(&upper, &vec![Complex64::new(0.0, 0.0); phi.len()])
}

/// `min_θ max_i |a_i − e^{iθ} b_i|`, with θ taken from the overlap `⟨b|a⟩`.
pub fn phase_aligned_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let overlap: Complex64 = b.iter().zip(a).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    let rotated: Vec<Complex64> = b.iter().map(|z| z * phase).collect();
    max_abs_diff(a, &rotated)
}
