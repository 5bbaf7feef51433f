//! Analytic spectrum `ε₀ = √(m² + (2n+1)|eH| − λeH)`, `𝓔₀ = −λμ′H`, `E = ε₀ + 𝓔₀`.

use super::params::{HalfInteger, ModelParams, Spin};
use crate::error::{FwError, Result};

/// One positive-energy level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenRecord {
    pub n: usize,
    pub lambda: Spin,
    /// Total angular momentum projection; bookkeeping only, the matrix model does not resolve it.
    pub m_total: Option<HalfInteger>,
    pub eps0: f64,
    pub e0: f64,
    pub e_total: f64,
}

impl EigenRecord {
    pub fn new(params: &ModelParams, n: usize, lambda: Spin, m_total: Option<HalfInteger>) -> Self {
        let eps0 = eps0(params, n, lambda);
        // + 0.0 turns a signed zero into +0
        let e0 = -lambda.sign() * params.mu_prime * params.h + 0.0;
        Self { n, lambda, m_total, eps0, e0, e_total: eps0 + e0 }
    }
}

pub fn eps0(params: &ModelParams, n: usize, lambda: Spin) -> f64 {
    super::operators::epsilon_squared(params, n, lambda.sign()).sqrt()
}

/// Quantum numbers of the coordinate factor for `(n, λ, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitalNumbers {
    /// Orbital projection `m_l = M − λ/2`; the azimuthal factor is `e^{i m_l φ}`.
    pub m_l: i32,
    /// Radial node count.
    pub n_rho: usize,
}

/// Maps `(n, λ, M)` to `(m_l, n_ρ)` via `n = n_ρ + (|m_l| − sgn(eH)·m_l)/2`.
pub fn orbital_numbers(params: &ModelParams, n: usize, lambda: Spin, m_total: HalfInteger) -> Result<OrbitalNumbers> {
    let m_l = (m_total.twice() - lambda.as_i32()) / 2;
    let shift = if params.field_sign() > 0.0 {
        (m_l.abs() - m_l) / 2
    } else {
        (m_l.abs() + m_l) / 2
    } as usize;
    if shift > n {
        return Err(FwError::Inadmissible(format!(
            "M = {} with lambda = {} needs Landau level n >= {shift} (orbital projection m_l = {m_l}), got n = {n}",
            m_total.value(),
            lambda.as_i32()
        )));
    }
    Ok(OrbitalNumbers { m_l, n_rho: n - shift })
}

/// All levels `n = 0..=n_max`, `λ = ±1`, sorted by total energy.
///
/// With an empty `m_list` each `(n, λ)` appears once with `m_total = None`; otherwise one
/// record per admissible `(n, λ, M)`.
pub fn analytic_spectrum(params: &ModelParams, m_list: &[HalfInteger]) -> Vec<EigenRecord> {
    let mut out = Vec::new();
    for n in 0..=params.n_max {
        for lambda in Spin::BOTH {
            if m_list.is_empty() {
                out.push(EigenRecord::new(params, n, lambda, None));
            }
            for &m in m_list {
                if orbital_numbers(params, n, lambda, m).is_ok() {
                    out.push(EigenRecord::new(params, n, lambda, Some(m)));
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.e_total
            .total_cmp(&b.e_total)
            .then(a.n.cmp(&b.n))
            .then(b.lambda.cmp(&a.lambda))
            .then(a.m_total.cmp(&b.m_total))
    });
    out
}

/// Partner of `(n, λ)` with the same `ε₀`: `(n + 1, sgn(eH))` for `λ = −sgn(eH)`.
pub fn degenerate_partner(params: &ModelParams, n: usize, lambda: Spin) -> Option<(usize, Spin)> {
    let aligned = if params.field_sign() > 0.0 { Spin::Up } else { Spin::Down };
    (lambda != aligned).then_some((n + 1, aligned))
}
