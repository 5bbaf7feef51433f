//! Coordinate-space FW eigenfunctions in the symmetric gauge.
//!
//! `Ψ_FW = e^{i m_l φ}/√(2π) · R(ρ) · ζ^λ` with `m_l = M − λ/2`, `ζ⁺ = (1,0,0,0)`,
//! `ζ⁻ = (0,1,0,0)`. The radial factor is the 2D oscillator function
//! `R ∝ (ρ/√2b)^{|m_l|} e^{−ρ²/4b²} L_{n_ρ}^{|m_l|}(ρ²/2b²)`.

use num_complex::Complex64;

use super::params::{HalfInteger, ModelParams, Spin};
use super::spectrum::{orbital_numbers, EigenRecord};
use crate::error::{FwError, Result};

/// Generalized Laguerre polynomial `L_n^α(x)` by upward three-term recurrence.
pub fn laguerre(n: usize, alpha: u32, x: f64) -> f64 {
    let a = alpha as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized radial eigenfunction of `π⊥²`: `∫₀^∞ R² ρ dρ = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialFunction {
    pub n_rho: usize,
    pub ell_abs: u32,
    /// Magnetic length.
    pub b: f64,
}

impl RadialFunction {
    pub fn new(n_rho: usize, ell_abs: u32, b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(FwError::InvalidParams(format!("magnetic length must be positive, got {b}")));
        }
        Ok(Self { n_rho, ell_abs, b })
    }

    fn normalization(&self) -> f64 {
        // √(n_ρ! / (n_ρ + ℓ)!) / b
        let ratio: f64 = (self.n_rho + 1..=self.n_rho + self.ell_abs as usize).map(|k| 1.0 / k as f64).product();
        ratio.sqrt() / self.b
    }

    pub fn value(&self, rho: f64) -> f64 {
        let x = rho * rho / (2.0 * self.b * self.b);
        let r = rho / (std::f64::consts::SQRT_2 * self.b);
        self.normalization() * r.powi(self.ell_abs as i32) * (-x / 2.0).exp() * laguerre(self.n_rho, self.ell_abs, x)
    }

    /// `∫₀^{rho_max} R² ρ dρ` by composite Simpson on `intervals` (rounded up to even)
    /// uniform panels.
    pub fn quadrature_norm(&self, rho_max: f64, intervals: usize) -> f64 {
        simpson(|rho| self.value(rho).powi(2) * rho, 0.0, rho_max, intervals)
    }
}

/// Composite Simpson rule on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals.max(2).div_ceil(2) * 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Sampled FW eigenfunction for one `(n, λ, M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FwWavefunction {
    pub record: EigenRecord,
    /// Orbital projection; the azimuthal factor `e^{i m_l φ}/√(2π)` is carried as this label.
    pub m_l: i32,
    pub radial: RadialFunction,
    /// Constant bispinor ζ^λ; the lower spinor is zero.
    pub spinor: [Complex64; 4],
    /// `(ρ, R(ρ))` pairs.
    pub samples: Vec<(f64, f64)>,
}

pub fn fw_wavefunction(
    params: &ModelParams,
    n: usize,
    lambda: Spin,
    m_total: HalfInteger,
    grid: &[f64],
) -> Result<FwWavefunction> {
    params.validate()?;
    validate_grid(grid)?;
    let orb = orbital_numbers(params, n, lambda, m_total)?;
    let radial = RadialFunction::new(orb.n_rho, orb.m_l.unsigned_abs(), params.magnetic_length())?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let spinor = match lambda {
        Spin::Up => [one, zero, zero, zero],
        Spin::Down => [zero, one, zero, zero],
    };
    Ok(FwWavefunction {
        record: EigenRecord::new(params, n, lambda, Some(m_total)),
        m_l: orb.m_l,
        radial,
        spinor,
        samples: grid.iter().map(|&rho| (rho, radial.value(rho))).collect(),
    })
}

pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(FwError::InvalidGrid("grid is empty".into()));
    }
    if grid.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(FwError::InvalidGrid("grid points must be positive and finite".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FwError::InvalidGrid("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `rho_max · i / points` for `i = 1..=points`.
pub fn uniform_grid(rho_max: f64, points: usize) -> Vec<f64> {
    (1..=points).map(|i| rho_max * i as f64 / points as f64).collect()
}
