use std::fmt;

use serde::Serialize;

use crate::algebra::SPINOR_DIM;
use crate::error::{FwError, Result};

/// Number of top Landau sectors excluded from every tolerance check.
pub const INTERIOR_MARGIN: usize = 2;

/// Smallest admissible Landau truncation.
pub const MIN_N_MAX: usize = 4;

/// Physical parameters of a particle with anomalous magnetic moment in a uniform
/// field `H ẑ`, plus the Landau truncation `0..=n_max`. Longitudinal momentum is zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelParams {
    pub m: f64,
    pub e: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub mu_prime: f64,
    pub n_max: usize,
}

impl ModelParams {
    pub fn new(m: f64, e: f64, h: f64, mu_prime: f64, n_max: usize) -> Result<Self> {
        let p = Self { m, e, h, mu_prime, n_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(FwError::InvalidParams(msg));
        if !(self.m.is_finite() && self.m > 0.0) {
            return bad(format!("m must be positive, got {}", self.m));
        }
        if !(self.e.is_finite() && self.e != 0.0) {
            return bad(format!("e must be finite and nonzero, got {}", self.e));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return bad(format!("H must be positive, got {}", self.h));
        }
        if !self.mu_prime.is_finite() {
            return bad(format!("mu_prime must be finite, got {}", self.mu_prime));
        }
        if self.n_max < MIN_N_MAX {
            return bad(format!("n_max must be at least {MIN_N_MAX}, got {}", self.n_max));
        }
        Ok(())
    }

    pub fn with_mu_prime(self, mu_prime: f64) -> Self {
        Self { mu_prime, ..self }
    }

    pub fn with_n_max(self, n_max: usize) -> Self {
        Self { n_max, ..self }
    }

    /// `eH`, signed.
    pub fn eh(&self) -> f64 {
        self.e * self.h
    }

    /// `sgn(eH)` as ±1.
    pub fn field_sign(&self) -> f64 {
        self.eh().signum()
    }

    /// Magnetic length `1/√(|e|H)`.
    pub fn magnetic_length(&self) -> f64 {
        1.0 / self.eh().abs().sqrt()
    }

    pub fn n_levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        SPINOR_DIM * self.n_levels()
    }

    /// Highest Landau index treated as interior.
    pub fn max_interior_level(&self) -> usize {
        self.n_max - INTERIOR_MARGIN
    }

    /// Number of leading basis indices belonging to interior sectors.
    pub fn interior_dim(&self) -> usize {
        SPINOR_DIM * (self.max_interior_level() + 1)
    }

    pub fn is_interior(&self, n: usize) -> bool {
        n <= self.max_interior_level()
    }
}

impl Default for ModelParams {
    /// `m = 1, e = 1, H = 0.1, μ′ = 10⁻³, n_max = 64`.
    fn default() -> Self {
        Self { m: 1.0, e: 1.0, h: 0.1, mu_prime: 1e-3, n_max: 64 }
    }
}

/// Spin projection λ = ±1 (eigenvalue of Π_z on the upper spinor).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn from_i32(lambda: i32) -> Result<Self> {
        match lambda {
            1 => Ok(Spin::Up),
            -1 => Ok(Spin::Down),
            other => Err(FwError::Inadmissible(format!("lambda must be +1 or -1, got {other}"))),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// A half-odd-integer `M`, stored as `2M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub fn from_twice(twice: i32) -> Result<Self> {
        if twice % 2 == 0 {
            return Err(FwError::Inadmissible(format!("M = {} is not a half-odd integer", twice / 2)));
        }
        Ok(Self(twice))
    }

    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > i32::MAX as f64 {
            return Err(FwError::Inadmissible(format!("M = {value} is not a half-odd integer")));
        }
        Self::from_twice(twice as i32)
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}
