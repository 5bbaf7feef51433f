//! Dirac matrices in the standard (Dirac) representation and their lift to the
//! Landau ⊗ spinor basis.
//!
//! β = diag(I₂, −I₂), αᵢ = [[0, σᵢ], [σᵢ, 0]], Σᵢ = diag(σᵢ, σᵢ) and the polarization
//! matrices Πᵢ = βΣᵢ = diag(σᵢ, −σᵢ). Lifted operators use flat index `k = 4n + s`:
//! Landau index outer, spinor component inner.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{FwError, Result};

/// Number of bispinor components.
pub const SPINOR_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiracKind {
    Beta,
    AlphaX,
    AlphaY,
    AlphaZ,
    SigmaX,
    SigmaY,
    SigmaZ,
    PiX,
    PiY,
    PiZ,
}

impl DiracKind {
    pub const ALL: [DiracKind; 10] = [
        DiracKind::Beta,
        DiracKind::AlphaX,
        DiracKind::AlphaY,
        DiracKind::AlphaZ,
        DiracKind::SigmaX,
        DiracKind::SigmaY,
        DiracKind::SigmaZ,
        DiracKind::PiX,
        DiracKind::PiY,
        DiracKind::PiZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiracKind::Beta => "beta",
            DiracKind::AlphaX => "alpha_x",
            DiracKind::AlphaY => "alpha_y",
            DiracKind::AlphaZ => "alpha_z",
            DiracKind::SigmaX => "sigma_x",
            DiracKind::SigmaY => "sigma_y",
            DiracKind::SigmaZ => "sigma_z",
            DiracKind::PiX => "pi_x",
            DiracKind::PiY => "pi_y",
            DiracKind::PiZ => "pi_z",
        }
    }
}

impl fmt::Display for DiracKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DiracKind {
    type Err = FwError;

    fn from_str(s: &str) -> Result<Self> {
        DiracKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FwError::UnknownKind(s.to_owned()))
    }
}

type Pauli = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn pauli(axis: usize) -> Pauli {
    match axis {
        0 => [[ZERO, ONE], [ONE, ZERO]],
        1 => [[ZERO, -I], [I, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// Assembles a 4×4 matrix from 2×2 blocks `[[tl, tr], [bl, br]]`.
fn blocks(tl: Pauli, tr: Pauli, bl: Pauli, br: Pauli) -> ComplexMatrix {
    ComplexMatrix::from_fn(SPINOR_DIM, |i, j| {
        let block = match (i / 2, j / 2) {
            (0, 0) => &tl,
            (0, 1) => &tr,
            (1, 0) => &bl,
            _ => &br,
        };
        block[i % 2][j % 2]
    })
}

fn scaled(p: Pauli, s: f64) -> Pauli {
    p.map(|row| row.map(|z| z * s))
}

const ZERO2: Pauli = [[ZERO, ZERO], [ZERO, ZERO]];
const ID2: Pauli = [[ONE, ZERO], [ZERO, ONE]];

/// The 4×4 Dirac-representation matrix of the given kind.
pub fn dirac_matrix(kind: DiracKind) -> ComplexMatrix {
    use DiracKind::*;
    match kind {
        Beta => blocks(ID2, ZERO2, ZERO2, scaled(ID2, -1.0)),
        AlphaX | AlphaY | AlphaZ => {
            let s = pauli(kind as usize - AlphaX as usize);
            blocks(ZERO2, s, s, ZERO2)
        }
        SigmaX | SigmaY | SigmaZ => {
            let s = pauli(kind as usize - SigmaX as usize);
            blocks(s, ZERO2, ZERO2, s)
        }
        PiX | PiY | PiZ => {
            let s = pauli(kind as usize - PiX as usize);
            blocks(s, ZERO2, ZERO2, scaled(s, -1.0))
        }
    }
}

/// Looks a Dirac matrix up by its name (`beta`, `alpha_x`, ..., `pi_z`).
pub fn dirac_matrix_named(name: &str) -> Result<ComplexMatrix> {
    Ok(dirac_matrix(name.parse()?))
}

/// `I_{n_levels} ⊗ op4`: the spinor operator acting identically on every Landau level.
pub fn lift(op4: &ComplexMatrix, n_levels: usize) -> Result<ComplexMatrix> {
    if op4.dim() != SPINOR_DIM {
        return Err(FwError::DimensionMismatch { left: op4.dim(), right: SPINOR_DIM });
    }
    if n_levels == 0 {
        return Err(FwError::InvalidParams("lift needs at least one Landau level".into()));
    }
    Ok(ComplexMatrix::identity(n_levels).kron(op4))
}
