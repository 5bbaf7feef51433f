//! Exact Foldy-Wouthuysen transformation laboratory.
//!
//! * [`algebra`]: dense complex matrices, Dirac matrices, Hermitian matrix functions and
//!   the closed-form FW transformation for Hamiltonians whose even and odd parts commute.
//! * [`landau`]: the uniform-magnetic-field model with anomalous magnetic moment.
//! * [`verification`]: brute-force diagonalization and the residual checks tying the
//!   two representations together.
//!
//! Natural units, ħ = c = 1.

pub mod algebra;
pub mod error;
pub mod landau;
pub mod verification;

pub use error::{FwError, Result};
