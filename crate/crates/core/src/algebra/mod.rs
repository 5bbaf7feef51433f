//! Operator algebra: dense complex matrices, Dirac matrices, Hermitian matrix
//! functions and the exact FW transformation.

pub mod dirac;
pub mod matrix;
pub(crate) mod subspace;
pub mod transform;

pub use dirac::{dirac_matrix, dirac_matrix_named, lift, DiracKind, SPINOR_DIM};
pub use matrix::{
    anticommutator, commutator, hermitian_eig, hermitian_function, matrix_sqrt_psd, ComplexMatrix,
    EigenDecomposition, HERMITIAN_TOL, PSD_TOL,
};
pub use transform::{
    epsilon_of, even_odd_split, fw_hamiltonian, fw_unitary, invariance_check, FwSign, FwTransform,
    InvarianceResiduals, SplitHamiltonian,
};
