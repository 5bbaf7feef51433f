//! Particle with anomalous magnetic moment in a uniform magnetic field, zero
//! longitudinal momentum: Dirac Hamiltonian on a truncated Landau basis, closed-form FW
//! Hamiltonian, analytic spectrum, Dirac↔FW state connection and coordinate
//! eigenfunctions.

pub mod operators;
pub mod params;
pub mod radial;
pub mod spectrum;
pub mod states;

pub use operators::{
    build_dirac_hamiltonian, build_dirac_hamiltonian_with, fw_hamiltonian_closed_form, ladder_ops, pi_ops,
    SpinCoupling,
};
pub use params::{HalfInteger, ModelParams, Spin, INTERIOR_MARGIN, MIN_N_MAX};
pub use radial::{fw_wavefunction, laguerre, simpson, uniform_grid, FwWavefunction, RadialFunction};
pub use spectrum::{analytic_spectrum, degenerate_partner, eps0, orbital_numbers, EigenRecord, OrbitalNumbers};
pub use states::{
    connect_to_fw, connect_to_fw_with, dirac_eigenstate, dirac_eigenstate_from, phase_aligned_distance,
    renormalized_fw, BispinorState, CLUSTER_TOL, EDGE_WEIGHT_TOL,
};
