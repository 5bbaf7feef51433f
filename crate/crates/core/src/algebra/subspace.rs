//! Helpers for working inside (possibly degenerate) eigenspaces.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{ComplexMatrix, EigenDecomposition};

/// Groups ascending eigenvalues into clusters whose neighbours differ by at most
/// `rel_tol · max(1, |λ|)`. Returns index ranges.
pub(crate) fn clusters(values: &[f64], rel_tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len() || (values[i] - values[i - 1]).abs() > rel_tol * values[i].abs().max(1.0);
        if split {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Columns `range` of the eigenvector matrix.
pub(crate) fn eigen_columns(eig: &EigenDecomposition, range: std::ops::Range<usize>) -> DMatrix<Complex64> {
    eig.vectors.inner().columns(range.start, range.len()).into_owned()
}

/// Orthonormal basis of the part of span(`basis`) with (numerically) no weight on
/// the rows in `excluded`.
pub(crate) fn avoid_rows(basis: &DMatrix<Complex64>, excluded: std::ops::Range<usize>, tol: f64) -> DMatrix<Complex64> {
    let k = basis.ncols();
    if k == 0 || excluded.is_empty() {
        return basis.clone();
    }
    let rows = basis.rows(excluded.start, excluded.len());
    let gram = rows.adjoint() * rows;
    let eig = gram.symmetric_eigen();
    let keep: Vec<usize> = (0..k).filter(|&j| eig.eigenvalues[j] <= tol).collect();
    let mut coeffs = DMatrix::zeros(k, keep.len());
    for (c, &j) in keep.iter().enumerate() {
        coeffs.set_column(c, &eig.eigenvectors.column(j));
    }
    basis * coeffs
}

/// Diagonalizes `basis† · op · basis`; returns (eigenvalues, lifted eigenvectors).
pub(crate) fn diagonalize_within(basis: &DMatrix<Complex64>, op: &ComplexMatrix) -> (Vec<f64>, DMatrix<Complex64>) {
    let reduced = basis.adjoint() * op.inner() * basis;
    let reduced = (&reduced + reduced.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = reduced.symmetric_eigen();
    let values = eig.eigenvalues.iter().copied().collect();
    (values, basis * eig.eigenvectors)
}

/// Rotates `v` so its largest-modulus component (first on ties) is real positive.
pub(crate) fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() * (1.0 + 1e-9) {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() == 0.0 {
        return;
    }
    let phase = pivot.conj() / pivot.norm();
    v.iter_mut().for_each(|z| *z *= phase);
}
