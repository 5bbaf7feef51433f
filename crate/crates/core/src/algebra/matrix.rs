use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FwError, Result};

/// Relative max-norm tolerance under which a matrix is treated as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative eigenvalue floor below which a matrix is rejected as not PSD.
pub const PSD_TOL: f64 = 1e-10;

/// Dense square complex matrix, the finite-basis representation of every operator.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// Builds a matrix from `dim * dim` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(FwError::NotSquare { dim, entries: entries.len() });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FwError::NonFinite);
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, &entries)))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |i, j| if i == j { diag[i] } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |i, j| if i == j { Complex64::new(diag[i], 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub(crate) fn from_inner(m: DMatrix<Complex64>) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }

    pub(crate) fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> Vec<Complex64> {
        let n = self.dim();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.0[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.0[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// Largest entry modulus restricted to the leading `k x k` block.
    pub fn max_norm_leading(&self, k: usize) -> f64 {
        let k = k.min(self.dim());
        let mut acc = 0.0f64;
        for j in 0..k {
            for i in 0..k {
                acc = acc.max(self.0[(i, j)].norm());
            }
        }
        acc
    }

    /// `‖A − A†‖_max / ‖A‖_max`, zero for the zero matrix.
    pub fn hermiticity_residual(&self) -> f64 {
        let scale = self.max_norm();
        if scale == 0.0 {
            return 0.0;
        }
        (&self.0 - self.0.adjoint()).iter().fold(0.0f64, |acc, z| acc.max(z.norm())) / scale
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_residual() <= HERMITIAN_TOL
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// Kronecker product with `self` as the outer factor.
    pub fn kron(&self, inner: &ComplexMatrix) -> Self {
        Self(self.0.kronecker(&inner.0))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length does not match matrix dimension");
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).fold(Complex64::new(0.0, 0.0), |acc, j| acc + self.0[(i, j)] * v[j]))
            .collect()
    }

    pub fn try_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_dims(self, rhs)?;
        Ok(self * rhs)
    }
}

// Real and imaginary parts go through the f64 kernel, which is much faster
// than the generic complex path.
fn complex_gemm(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

pub(crate) fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(FwError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        if self.dim() <= 8 {
            write!(f, "{}", self.0)?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(complex_gemm(&self.0, &rhs.0))
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// `AB − BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(a, b)?;
    Ok(&(a * b) - &(b * a))
}

/// `AB + BA`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(a, b)?;
    Ok(&(a * b) + &(b * a))
}

/// Spectral decomposition of a Hermitian matrix.
///
/// `values` are ascending; the columns of `vectors` are the matching orthonormal
/// eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V · diag(f(λ)) · V†`, Hermitian-symmetrized.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.vectors.inner();
        let mut scaled = v.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let fl = Complex64::new(f(lambda), 0.0);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fl);
        }
        ComplexMatrix::from_inner(complex_gemm(&scaled, &v.adjoint())).hermitian_part()
    }

    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.vectors.inner().column(j).iter().copied().collect()
    }

    /// Largest modulus eigenvalue.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let residual = a.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(FwError::NotHermitian { residual });
    }
    let eig = a.hermitian_part().0.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(a.dim(), a.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors: ComplexMatrix::from_inner(vectors) })
}

/// Applies a real scalar function to a Hermitian matrix through its eigenbasis.
pub fn hermitian_function(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(a)?.map(f))
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[−1e-10·‖A‖, 0)` are clamped to zero; anything more negative is
/// rejected.
pub fn matrix_sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let floor = -PSD_TOL * eig.spectral_radius();
    if let Some(&lowest) = eig.values.first() {
        if lowest < floor {
            return Err(FwError::NotPositiveSemidefinite { eigenvalue: lowest });
        }
    }
    Ok(eig.map(|l| l.max(0.0).sqrt()))
}
