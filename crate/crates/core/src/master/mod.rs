// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Master-equation engine.
//!
//! All matrices live in the working basis of a [`DressedBasis`]: the dressed
//! eigenbasis for `lambda > 0`, the product basis for `lambda = 0`. A
//! generator is materialized as a dense [`Liouvillian`] acting on the
//! row-major vectorization `rho[c * dim + d]`.

mod dark;
mod fit;
mod lindblad;
mod propagate;
mod steady;
mod tensor;

pub use dark::{dark_state, steady_expectations_analytic, ArmExpectations, DarkState, InitialArm};
pub use fit::{fit_exponential_rate, local_maxima, steady_after};
pub use lindblad::{dissipator, lambda_zero_generator, traditional_generator, LindbladGenerator};
pub use propagate::{evolve, evolve_traditional, propagate, ObservableSet, Trajectory};
pub use steady::{kernel_dimension, steady_state};
pub use tensor::{build_rate_tensor, RateTensor};

use nalgebra::DMatrix;

use crate::system::DressedBasis;
use crate::{CMatrix, Error, Result, C64};

/// Eigenvalues below `-POSITIVITY_TOL` are reported as non-physical.
pub const POSITIVITY_TOL: f64 = 1e-8;

const STATE_TOL: f64 = 1e-10;

/// Reduced density matrix of the atom-cavity system.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Validated construction: Hermitian, unit trace, positive to
    /// [`POSITIVITY_TOL`].
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidState("matrix is not square".into()));
        }
        let rho = Self(m);
        let herm = rho.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = rho.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min = rho.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive {
                time: f64::NAN,
                min_eigenvalue: min,
            });
        }
        Ok(rho)
    }

    pub fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self(m)
    }

    /// `|psi><psi|` for a (not necessarily normalized) state vector.
    pub fn pure(psi: &[C64]) -> Self {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v = nalgebra::DVector::from_iterator(psi.len(), psi.iter().map(|z| z / norm));
        Self(&v * v.adjoint())
    }

    /// Projector onto a single basis level.
    pub fn basis_state(dim: usize, level: usize) -> Self {
        let mut m = CMatrix::zeros(dim, dim);
        m[(level, level)] = C64::new(1.0, 0.0);
        Self(m)
    }

    /// Pure product-basis state expressed in the working basis.
    pub fn from_product_state(basis: &DressedBasis, psi: &[C64]) -> Self {
        Self::pure(&basis.state_coefficients(psi))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, c: usize, d: usize) -> C64 {
        self.0[(c, d)]
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.0 - self.0.adjoint())
            .iter()
            .fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        h.symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// `Re tr(O rho)`.
    pub fn expectation(&self, op: &CMatrix) -> f64 {
        let dim = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                acc += op[(i, j)] * self.0[(j, i)];
            }
        }
        acc.re
    }

    /// Row-major vectorization.
    pub fn to_vec(&self) -> Vec<C64> {
        let dim = self.dim();
        (0..dim * dim)
            .map(|idx| self.0[(idx / dim, idx % dim)])
            .collect()
    }

    pub fn from_vec(dim: usize, v: &[C64]) -> Self {
        Self(CMatrix::from_fn(dim, dim, |c, d| v[c * dim + d]))
    }
}

/// Dense superoperator acting on row-major vectorized density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    dim: usize,
    matrix: CMatrix,
}

impl Liouvillian {
    /// Materialize a linear map by applying it to every matrix unit `|k><l|`.
    pub fn from_map<F>(dim: usize, map: F) -> Self
    where
        F: Fn(&CMatrix) -> CMatrix,
    {
        let n = dim * dim;
        let mut matrix = CMatrix::zeros(n, n);
        for k in 0..dim {
            for l in 0..dim {
                let mut unit = CMatrix::zeros(dim, dim);
                unit[(k, l)] = C64::new(1.0, 0.0);
                let image = map(&unit);
                for c in 0..dim {
                    for d in 0..dim {
                        matrix[(c * dim + d, k * dim + l)] = image[(c, d)];
                    }
                }
            }
        }
        Self { dim, matrix }
    }

    /// `d rho_cd / dt = -i <c|[H, rho]|d> + sum_kl gamma^{cdkl} rho_kl`.
    pub fn from_tensor(tensor: &RateTensor, hamiltonian: &CMatrix) -> Self {
        let dim = tensor.dim();
        assert_eq!(
            hamiltonian.nrows(),
            dim,
            "Hamiltonian / tensor dimension mismatch"
        );
        let n = dim * dim;
        let i = C64::new(0.0, 1.0);
        let matrix = CMatrix::from_fn(n, n, |row, col| {
            let (c, d) = (row / dim, row % dim);
            let (k, l) = (col / dim, col % dim);
            let mut v = tensor.get(c, d, k, l);
            if d == l {
                v -= i * hamiltonian[(c, k)];
            }
            if c == k {
                v += i * hamiltonian[(l, d)];
            }
            v
        });
        Self { dim, matrix }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `out = L rho` on row-major vectorized matrices.
    pub fn apply(&self, rho: &[C64], out: &mut [C64]) {
        let n = self.dim * self.dim;
        let mut out = nalgebra::DVectorViewMut::from_slice(out, n);
        out.gemv(
            C64::new(1.0, 0.0),
            &self.matrix,
            &nalgebra::DVectorView::from_slice(rho, n),
            C64::new(0.0, 0.0),
        );
    }

    pub fn apply_to(&self, rho: &DensityMatrix) -> CMatrix {
        let mut out = vec![C64::new(0.0, 0.0); self.dim * self.dim];
        self.apply(&rho.to_vec(), &mut out);
        DensityMatrix::from_vec(self.dim, &out).into_matrix()
    }
}

pub(crate) fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    crate::system::to_complex(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_validation() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = C64::new(0.5, 0.0);
        m[(1, 1)] = C64::new(0.5, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_ok());
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(
            DensityMatrix::new(m.clone()),
            Err(Error::InvalidState(_))
        ));
        m[(1, 0)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_ok());
        m[(0, 0)] = C64::new(1.2, 0.0);
        m[(1, 1)] = C64::new(-0.2, 0.0);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn vectorization_is_row_major() {
        let rho = DensityMatrix::from_matrix_unchecked(CMatrix::from_fn(3, 3, |c, d| {
            C64::new(c as f64, d as f64)
        }));
        let v = rho.to_vec();
        assert_eq!(v[1 * 3 + 2], C64::new(1.0, 2.0));
        assert_eq!(DensityMatrix::from_vec(3, &v), rho);
    }

    #[test]
    fn hamiltonian_superoperator_matches_commutator() {
        let h = CMatrix::from_fn(3, 3, |i, j| C64::new((i + j) as f64, i as f64 - j as f64));
        let from_map = Liouvillian::from_map(3, |r| (&h * r - r * &h) * C64::new(0.0, -1.0));
        let basis = crate::system::build_dressed_basis(
            &crate::system::SystemParams::resonant(0.1)
                .unwrap()
                .with_n_max(1),
        )
        .unwrap();
        let silent = crate::bath::SpectralDensity::new(0.0, 1.0).unwrap();
        let zero = build_rate_tensor(&basis, &silent, &silent, true);
        let from_tensor = Liouvillian::from_tensor(&zero, &h);
        assert!((from_map.matrix() - from_tensor.matrix()).camax() < 1e-14);
    }
}
