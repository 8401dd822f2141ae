// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use super::{DensityMatrix, Liouvillian};
use crate::{CMatrix, Error, Result, C64};

/// Singular values below this fraction of the largest count as zero.
const KERNEL_RTOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-10;

/// Dimension of the numerical kernel of the vectorized generator.
pub fn kernel_dimension(liouvillian: &Liouvillian) -> usize {
    let sv = liouvillian.matrix().clone().singular_values();
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return sv.len();
    }
    sv.iter().filter(|&&s| s <= KERNEL_RTOL * largest).count()
}

/// Unique trace-one fixed point of the generator.
///
/// The first row of `L vec(rho) = 0` is replaced by the trace condition and
/// the resulting square system is solved by LU decomposition.
pub fn steady_state(liouvillian: &Liouvillian) -> Result<DensityMatrix> {
    let kernel_dim = kernel_dimension(liouvillian);
    if kernel_dim != 1 {
        return Err(Error::DegenerateSteadyState { kernel_dim });
    }
    let dim = liouvillian.dim();
    let n = dim * dim;
    let mut system: CMatrix = liouvillian.matrix().clone();
    let mut rhs = nalgebra::DVector::<C64>::zeros(n);
    for col in 0..n {
        system[(0, col)] = C64::new(0.0, 0.0);
    }
    for c in 0..dim {
        system[(0, c * dim + c)] = C64::new(1.0, 0.0);
    }
    rhs[0] = C64::new(1.0, 0.0);
    let x = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SteadyStateSolve("constrained generator is singular".into()))?;

    let residual = (liouvillian.matrix() * &x).camax();
    if residual > RESIDUAL_TOL {
        return Err(Error::SteadyStateSolve(format!(
            "residual {residual:e} exceeds tolerance"
        )));
    }
    let m = DensityMatrix::from_vec(dim, x.as_slice()).into_matrix();
    let hermitian = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::new(hermitian)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::SpectralDensity;
    use crate::master::{build_rate_tensor, lambda_zero_generator};
    use crate::system::{build_dressed_basis, SystemParams};

    fn spectra() -> (SpectralDensity, SpectralDensity) {
        (
            SpectralDensity::new(0.002, 5.0).unwrap(),
            SpectralDensity::new(0.001, 8.0).unwrap(),
        )
    }

    #[test]
    fn undriven_relaxes_to_ground() {
        let basis = build_dressed_basis(&SystemParams::default()).unwrap();
        let (j1, j2) = spectra();
        let tensor = build_rate_tensor(&basis, &j1, &j2, true);
        let l = Liouvillian::from_tensor(&tensor, &basis.hamiltonian());
        let rho = steady_state(&l).unwrap();
        assert!((rho.get(0, 0).re - 1.0).abs() < 1e-10);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uncoupled_common_bath_is_degenerate() {
        let params = SystemParams::resonant(0.0).unwrap();
        let (j1, j2) = spectra();
        let gen = lambda_zero_generator(&params, j1.eval(1.0), j2.eval(1.0)).unwrap();
        match steady_state(&gen.liouvillian()) {
            Err(Error::DegenerateSteadyState { kernel_dim }) => assert!(kernel_dim >= 2),
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }
}
