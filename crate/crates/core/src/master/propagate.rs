// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DVectorView, DVectorViewMut};

use super::{traditional_generator, DensityMatrix, Liouvillian, RateTensor, POSITIVITY_TOL};
use crate::integrate::{integrate, Tolerances};
use crate::system::{Branch, DressedBasis, ProductOperators, SystemParams};
use crate::{CMatrix, Error, Result, C64};

/// Observables recorded along a trajectory, in the working basis.
#[derive(Debug, Clone)]
pub struct ObservableSet {
    pub photon: CMatrix,
    pub excited: CMatrix,
    /// `|1,+><1,+|`.
    pub plus: CMatrix,
    /// `|1,-><1,-|`.
    pub minus: CMatrix,
}

impl ObservableSet {
    pub fn for_basis(basis: &DressedBasis) -> Self {
        let ops = ProductOperators::new(basis.params.n_max);
        let projector = |branch| {
            let v = nalgebra::DVector::from_vec(
                basis.state_coefficients(&basis.dressed_product_vector(1, branch)),
            );
            &v * v.adjoint()
        };
        Self {
            photon: super::to_complex(&basis.to_dressed(&ops.number)),
            excited: super::to_complex(&basis.to_dressed(&ops.excited)),
            plus: projector(Branch::Plus),
            minus: projector(Branch::Minus),
        }
    }
}

/// Time-stamped density matrices with the standard observable series.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// `<a^dag a>`.
    pub photon: Vec<f64>,
    /// `<|e><e|>`.
    pub excited: Vec<f64>,
    pub rho_1p1p: Vec<f64>,
    pub rho_1m1m: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&DensityMatrix> {
        self.states.last()
    }
}

/// Integrate `d vec(rho)/dt = L vec(rho)` and sample `obs` at every grid time.
///
/// Fails with [`Error::NotPositive`] at the first output time whose state has
/// an eigenvalue below `-POSITIVITY_TOL`.
pub fn propagate(
    liouvillian: &Liouvillian,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    obs: &ObservableSet,
    tol: &Tolerances,
) -> Result<Trajectory> {
    let dim = liouvillian.dim();
    if rho0.dim() != dim {
        return Err(Error::InvalidState(format!(
            "state has dimension {}, generator {}",
            rho0.dim(),
            dim
        )));
    }
    let l = liouvillian.matrix();
    let rhs = |_t: f64, y: &[C64], dy: &mut [C64]| {
        let n = y.len();
        let mut out = DVectorViewMut::from_slice(dy, n);
        out.gemv(
            C64::new(1.0, 0.0),
            l,
            &DVectorView::from_slice(y, n),
            C64::new(0.0, 0.0),
        );
    };
    let samples = integrate(rhs, &rho0.to_vec(), t_grid, tol)?;

    let mut traj = Trajectory {
        times: t_grid.to_vec(),
        states: Vec::with_capacity(samples.len()),
        photon: Vec::with_capacity(samples.len()),
        excited: Vec::with_capacity(samples.len()),
        rho_1p1p: Vec::with_capacity(samples.len()),
        rho_1m1m: Vec::with_capacity(samples.len()),
    };
    for (t, v) in t_grid.iter().zip(samples) {
        let rho = DensityMatrix::from_vec(dim, &v);
        let min = rho.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive {
                time: *t,
                min_eigenvalue: min,
            });
        }
        traj.photon.push(rho.expectation(&obs.photon));
        traj.excited.push(rho.expectation(&obs.excited));
        traj.rho_1p1p.push(rho.expectation(&obs.plus));
        traj.rho_1m1m.push(rho.expectation(&obs.minus));
        traj.states.push(rho);
    }
    Ok(traj)
}

/// Common-bath evolution `d rho_cd/dt = -i (E_c - E_d) rho_cd + sum gamma^{cdkl} rho_kl`.
pub fn evolve(
    rho0: &DensityMatrix,
    tensor: &RateTensor,
    energies: &[f64],
    t_grid: &[f64],
) -> Result<Trajectory> {
    if energies.len() != tensor.dim() {
        return Err(Error::InvalidParameter(format!(
            "{} energies for a tensor of dimension {}",
            energies.len(),
            tensor.dim()
        )));
    }
    let h = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        energies.len(),
        energies.iter().map(|&e| C64::new(e, 0.0)),
    ));
    let liouvillian = Liouvillian::from_tensor(tensor, &h);
    propagate(
        &liouvillian,
        rho0,
        t_grid,
        &ObservableSet::for_basis(tensor.basis()),
        &Tolerances::default(),
    )
}

/// Evolution under independent cavity and atom dissipators.
pub fn evolve_traditional(
    rho0: &DensityMatrix,
    params: &SystemParams,
    j1_value: f64,
    j2_value: f64,
    t_grid: &[f64],
) -> Result<Trajectory> {
    let generator = traditional_generator(params, j1_value, j2_value)?;
    let obs = ObservableSet::for_basis(&generator.basis);
    propagate(
        &generator.liouvillian(),
        rho0,
        t_grid,
        &obs,
        &Tolerances::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::SpectralDensity;
    use crate::master::{build_rate_tensor, InitialArm};
    use crate::system::build_dressed_basis;

    fn grid(t_max: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|i| t_max * i as f64 / n as f64).collect()
    }

    #[test]
    fn ground_state_is_stationary() {
        let basis = build_dressed_basis(&SystemParams::default()).unwrap();
        let (j1, j2) = (
            SpectralDensity::new(0.002, 5.0).unwrap(),
            SpectralDensity::new(0.001, 8.0).unwrap(),
        );
        let tensor = build_rate_tensor(&basis, &j1, &j2, true);
        let rho0 = DensityMatrix::basis_state(basis.dim(), 0);
        let traj = evolve(&rho0, &tensor, &basis.energies, &grid(500.0, 10)).unwrap();
        for rho in &traj.states {
            assert!((rho.matrix() - rho0.matrix()).camax() < 1e-15);
        }
    }

    #[test]
    fn decoupled_cavity_closed_form() {
        let params = SystemParams::resonant(0.0).unwrap();
        let basis = build_dressed_basis(&params).unwrap();
        let j1 = 0.01;
        let rho0 = DensityMatrix::from_product_state(
            &basis,
            &InitialArm::Cavity.product_vector(params.n_max),
        );
        let t = grid(200.0, 40);
        let traj = evolve_traditional(&rho0, &params, j1, 0.004, &t).unwrap();
        for (t, p) in t.iter().zip(&traj.photon) {
            assert!((p - (-2.0 * j1 * t).exp()).abs() < 1e-8);
        }
        let rho0 = DensityMatrix::from_product_state(
            &basis,
            &InitialArm::Atom.product_vector(params.n_max),
        );
        let traj = evolve_traditional(&rho0, &params, j1, 0.004, &t).unwrap();
        for (t, e) in t.iter().zip(&traj.excited) {
            assert!((e - (-2.0 * 0.004 * t).exp()).abs() < 1e-8);
        }
    }

    #[test]
    fn observables_match_stored_states() {
        let params = SystemParams::default();
        let rho0 = DensityMatrix::from_product_state(
            &build_dressed_basis(&params).unwrap(),
            &InitialArm::Cavity.product_vector(params.n_max),
        );
        let traj = evolve_traditional(&rho0, &params, 0.01, 0.005, &grid(50.0, 5)).unwrap();
        let obs = ObservableSet::for_basis(&build_dressed_basis(&params).unwrap());
        for (i, rho) in traj.states.iter().enumerate() {
            assert_eq!(traj.photon[i], rho.expectation(&obs.photon));
            assert_eq!(traj.rho_1m1m[i], rho.expectation(&obs.minus));
        }
        // |1;g> = (|1,+> - |1,->)/sqrt(2)
        assert!((traj.rho_1p1p[0] - 0.5).abs() < 1e-15);
        assert!((traj.photon[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn energy_count_is_checked() {
        let basis = build_dressed_basis(&SystemParams::default()).unwrap();
        let silent = SpectralDensity::new(0.0, 1.0).unwrap();
        let tensor = build_rate_tensor(&basis, &silent, &silent, true);
        let rho0 = DensityMatrix::basis_state(basis.dim(), 0);
        assert!(evolve(&rho0, &tensor, &basis.energies[..3], &[0.0, 1.0]).is_err());
    }
}
