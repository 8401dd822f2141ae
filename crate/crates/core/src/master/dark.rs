// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use super::DensityMatrix;
use crate::system::{excited_arm_index, ground_arm_index, DressedBasis};
use crate::{Error, Result, C64};

/// Quasi-dark state `(sqrt(J1) |0;e> - sqrt(J2) |1;g>) / sqrt(J1 + J2)`,
/// annihilated by `P = sqrt(J1) a + sqrt(J2) sigma^-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkState {
    /// Amplitude on `|0;e>`.
    pub excited_amplitude: f64,
    /// Amplitude on `|1;g>`.
    pub photon_amplitude: f64,
}

pub fn dark_state(j1_value: f64, j2_value: f64) -> Result<DarkState> {
    if j1_value < 0.0 || j2_value < 0.0 {
        return Err(Error::InvalidParameter(
            "spectral rates must be non-negative".into(),
        ));
    }
    let total = j1_value + j2_value;
    if total <= 0.0 {
        return Err(Error::UndefinedState);
    }
    let norm = total.sqrt();
    Ok(DarkState {
        excited_amplitude: j1_value.sqrt() / norm,
        photon_amplitude: -j2_value.sqrt() / norm,
    })
}

impl DarkState {
    pub fn norm_sqr(&self) -> f64 {
        self.excited_amplitude.powi(2) + self.photon_amplitude.powi(2)
    }

    /// Overlap `<1;g|D>`.
    pub fn overlap_photon(&self) -> f64 {
        self.photon_amplitude
    }

    /// Overlap `<0;e|D>`.
    pub fn overlap_excited(&self) -> f64 {
        self.excited_amplitude
    }

    /// Product-basis vector for truncation `n_max`.
    pub fn product_vector(&self, n_max: usize) -> Vec<C64> {
        let mut psi = vec![C64::new(0.0, 0.0); 2 * n_max + 1];
        psi[excited_arm_index(0)] = C64::new(self.excited_amplitude, 0.0);
        psi[ground_arm_index(1)] = C64::new(self.photon_amplitude, 0.0);
        psi
    }

    /// `|D><D|` in the working basis of `basis`.
    pub fn density(&self, basis: &DressedBasis) -> DensityMatrix {
        DensityMatrix::from_product_state(basis, &self.product_vector(basis.params.n_max))
    }
}

/// Single-excitation initial state of the uncoupled system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialArm {
    /// `|1;g>`: one photon, atom in the ground state.
    Cavity,
    /// `|0;e>`: no photon, atom excited.
    Atom,
}

impl InitialArm {
    pub fn product_vector(self, n_max: usize) -> Vec<C64> {
        let mut psi = vec![C64::new(0.0, 0.0); 2 * n_max + 1];
        let idx = match self {
            InitialArm::Cavity => ground_arm_index(1),
            InitialArm::Atom => excited_arm_index(0),
        };
        psi[idx] = C64::new(1.0, 0.0);
        psi
    }
}

/// Long-time photon number and excited-state population of the uncoupled
/// common-bath system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmExpectations {
    pub photon: f64,
    pub excited: f64,
}

/// Steady values trapped in the quasi-dark state: from `|1;g>`
/// `(J2^2, J1 J2) / (J1 + J2)^2`, from `|0;e>` `(J1 J2, J1^2) / (J1 + J2)^2`.
pub fn steady_expectations_analytic(
    j1_value: f64,
    j2_value: f64,
    initial: InitialArm,
) -> Result<ArmExpectations> {
    if j1_value < 0.0 || j2_value < 0.0 {
        return Err(Error::InvalidParameter(
            "spectral rates must be non-negative".into(),
        ));
    }
    let total = j1_value + j2_value;
    if total <= 0.0 {
        return Err(Error::UndefinedState);
    }
    let denom = total * total;
    Ok(match initial {
        InitialArm::Cavity => ArmExpectations {
            photon: j2_value * j2_value / denom,
            excited: j1_value * j2_value / denom,
        },
        InitialArm::Atom => ArmExpectations {
            photon: j1_value * j2_value / denom,
            excited: j1_value * j1_value / denom,
        },
    })
}
