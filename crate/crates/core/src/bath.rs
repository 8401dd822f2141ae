// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Ohmic spectral densities and their discretization into explicit modes.

use crate::{Error, Result};

/// Ohmic spectral density `J(w) = 2 pi alpha w exp(-w / omega_cutoff)`.
///
/// The bath is at zero temperature: `J` vanishes identically for `w <= 0`,
/// so upward transitions never receive a rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    pub alpha: f64,
    pub omega_cutoff: f64,
}

impl SpectralDensity {
    pub fn new(alpha: f64, omega_cutoff: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be non-negative, got {alpha}"
            )));
        }
        if !(omega_cutoff > 0.0 && omega_cutoff.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega_cutoff must be positive, got {omega_cutoff}"
            )));
        }
        Ok(Self {
            alpha,
            omega_cutoff,
        })
    }

    pub fn eval(&self, omega: f64) -> f64 {
        ohmic_j(self, omega)
    }

    /// Same shape with `alpha` multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            alpha: self.alpha * factor,
            omega_cutoff: self.omega_cutoff,
        }
    }
}

pub fn ohmic_j(density: &SpectralDensity, omega: f64) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    2.0 * std::f64::consts::PI * density.alpha * omega * (-omega / density.omega_cutoff).exp()
}

/// One bath mode with its cavity and atom couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    pub omega: f64,
    pub kappa: f64,
    pub xi: f64,
}

/// Midpoint discretization of two spectral densities over a common set of
/// modes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedBath {
    pub modes: Vec<BathMode>,
    pub delta_omega: f64,
    pub omega_max: f64,
}

impl DiscretizedBath {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Poincare recurrence time of the evenly spaced grid.
    pub fn recurrence_time(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.delta_omega
    }

    /// Couplings multiplied by `factor`, equivalent to scaling both
    /// spectral densities by `factor^2`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            modes: self
                .modes
                .iter()
                .map(|m| BathMode {
                    omega: m.omega,
                    kappa: m.kappa * factor,
                    xi: m.xi * factor,
                })
                .collect(),
            ..*self
        }
    }
}

/// Modes at `(i + 1/2) delta_omega` below `omega_max`, with
/// `kappa_i = sqrt(J1(w_i) dw / pi)` and `xi_i = sqrt(J2(w_i) dw / pi)`.
pub fn discretize(
    j1: &SpectralDensity,
    j2: &SpectralDensity,
    delta_omega: f64,
    omega_max: f64,
) -> Result<DiscretizedBath> {
    if !(delta_omega > 0.0) || !(omega_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta_omega = {delta_omega} and omega_max = {omega_max} must be positive"
        )));
    }
    if omega_max < delta_omega {
        return Err(Error::EmptyGrid {
            delta_omega,
            omega_max,
        });
    }
    let count = (omega_max / delta_omega * (1.0 + 1e-12)).floor() as usize;
    let weight = delta_omega / std::f64::consts::PI;
    let modes = (0..count)
        .map(|i| {
            let omega = (i as f64 + 0.5) * delta_omega;
            BathMode {
                omega,
                kappa: (ohmic_j(j1, omega) * weight).sqrt(),
                xi: (ohmic_j(j2, omega) * weight).sqrt(),
            }
        })
        .collect();
    Ok(DiscretizedBath {
        modes,
        delta_omega,
        omega_max,
    })
}
