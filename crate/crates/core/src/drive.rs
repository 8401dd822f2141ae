// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Weakly driven system: rotating-frame Hamiltonian, steady-state
//! transmission spectrum and its peak structure.

use rayon::prelude::*;

use crate::bath::SpectralDensity;
use crate::master::{
    build_rate_tensor, local_maxima, steady_state, Liouvillian, ObservableSet, RateTensor,
};
use crate::system::{
    build_dressed_basis, to_complex, DressedBasis, ProductOperators, SystemParams,
};
use crate::{CMatrix, Error, Result};

/// Drive amplitude and frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    pub eta: f64,
    pub omega_d: f64,
}

impl DriveParams {
    pub fn new(eta: f64, omega_d: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "drive amplitude must be non-negative, got {eta}"
            )));
        }
        if !(omega_d > 0.0) || !omega_d.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "drive frequency must be positive, got {omega_d}"
            )));
        }
        Ok(Self { eta, omega_d })
    }

    /// Cavity detuning `omega_c - omega_d`.
    pub fn delta_cavity(&self, params: &SystemParams) -> f64 {
        params.omega_c - self.omega_d
    }

    /// Atomic detuning `omega_0 - omega_d`.
    pub fn delta_atom(&self, params: &SystemParams) -> f64 {
        params.omega_0 - self.omega_d
    }

    /// Whether the drive is perturbative, `eta < 0.1 lambda`.
    pub fn is_weak(&self, lambda: f64) -> bool {
        self.eta < 0.1 * lambda
    }
}

/// `H = D1 a^dag a + (D2/2) sigma_z + lambda (a^dag sigma^- + a sigma^+) + eta (a^dag + a)`
/// expressed in the working basis of the undriven system.
pub fn rotating_frame_hamiltonian(params: &SystemParams, drive: &DriveParams) -> Result<CMatrix> {
    let basis = build_dressed_basis(params)?;
    Ok(rotating_frame_in(&basis, drive))
}

fn rotating_frame_in(basis: &DressedBasis, drive: &DriveParams) -> CMatrix {
    let params = &basis.params;
    let ops = ProductOperators::new(params.n_max);
    let h = &ops.number * drive.delta_cavity(params)
        + &ops.sigma_z * (0.5 * drive.delta_atom(params))
        + ops.exchange() * params.lambda
        + (&ops.a + ops.a.transpose()) * drive.eta;
    let h = basis.to_dressed(&h);
    // symmetrize away rounding from the basis change
    to_complex(&((&h + h.transpose()) * 0.5))
}

/// A refined local maximum of a sampled series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub position: f64,
    pub height: f64,
}

/// Peaks ordered by position, with the height ratio of the lowest-frequency
/// peak to the highest-frequency one (absent for a single peak).
#[derive(Debug, Clone, PartialEq)]
pub struct PeakMetrics {
    pub peaks: Vec<Peak>,
    pub asymmetry: Option<f64>,
}

impl PeakMetrics {
    pub fn positions(&self) -> Vec<f64> {
        self.peaks.iter().map(|p| p.position).collect()
    }

    pub fn heights(&self) -> Vec<f64> {
        self.peaks.iter().map(|p| p.height).collect()
    }
}

/// Steady-state photon number over a drive-frequency sweep.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub omega_d: Vec<f64>,
    pub photon: Vec<f64>,
    /// Grid points whose steady-state solve failed, with the reason.
    pub failures: Vec<(f64, Error)>,
    /// Peak structure; `None` when the series has no interior maximum.
    pub metrics: Option<PeakMetrics>,
}

/// Three-point local maxima, each refined by the vertex of the parabola
/// through it and its neighbours.
pub fn peak_metrics(omega: &[f64], values: &[f64]) -> Result<PeakMetrics> {
    if omega.len() != values.len() {
        return Err(Error::InvalidParameter(
            "grid and series differ in length".into(),
        ));
    }
    let peaks: Vec<Peak> = local_maxima(values)
        .into_iter()
        .map(|i| {
            refine(
                omega[i - 1],
                omega[i],
                omega[i + 1],
                values[i - 1],
                values[i],
                values[i + 1],
            )
        })
        .collect();
    if peaks.is_empty() {
        return Err(Error::NoPeak);
    }
    let asymmetry = if peaks.len() >= 2 {
        Some(peaks[0].height / peaks[peaks.len() - 1].height)
    } else {
        None
    };
    Ok(PeakMetrics { peaks, asymmetry })
}

fn refine(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64) -> Peak {
    // divided differences of the interpolating parabola
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let curvature = (d12 - d01) / (x2 - x0);
    if curvature >= 0.0 {
        return Peak {
            position: x1,
            height: y1,
        };
    }
    let slope_at_x1 = d01 + curvature * (x1 - x0);
    let shift = -slope_at_x1 / (2.0 * curvature);
    let position = (x1 + shift).clamp(x0, x2);
    let s = position - x1;
    Peak {
        position,
        height: y1 + slope_at_x1 * s + curvature * s * s,
    }
}

/// Steady-state `<a^dag a>` at every drive frequency in `grid`.
///
/// The rate tensor uses the undriven lab-frame transition frequencies and is
/// built once; the coherent part uses the rotating-frame Hamiltonian. Points
/// whose solve fails are logged and skipped.
pub fn transmission_spectrum(
    params: &SystemParams,
    j1: &SpectralDensity,
    j2: &SpectralDensity,
    eta: f64,
    grid: &[f64],
    interference: bool,
) -> Result<SpectrumResult> {
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(
            "drive grid must be strictly increasing".into(),
        ));
    }
    if let Some(&w) = grid
        .iter()
        .find(|&&w| !(w > 0.0 && w < 2.0 * params.omega_c))
    {
        return Err(Error::InvalidParameter(format!(
            "drive frequency {w} outside (0, 2 omega_c)"
        )));
    }
    let probe = DriveParams::new(eta, params.omega_c)?;
    if !probe.is_weak(params.lambda) {
        log::warn!(
            "drive amplitude {eta} is not small compared to lambda = {}",
            params.lambda
        );
    }
    let basis = build_dressed_basis(params)?;
    let tensor = build_rate_tensor(&basis, j1, j2, interference);
    let photon_op = ObservableSet::for_basis(&basis).photon;

    let solved: Vec<(f64, Result<f64>)> = grid
        .par_iter()
        .map(|&omega_d| {
            (
                omega_d,
                solve_point(&basis, &tensor, &photon_op, eta, omega_d),
            )
        })
        .collect();

    let mut result = SpectrumResult {
        omega_d: Vec::new(),
        photon: Vec::new(),
        failures: Vec::new(),
        metrics: None,
    };
    for (omega_d, outcome) in solved {
        match outcome {
            Ok(n) => {
                result.omega_d.push(omega_d);
                result.photon.push(n);
            }
            Err(e) => {
                log::warn!("steady state at omega_d = {omega_d} failed: {e}");
                result.failures.push((omega_d, e));
            }
        }
    }
    result.metrics = match peak_metrics(&result.omega_d, &result.photon) {
        Ok(m) => Some(m),
        Err(Error::NoPeak) => {
            log::warn!("spectrum has no interior maximum");
            None
        }
        Err(e) => return Err(e),
    };
    Ok(result)
}

fn solve_point(
    basis: &DressedBasis,
    tensor: &RateTensor,
    photon: &CMatrix,
    eta: f64,
    omega_d: f64,
) -> Result<f64> {
    let h = rotating_frame_in(basis, &DriveParams::new(eta, omega_d)?);
    let rho = steady_state(&Liouvillian::from_tensor(tensor, &h))?;
    Ok(rho.expectation(photon))
}
