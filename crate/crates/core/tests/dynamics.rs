// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use jcbath::bath::SpectralDensity;
use jcbath::drive::transmission_spectrum;
use jcbath::master::{
    build_rate_tensor, evolve, evolve_traditional, kernel_dimension, steady_state, DensityMatrix,
    InitialArm, Liouvillian,
};
use jcbath::system::{build_dressed_basis, SystemParams};

fn spectra() -> (SpectralDensity, SpectralDensity) {
    (
        SpectralDensity::new(0.002, 5.0).unwrap(),
        SpectralDensity::new(0.001, 8.0).unwrap(),
    )
}

fn grid(t_max: f64, dt: f64) -> Vec<f64> {
    let n = (t_max / dt).round() as usize;
    (0..=n).map(|i| i as f64 * dt).collect()
}

#[test]
fn traditional_relaxes_to_ground_state() {
    let params = SystemParams::default();
    let basis = build_dressed_basis(&params).unwrap();
    let (j1, j2) = spectra();
    let rho0 =
        DensityMatrix::from_product_state(&basis, &InitialArm::Cavity.product_vector(params.n_max));
    let traj = evolve_traditional(
        &rho0,
        &params,
        j1.eval(1.0),
        j2.eval(1.0),
        &grid(3000.0, 50.0),
    )
    .unwrap();
    assert!((traj.last().unwrap().get(0, 0).re - 1.0).abs() < 1e-6);
}

#[test]
fn common_bath_without_atom_channel_does_not_trap() {
    let params = SystemParams::resonant(0.0).unwrap();
    let basis = build_dressed_basis(&params).unwrap();
    let j1 = SpectralDensity::new(0.002, 5.0).unwrap();
    let silent = SpectralDensity::new(0.0, 8.0).unwrap();
    let tensor = build_rate_tensor(&basis, &j1, &silent, true);
    let rho0 =
        DensityMatrix::from_product_state(&basis, &InitialArm::Cavity.product_vector(params.n_max));
    let traj = evolve(&rho0, &tensor, &basis.energies, &grid(2000.0, 20.0)).unwrap();
    assert!(*traj.photon.last().unwrap() < 1e-12);
}

#[test]
fn driven_steady_state_is_unique() {
    use jcbath::drive::{rotating_frame_hamiltonian, DriveParams};
    let params = SystemParams::default();
    let basis = build_dressed_basis(&params).unwrap();
    let (j1, j2) = spectra();
    let tensor = build_rate_tensor(&basis, &j1, &j2, true);
    let h = rotating_frame_hamiltonian(&params, &DriveParams::new(0.005, 1.1).unwrap()).unwrap();
    let l = Liouvillian::from_tensor(&tensor, &h);
    assert_eq!(kernel_dimension(&l), 1);
    let rho = steady_state(&l).unwrap();
    let residual = l.apply_to(&rho).camax();
    assert!(residual < 1e-10, "{residual}");
    assert!(rho.get(0, 0).re < 1.0 && rho.get(0, 0).re > 0.9);
}

#[test]
fn peaks_follow_the_coupling() {
    let (j1, j2) = spectra();
    let omega_d: Vec<f64> = (0..=300).map(|i| 0.7 + 0.6 * i as f64 / 300.0).collect();
    let step = omega_d[1] - omega_d[0];
    for lambda in [0.05, 0.1, 0.2] {
        let params = SystemParams::resonant(lambda).unwrap();
        let spec =
            transmission_spectrum(&params, &j1, &j2, 0.1 * lambda * 0.5, &omega_d, false).unwrap();
        let positions = spec.metrics.unwrap().positions();
        for target in [1.0 - lambda, 1.0 + lambda] {
            assert!(
                positions.iter().any(|p| (p - target).abs() <= step),
                "lambda {lambda}: {positions:?}"
            );
        }
    }
}

#[test]
fn off_peak_response_scales_quadratically_in_drive() {
    let params = SystemParams::default();
    let (j1, j2) = spectra();
    // omega_d = 1 sits on a deep interference minimum where higher orders
    // in eta take over early, so probe the flanks
    let probe = [0.8, 0.85, 1.15, 1.2];
    let low = transmission_spectrum(&params, &j1, &j2, 1e-4, &probe, true).unwrap();
    let high = transmission_spectrum(&params, &j1, &j2, 1e-3, &probe, true).unwrap();
    for (a, b) in low.photon.iter().zip(&high.photon) {
        let exponent = (b / a).ln() / 10f64.ln();
        assert!((exponent - 2.0).abs() < 0.1, "{exponent}");
    }
}

#[test]
fn vanishing_drive_empties_the_cavity() {
    let params = SystemParams::default();
    let (j1, j2) = spectra();
    let omega_d = [0.85, 0.9, 0.95, 1.05, 1.1, 1.15];
    let spec = transmission_spectrum(&params, &j1, &j2, 0.0, &omega_d, true).unwrap();
    assert!(spec.photon.iter().all(|n| n.abs() < 1e-12));
}
