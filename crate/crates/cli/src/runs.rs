// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Experiment orchestration: one function per subcommand, each returning the
//! files it wrote.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use jcbath::bath::discretize;
use jcbath::drive::transmission_spectrum;
use jcbath::master::{
    build_rate_tensor, evolve, evolve_traditional, steady_after, steady_expectations_analytic,
    DensityMatrix, InitialArm,
};
use jcbath::oracle::{
    exact_evolve, iteration_solution, OneExcitationInitial, SingleExcitationState,
};
use jcbath::system::{build_dressed_basis, SystemParams};

use crate::config::{Engine, ExperimentConfig};
use crate::csv::{num, write_columns, write_rows};
use crate::error::CliError;

/// Named columns ready to be written.
struct Table {
    header: Vec<&'static str>,
    columns: Vec<Vec<f64>>,
}

impl Table {
    fn write(&self, path: &Path, echo: &str) -> Result<PathBuf, CliError> {
        let cols: Vec<&[f64]> = self.columns.iter().map(Vec::as_slice).collect();
        write_columns(path, echo, &self.header, &cols)
    }
}

fn arm_name(arm: InitialArm) -> &'static str {
    match arm {
        InitialArm::Cavity => "cavity",
        InitialArm::Atom => "atom",
    }
}

fn initial_density(params: &SystemParams, arm: InitialArm) -> Result<DensityMatrix, CliError> {
    let basis = build_dressed_basis(params)?;
    Ok(DensityMatrix::from_product_state(
        &basis,
        &arm.product_vector(params.n_max),
    ))
}

fn master_table(
    cfg: &ExperimentConfig,
    params: &SystemParams,
    interference: bool,
    arm: InitialArm,
    t: &[f64],
) -> Result<Table, CliError> {
    let (j1, j2) = cfg.spectra()?;
    let basis = build_dressed_basis(params)?;
    let tensor = build_rate_tensor(&basis, &j1, &j2, interference);
    let traj = evolve(&initial_density(params, arm)?, &tensor, &basis.energies, t)?;
    Ok(Table {
        header: vec!["t", "photon", "excited", "rho_1p1p", "rho_1m1m"],
        columns: vec![
            t.to_vec(),
            traj.photon,
            traj.excited,
            traj.rho_1p1p,
            traj.rho_1m1m,
        ],
    })
}

fn engine_table(cfg: &ExperimentConfig, engine: Engine, t: &[f64]) -> Result<Table, CliError> {
    let params = cfg.system()?;
    let (j1, j2) = cfg.spectra()?;
    match engine {
        Engine::CommonBath => master_table(cfg, &params, cfg.interference, cfg.initial, t),
        Engine::NoInterference => master_table(cfg, &params, false, cfg.initial, t),
        Engine::Traditional => {
            let rho0 = initial_density(&params, cfg.initial)?;
            let traj = evolve_traditional(
                &rho0,
                &params,
                j1.eval(params.omega_c),
                j2.eval(params.omega_0),
                t,
            )?;
            Ok(Table {
                header: vec!["t", "photon", "excited", "rho_1p1p", "rho_1m1m"],
                columns: vec![
                    t.to_vec(),
                    traj.photon,
                    traj.excited,
                    traj.rho_1p1p,
                    traj.rho_1m1m,
                ],
            })
        }
        Engine::Exact => {
            let bath = discretize(&j1, &j2, cfg.delta_omega, cfg.oracle_omega_max)?;
            let psi0 = match cfg.initial {
                InitialArm::Cavity => SingleExcitationState::cavity(bath.len()),
                InitialArm::Atom => SingleExcitationState::atom(bath.len()),
            };
            let traj = exact_evolve(&params, &bath, &psi0, t)?;
            Ok(Table {
                header: vec!["t", "photon", "excited", "rho_1p1p", "rho_1m1m"],
                columns: vec![t.to_vec(), traj.photon, traj.excited, traj.plus, traj.minus],
            })
        }
        Engine::Iteration => {
            let basis = build_dressed_basis(&params)?;
            let tensor = build_rate_tensor(&basis, &j1, &j2, cfg.interference);
            let init = OneExcitationInitial::from_density(
                &initial_density(&params, cfg.initial)?,
                &tensor,
            )?;
            let series = iteration_solution(&tensor, &basis.energies, &init, t)?;
            Ok(Table {
                header: vec!["t", "rho_1p1p", "rho_1m1m"],
                columns: vec![t.to_vec(), series.rho_1p1p, series.rho_1m1m],
            })
        }
    }
}

fn prepare_output(cfg: &ExperimentConfig) -> Result<(), CliError> {
    std::fs::create_dir_all(&cfg.output).map_err(|e| CliError::io(&cfg.output, e))
}

/// Time evolution from the configured initial state, one CSV per engine.
pub fn run_decay(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    prepare_output(cfg)?;
    let t = cfg.time_grid(cfg.t_max)?;
    let echo = cfg.echo();
    let tables: Vec<(Engine, Result<Table, CliError>)> = cfg
        .engines
        .par_iter()
        .map(|&engine| (engine, engine_table(cfg, engine, &t)))
        .collect();
    let mut written = Vec::new();
    for (engine, table) in tables {
        let path = cfg.output.join(format!("decay_{}.csv", engine.name()));
        written.push(table?.write(&path, &echo)?);
    }
    Ok(written)
}

/// Uncoupled (`lambda = 0`) common-bath trapping from both single-excitation
/// arms, with a comparison to the analytic long-time values.
pub fn run_quasidark(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    prepare_output(cfg)?;
    if cfg.lambda != 0.0 {
        log::warn!(
            "quasidark runs at lambda = 0; ignoring system.lambda = {}",
            cfg.lambda
        );
    }
    let mut resolved = cfg.clone();
    resolved.lambda = 0.0;
    let params = resolved.system()?;
    let (j1, j2) = resolved.spectra()?;
    let t = resolved.time_grid(resolved.quasidark_t_max)?;
    let echo = resolved.echo();

    let mut written = Vec::new();
    let mut summary = Vec::new();
    for arm in [InitialArm::Cavity, InitialArm::Atom] {
        let table = master_table(&resolved, &params, resolved.interference, arm, &t)?;
        written.push(
            table.write(
                &resolved
                    .output
                    .join(format!("quasidark_{}.csv", arm_name(arm))),
                &echo,
            )?,
        );
        let expected =
            steady_expectations_analytic(j1.eval(params.omega_c), j2.eval(params.omega_0), arm)?;
        let (photon, excited) = (&table.columns[1], &table.columns[2]);
        let settled = steady_after(&t, &[photon, excited], 100.0, 1e-6);
        let (p, e) = (*photon.last().unwrap(), *excited.last().unwrap());
        println!(
            "quasidark initial={} photon={p:.6} analytic={:.6} deviation={:.3e} excited={e:.6} analytic={:.6} deviation={:.3e}",
            arm_name(arm),
            expected.photon,
            (p - expected.photon).abs(),
            expected.excited,
            (e - expected.excited).abs()
        );
        summary.push(vec![
            arm_name(arm).to_string(),
            num(p),
            num(expected.photon),
            num((p - expected.photon).abs()),
            num(e),
            num(expected.excited),
            num((e - expected.excited).abs()),
            settled.map_or_else(|| "nan".to_string(), num),
        ]);
    }
    written.push(write_rows(
        &resolved.output.join("quasidark_summary.csv"),
        &echo,
        &[
            "initial",
            "photon",
            "photon_analytic",
            "photon_deviation",
            "excited",
            "excited_analytic",
            "excited_deviation",
            "steady_after",
        ],
        &summary,
    )?);
    Ok(written)
}

/// Driven steady-state photon number over the drive grid, with and without
/// interference, plus the peak structure of each.
pub fn run_spectrum(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    if !(cfg.eta > 0.0) {
        return Err(CliError::Config(format!(
            "spectrum needs drive.eta > 0, got {}",
            cfg.eta
        )));
    }
    prepare_output(cfg)?;
    let params = cfg.system()?;
    let (j1, j2) = cfg.spectra()?;
    let grid = cfg.drive_grid()?;
    let echo = cfg.echo();
    let variants: &[bool] = if cfg.interference {
        &[true, false]
    } else {
        &[false]
    };

    let mut written = Vec::new();
    let mut peaks = Vec::new();
    for &interference in variants {
        let label = if interference { "on" } else { "off" };
        let result = transmission_spectrum(&params, &j1, &j2, cfg.eta, &grid, interference)?;
        written.push(write_columns(
            &cfg.output.join(format!("spectrum_{label}.csv")),
            &echo,
            &["omega_d", "photon"],
            &[&result.omega_d, &result.photon],
        )?);
        match &result.metrics {
            Some(m) => {
                for p in &m.peaks {
                    peaks.push(vec![label.to_string(), num(p.position), num(p.height)]);
                }
                let ratio = m.asymmetry.map_or_else(|| "absent".to_string(), |r| format!("{r:.6}"));
                println!("spectrum interference={label} peaks={} asymmetry={ratio}", m.peaks.len());
            }
            None => eprintln!("jcbath: warning: no-peak: spectrum with interference {label} has no interior maximum"),
        }
    }
    written.push(write_rows(
        &cfg.output.join("spectrum_peaks.csv"),
        &echo,
        &["interference", "position", "height"],
        &peaks,
    )?);
    Ok(written)
}

/// Master equation against the exact bath evolution and, for a coupled
/// system, against the iteration solution.
pub fn run_oracle_compare(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    prepare_output(cfg)?;
    let params = cfg.system()?;
    let t = cfg.time_grid(cfg.t_max)?;
    let echo = cfg.echo();

    let (master, exact) = rayon::join(
        || master_table(cfg, &params, cfg.interference, cfg.initial, &t),
        || engine_table(cfg, Engine::Exact, &t),
    );
    let (master, exact) = (master?, exact?);
    let deviation: Vec<f64> = exact.columns[1]
        .iter()
        .zip(&master.columns[1])
        .map(|(a, b)| (a - b).abs())
        .collect();
    let worst = deviation.iter().cloned().fold(0.0, f64::max);
    println!("oracle exact-vs-master max_photon_deviation={worst:.6e}");
    let mut written = vec![write_columns(
        &cfg.output.join("oracle_exact.csv"),
        &echo,
        &["t", "photon_exact", "photon_master", "abs_deviation"],
        &[&t, &exact.columns[1], &master.columns[1], &deviation],
    )?];

    if params.lambda > 0.0 {
        let iteration = engine_table(cfg, Engine::Iteration, &t)?;
        let dev = |a: &[f64], b: &[f64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
        };
        println!(
            "oracle iteration-vs-master max_rho_1p1p_deviation={:.6e} max_rho_1m1m_deviation={:.6e}",
            dev(&iteration.columns[1], &master.columns[3]),
            dev(&iteration.columns[2], &master.columns[4])
        );
        written.push(write_columns(
            &cfg.output.join("oracle_iteration.csv"),
            &echo,
            &[
                "t",
                "rho_1p1p_iteration",
                "rho_1p1p_master",
                "rho_1m1m_iteration",
                "rho_1m1m_master",
            ],
            &[
                &t,
                &iteration.columns[1],
                &master.columns[3],
                &iteration.columns[2],
                &master.columns[4],
            ],
        )?);
    } else {
        log::warn!("iteration solution needs lambda > 0; skipped");
    }
    Ok(written)
}
