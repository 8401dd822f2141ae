// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Flat `section.key = value` configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use jcbath::bath::SpectralDensity;
use jcbath::master::InitialArm;
use jcbath::system::SystemParams;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    CommonBath,
    Traditional,
    NoInterference,
    Exact,
    Iteration,
}

impl Engine {
    pub const ALL: [Engine; 5] = [
        Engine::CommonBath,
        Engine::Traditional,
        Engine::NoInterference,
        Engine::Exact,
        Engine::Iteration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::CommonBath => "common-bath",
            Engine::Traditional => "traditional",
            Engine::NoInterference => "no-interference",
            Engine::Exact => "exact",
            Engine::Iteration => "iteration",
        }
    }
}

impl FromStr for Engine {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| CliError::Config(format!("unknown engine '{s}'")))
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fully resolved run configuration. Defaults are the published parameter
/// set: `omega_c = omega_0 = 1`, `lambda = 0.1`, `alpha = (0.002, 0.001)`,
/// cutoffs `(5, 8)`, `eta = 0.005`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub omega_c: f64,
    pub omega_0: f64,
    pub lambda: f64,
    pub n_max: usize,
    pub alpha1: f64,
    pub omega_cut1: f64,
    pub alpha2: f64,
    pub omega_cut2: f64,
    pub eta: f64,
    pub omega_d_min: f64,
    pub omega_d_max: f64,
    pub omega_d_points: usize,
    pub delta_omega: f64,
    pub oracle_omega_max: f64,
    pub t_max: f64,
    pub dt: f64,
    pub quasidark_t_max: f64,
    pub initial: InitialArm,
    pub interference: bool,
    pub engines: Vec<Engine>,
    pub output: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            omega_c: 1.0,
            omega_0: 1.0,
            lambda: 0.1,
            n_max: 3,
            alpha1: 0.002,
            omega_cut1: 5.0,
            alpha2: 0.001,
            omega_cut2: 8.0,
            eta: 0.005,
            omega_d_min: 0.8,
            omega_d_max: 1.2,
            omega_d_points: 401,
            delta_omega: 5e-4,
            oracle_omega_max: 4.0,
            t_max: 200.0,
            dt: 0.5,
            quasidark_t_max: 2000.0,
            initial: InitialArm::Cavity,
            interference: true,
            engines: vec![
                Engine::CommonBath,
                Engine::Traditional,
                Engine::NoInterference,
                Engine::Exact,
            ],
            output: PathBuf::from("out"),
        }
    }
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse '{value}'")))
}

fn flag(key: &str, value: &str) -> Result<bool, CliError> {
    match value.trim() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        other => Err(CliError::Config(format!(
            "{key}: expected a boolean, got '{other}'"
        ))),
    }
}

impl ExperimentConfig {
    /// Parse a configuration file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "line {}: expected 'section.key = value'",
                    lineno + 1
                ))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Apply a `section.key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("override '{assignment}' is not key=value")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "system.omega_c" => self.omega_c = number(key, value)?,
            "system.omega_0" => self.omega_0 = number(key, value)?,
            "system.lambda" => self.lambda = number(key, value)?,
            "system.n_max" => self.n_max = number(key, value)?,
            "bath.alpha1" => self.alpha1 = number(key, value)?,
            "bath.omega_cut1" => self.omega_cut1 = number(key, value)?,
            "bath.alpha2" => self.alpha2 = number(key, value)?,
            "bath.omega_cut2" => self.omega_cut2 = number(key, value)?,
            "drive.eta" => self.eta = number(key, value)?,
            "drive.omega_min" => self.omega_d_min = number(key, value)?,
            "drive.omega_max" => self.omega_d_max = number(key, value)?,
            "drive.points" => self.omega_d_points = number(key, value)?,
            "oracle.delta_omega" => self.delta_omega = number(key, value)?,
            "oracle.omega_max" => self.oracle_omega_max = number(key, value)?,
            "run.t_max" => self.t_max = number(key, value)?,
            "run.dt" => self.dt = number(key, value)?,
            "quasidark.t_max" => self.quasidark_t_max = number(key, value)?,
            "run.initial" => {
                self.initial = match value {
                    "cavity" => InitialArm::Cavity,
                    "atom" => InitialArm::Atom,
                    other => {
                        return Err(CliError::Config(format!(
                            "{key}: expected 'cavity' or 'atom', got '{other}'"
                        )))
                    }
                }
            }
            "run.interference" => self.interference = flag(key, value)?,
            "run.engines" => {
                self.engines = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(str::parse)
                    .collect::<Result<_, _>>()?;
                if self.engines.is_empty() {
                    return Err(CliError::Config(format!("{key}: no engines listed")));
                }
            }
            "run.output" => self.output = PathBuf::from(value),
            other => return Err(CliError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Every key with its resolved value, in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let engines: Vec<&str> = self.engines.iter().map(|e| e.name()).collect();
        vec![
            ("system.omega_c", self.omega_c.to_string()),
            ("system.omega_0", self.omega_0.to_string()),
            ("system.lambda", self.lambda.to_string()),
            ("system.n_max", self.n_max.to_string()),
            ("bath.alpha1", self.alpha1.to_string()),
            ("bath.omega_cut1", self.omega_cut1.to_string()),
            ("bath.alpha2", self.alpha2.to_string()),
            ("bath.omega_cut2", self.omega_cut2.to_string()),
            ("drive.eta", self.eta.to_string()),
            ("drive.omega_min", self.omega_d_min.to_string()),
            ("drive.omega_max", self.omega_d_max.to_string()),
            ("drive.points", self.omega_d_points.to_string()),
            ("oracle.delta_omega", self.delta_omega.to_string()),
            ("oracle.omega_max", self.oracle_omega_max.to_string()),
            ("run.t_max", self.t_max.to_string()),
            ("run.dt", self.dt.to_string()),
            ("quasidark.t_max", self.quasidark_t_max.to_string()),
            (
                "run.initial",
                if self.initial == InitialArm::Cavity {
                    "cavity"
                } else {
                    "atom"
                }
                .to_string(),
            ),
            ("run.interference", self.interference.to_string()),
            ("run.engines", engines.join(",")),
            ("run.output", self.output.display().to_string()),
        ]
    }

    /// Single-line rendering of [`ExperimentConfig::entries`].
    pub fn echo(&self) -> String {
        self.entries()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn system(&self) -> Result<SystemParams, CliError> {
        Ok(SystemParams::new(
            self.omega_c,
            self.omega_0,
            self.lambda,
            self.n_max,
        )?)
    }

    pub fn spectra(&self) -> Result<(SpectralDensity, SpectralDensity), CliError> {
        Ok((
            SpectralDensity::new(self.alpha1, self.omega_cut1)?,
            SpectralDensity::new(self.alpha2, self.omega_cut2)?,
        ))
    }

    /// `0, dt, 2 dt, ...` up to `t_max`; a single point when `t_max = 0`.
    pub fn time_grid(&self, t_max: f64) -> Result<Vec<f64>, CliError> {
        if !(t_max >= 0.0) || !(self.dt > 0.0) {
            return Err(CliError::Config(format!(
                "need t_max >= 0 and dt > 0, got {t_max} and {}",
                self.dt
            )));
        }
        let n = (t_max / self.dt).round() as usize;
        let mut t: Vec<f64> = (0..=n).map(|i| i as f64 * self.dt).collect();
        if let Some(last) = t.last_mut() {
            if n > 0 {
                *last = t_max;
            }
        }
        Ok(t)
    }

    pub fn drive_grid(&self) -> Result<Vec<f64>, CliError> {
        if self.omega_d_points < 2 || !(self.omega_d_max > self.omega_d_min) {
            return Err(CliError::Config(
                "drive grid needs at least two points and omega_max > omega_min".into(),
            ));
        }
        let span = self.omega_d_max - self.omega_d_min;
        let last = (self.omega_d_points - 1) as f64;
        Ok((0..self.omega_d_points)
            .map(|i| self.omega_d_min + span * i as f64 / last)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_published_parameters() {
        let c = ExperimentConfig::default();
        assert_eq!((c.omega_c, c.omega_0, c.lambda), (1.0, 1.0, 0.1));
        assert_eq!(
            (c.alpha1, c.omega_cut1, c.alpha2, c.omega_cut2),
            (0.002, 5.0, 0.001, 8.0)
        );
        assert_eq!(c.eta, 0.005);
    }

    #[test]
    fn parses_sections_comments_and_overrides() {
        let mut c = ExperimentConfig::parse(
            "# comment\nsystem.lambda = 0.2  # inline\n\nrun.engines = exact, iteration\n",
        )
        .unwrap();
        assert_eq!(c.lambda, 0.2);
        assert_eq!(c.engines, vec![Engine::Exact, Engine::Iteration]);
        c.apply_override("run.initial=atom").unwrap();
        assert_eq!(c.initial, InitialArm::Atom);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExperimentConfig::parse("system.lambda 0.2").is_err());
        assert!(ExperimentConfig::parse("system.colour = red").is_err());
        assert!(ExperimentConfig::parse("system.n_max = 2.5").is_err());
        assert!(ExperimentConfig::parse("run.engines = warp").is_err());
    }

    #[test]
    fn echo_round_trips() {
        let mut c = ExperimentConfig::default();
        c.lambda = 0.05;
        c.engines = vec![Engine::Iteration];
        let text: String = c
            .entries()
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), c);
    }

    #[test]
    fn grids() {
        let mut c = ExperimentConfig::default();
        assert_eq!(c.time_grid(0.0).unwrap(), vec![0.0]);
        c.dt = 0.25;
        assert_eq!(c.time_grid(1.0).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let d = c.drive_grid().unwrap();
        assert_eq!((d.len(), d[0], d[400]), (401, 0.8, 1.2));
    }
}
