// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The dressed-state formulas only hold at resonance.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("{what} = {value} out of range (maximum {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("coupled oscillators unstable: lambda = {lambda} >= omega = {omega}")]
    UnstableConfiguration { lambda: f64, omega: f64 },

    #[error("empty frequency grid: omega_max = {omega_max} < delta_omega = {delta_omega}")]
    EmptyGrid { delta_omega: f64, omega_max: f64 },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("dark state undefined: both spectral rates vanish")]
    UndefinedState,

    #[error("steady state not unique: generator kernel has dimension {kernel_dim}")]
    DegenerateSteadyState { kernel_dim: usize },

    #[error("steady-state solve failed: {0}")]
    SteadyStateSolve(String),

    #[error("integration failed at t = {time}: {reason}")]
    Integration { time: f64, reason: String },

    #[error("density matrix has eigenvalue {min_eigenvalue:.3e} at t = {time}")]
    NotPositive { time: f64, min_eigenvalue: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("no interior maximum in series")]
    NoPeak,
}

impl Error {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::UnsupportedConfiguration(_) => "unsupported-configuration",
            Error::OutOfRange { .. } => "out-of-range",
            Error::UnstableConfiguration { .. } => "unstable-configuration",
            Error::EmptyGrid { .. } => "empty-grid",
            Error::ContractViolation(_) => "contract-violation",
            Error::UndefinedState => "undefined-state",
            Error::DegenerateSteadyState { .. } => "degenerate-steady-state",
            Error::SteadyStateSolve(_) => "steady-state-solve",
            Error::Integration { .. } => "integration",
            Error::NotPositive { .. } => "not-positive",
            Error::InvalidState(_) => "invalid-state",
            Error::NoPeak => "no-peak",
        }
    }
}
