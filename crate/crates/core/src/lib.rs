// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Jaynes-Cummings atom-cavity system sharing a common zero-temperature bath.
//!
//! The crate builds the dressed eigenbasis of the resonant Jaynes-Cummings
//! Hamiltonian, the four-index dissipative rate tensor in which the decay
//! amplitudes of the cavity and the atom interfere, and propagates or solves
//! the resulting master equation. Two independent checks ship alongside:
//! exact single-excitation evolution with an explicitly discretized Ohmic
//! bath, and the closed-form iteration solution for the one-excitation
//! dressed populations.
//!
//! Module map:
//! - [`system`]: Hamiltonian, dressed basis, coupled-oscillator spectrum.
//! - [`bath`]: Ohmic spectral densities and bath discretization.
//! - [`master`]: rate tensor, generators, propagation, steady states.
//! - [`drive`]: driven rotating-frame problem and transmission spectrum.
//! - [`oracle`]: exact bath evolution and the iteration solution.
//! - [`integrate`]: adaptive Dormand-Prince integrator used by [`master`].

pub mod bath;
pub mod drive;
pub mod error;
pub mod integrate;
pub mod master;
pub mod oracle;
pub mod system;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
