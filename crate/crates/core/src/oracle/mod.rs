// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent checks on the master equation.
//!
//! [`exact_evolve`] propagates the atom, the cavity and an explicitly
//! discretized bath in the single-excitation sector without any Markov or
//! Born approximation. [`iteration_solution`] evaluates the closed-form
//! first-order solution for the one-excitation dressed populations.

mod exact;
mod iteration;

pub use exact::{exact_evolve, ExactTrajectory, SingleExcitationState};
pub use iteration::{iteration_solution, IterationSeries, OneExcitationInitial};
