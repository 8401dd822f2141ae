// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, SymmetricEigen};

use crate::bath::DiscretizedBath;
use crate::system::SystemParams;
use crate::{Error, Result, C64};

const NORM_TOL: f64 = 1e-12;
/// Krylov subspace dimension per propagation step.
const KRYLOV_DIM: usize = 30;
/// Local error target per Krylov step.
const STEP_TOL: f64 = 1e-14;

/// Amplitudes of a single excitation shared among cavity, atom and bath.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleExcitationState {
    /// `|1;g> (x) |vac>`.
    pub c_cav: C64,
    /// `|0;e> (x) |vac>`.
    pub c_atom: C64,
    /// `|0;g> (x) |1_i>`.
    pub modes: Vec<C64>,
}

impl SingleExcitationState {
    pub fn new(c_cav: C64, c_atom: C64, modes: Vec<C64>) -> Result<Self> {
        let s = Self {
            c_cav,
            c_atom,
            modes,
        };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "single-excitation state has norm {norm}"
            )));
        }
        Ok(s)
    }

    /// Photon in the cavity, bath empty.
    pub fn cavity(n_modes: usize) -> Self {
        Self {
            c_cav: C64::new(1.0, 0.0),
            c_atom: C64::new(0.0, 0.0),
            modes: vec![C64::new(0.0, 0.0); n_modes],
        }
    }

    /// Excited atom, bath empty.
    pub fn atom(n_modes: usize) -> Self {
        Self {
            c_cav: C64::new(0.0, 0.0),
            c_atom: C64::new(1.0, 0.0),
            modes: vec![C64::new(0.0, 0.0); n_modes],
        }
    }

    /// Dressed state `(sign |1;g> + |0;e>) / sqrt(2)` with `sign = +-1`.
    pub fn dressed(sign: f64, n_modes: usize) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            c_cav: C64::new(sign.signum() * h, 0.0),
            c_atom: C64::new(h, 0.0),
            modes: vec![C64::new(0.0, 0.0); n_modes],
        }
    }

    pub fn norm(&self) -> f64 {
        (self.c_cav.norm_sqr()
            + self.c_atom.norm_sqr()
            + self.modes.iter().map(|c| c.norm_sqr()).sum::<f64>())
        .sqrt()
    }

    fn to_vec(&self) -> Vec<C64> {
        let mut v = Vec::with_capacity(self.modes.len() + 2);
        v.push(self.c_cav);
        v.push(self.c_atom);
        v.extend_from_slice(&self.modes);
        v
    }

    fn from_vec(v: Vec<C64>) -> Self {
        Self {
            c_cav: v[0],
            c_atom: v[1],
            modes: v[2..].to_vec(),
        }
    }
}

/// Observable series from exact evolution.
#[derive(Debug, Clone)]
pub struct ExactTrajectory {
    pub times: Vec<f64>,
    /// `|c_cav|^2`.
    pub photon: Vec<f64>,
    /// `|c_atom|^2`.
    pub excited: Vec<f64>,
    /// Population of `|1,+> (x) |vac>`.
    pub plus: Vec<f64>,
    /// Population of `|1,-> (x) |vac>`.
    pub minus: Vec<f64>,
    pub norm: Vec<f64>,
    /// Set when the window exceeds the recurrence time of the bath grid.
    pub recurrence_warning: bool,
    pub final_state: SingleExcitationState,
}

/// Single-excitation Hamiltonian: a 2x2 head block bordered by diagonal bath
/// energies, applied in O(M).
struct Arrowhead<'a> {
    params: &'a SystemParams,
    bath: &'a DiscretizedBath,
}

impl Arrowhead<'_> {
    fn apply(&self, x: &[C64], y: &mut [C64]) {
        let p = self.params;
        let mut y0 = x[0] * p.omega_c + x[1] * p.lambda;
        let mut y1 = x[0] * p.lambda + x[1] * p.omega_0;
        for (i, m) in self.bath.modes.iter().enumerate() {
            let xi = x[i + 2];
            y0 += xi * m.kappa;
            y1 += xi * m.xi;
            y[i + 2] = x[0] * m.kappa + x[1] * m.xi + xi * m.omega;
        }
        y[0] = y0;
        y[1] = y1;
    }
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal Lanczos basis of the Krylov space of `psi`, with the
/// tridiagonal projection.
struct Krylov {
    basis: Vec<Vec<C64>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    /// Norm of the residual vector; zero after an invariant subspace is found.
    residual: f64,
    scale: f64,
}

impl Krylov {
    fn build(h: &Arrowhead<'_>, psi: &[C64]) -> Self {
        let scale = norm(psi);
        let mut basis = vec![psi.iter().map(|z| z / scale).collect::<Vec<_>>()];
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        let mut w = vec![C64::new(0.0, 0.0); psi.len()];
        let mut residual = 0.0;
        for j in 0..KRYLOV_DIM {
            h.apply(&basis[j], &mut w);
            alpha.push(dot(&basis[j], &w).re);
            // full reorthogonalization, applied twice
            for _ in 0..2 {
                for v in &basis {
                    let proj = dot(v, &w);
                    for (wi, vi) in w.iter_mut().zip(v) {
                        *wi -= proj * vi;
                    }
                }
            }
            residual = norm(&w);
            if residual < 1e-12 || j + 1 == KRYLOV_DIM {
                break;
            }
            beta.push(residual);
            basis.push(w.iter().map(|z| z / residual).collect());
        }
        if residual < 1e-12 {
            residual = 0.0;
        }
        Self {
            basis,
            alpha,
            beta,
            residual,
            scale,
        }
    }

    /// Coefficients of `exp(-i tau T) e_1` and the a-posteriori error estimate.
    fn coefficients(&self, eig: &SymmetricEigen<f64, nalgebra::Dyn>, tau: f64) -> (Vec<C64>, f64) {
        let m = self.alpha.len();
        let q = &eig.eigenvectors;
        let phases: Vec<C64> = eig
            .eigenvalues
            .iter()
            .map(|&th| C64::from_polar(1.0, -tau * th))
            .collect();
        let c: Vec<C64> = (0..m)
            .map(|i| (0..m).map(|k| q[(i, k)] * phases[k] * q[(0, k)]).sum())
            .collect();
        let err = self.scale * self.residual * c[m - 1].norm();
        (c, err)
    }

    fn eigen(&self) -> SymmetricEigen<f64, nalgebra::Dyn> {
        let m = self.alpha.len();
        let mut t = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = self.alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = self.beta[i];
                t[(i + 1, i)] = self.beta[i];
            }
        }
        SymmetricEigen::new(t)
    }

    fn combine(&self, c: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.basis[0].len()];
        for (v, cj) in self.basis.iter().zip(c) {
            let s = cj * self.scale;
            for (o, vi) in out.iter_mut().zip(v) {
                *o += s * vi;
            }
        }
        out
    }
}

/// Advance `psi` by `dt` under `exp(-i H dt)` with adaptive Krylov steps.
fn advance(h: &Arrowhead<'_>, psi: &mut Vec<C64>, dt: f64, tau_hint: &mut f64) {
    let mut done = 0.0;
    while done < dt {
        let krylov = Krylov::build(h, psi);
        let eig = krylov.eigen();
        let remaining = dt - done;
        let mut tau = tau_hint.min(remaining);
        loop {
            let (c, err) = krylov.coefficients(&eig, tau);
            if err <= STEP_TOL || tau < 1e-12 {
                *psi = krylov.combine(&c);
                done = if tau >= remaining { dt } else { done + tau };
                if tau < remaining || err <= 0.1 * STEP_TOL {
                    *tau_hint = if err <= 0.1 * STEP_TOL {
                        tau * 1.5
                    } else {
                        tau
                    };
                }
                break;
            }
            tau *= 0.5;
            *tau_hint = tau;
        }
    }
}

/// Exact Schrodinger evolution of `psi0` in the single-excitation sector of
/// cavity, atom and discretized bath, sampled on `t_grid`.
///
/// The bath couples through `kappa_i (a b_i^dag + h.c.) + xi_i (sigma^- b_i^dag + h.c.)`.
/// Energies are measured from the ground state `|0;g> (x) |vac>`.
pub fn exact_evolve(
    params: &SystemParams,
    bath: &DiscretizedBath,
    psi0: &SingleExcitationState,
    t_grid: &[f64],
) -> Result<ExactTrajectory> {
    if psi0.modes.len() != bath.len() {
        return Err(Error::InvalidState(format!(
            "state carries {} bath amplitudes, bath has {} modes",
            psi0.modes.len(),
            bath.len()
        )));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(
            "time grid must be strictly increasing".into(),
        ));
    }
    let span = t_grid.last().copied().unwrap_or(0.0) - t_grid.first().copied().unwrap_or(0.0);
    let recurrence_warning = !bath.is_empty() && span > bath.recurrence_time();
    if recurrence_warning {
        log::warn!(
            "evolution window {span} exceeds bath recurrence time {}",
            bath.recurrence_time()
        );
    }

    let h = Arrowhead { params, bath };
    let mut psi = psi0.to_vec();
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = ExactTrajectory {
        times: t_grid.to_vec(),
        photon: Vec::with_capacity(t_grid.len()),
        excited: Vec::with_capacity(t_grid.len()),
        plus: Vec::with_capacity(t_grid.len()),
        minus: Vec::with_capacity(t_grid.len()),
        norm: Vec::with_capacity(t_grid.len()),
        recurrence_warning,
        final_state: psi0.clone(),
    };
    let mut tau_hint = 1.0;
    for (i, &t) in t_grid.iter().enumerate() {
        if i > 0 {
            advance(&h, &mut psi, t - t_grid[i - 1], &mut tau_hint);
        }
        let n = norm(&psi);
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::Integration {
                time: t,
                reason: format!("norm drifted to {n}"),
            });
        }
        out.photon.push(psi[0].norm_sqr());
        out.excited.push(psi[1].norm_sqr());
        out.plus.push(((psi[0] + psi[1]) * amp).norm_sqr());
        out.minus.push(((psi[1] - psi[0]) * amp).norm_sqr());
        out.norm.push(n);
    }
    out.final_state = SingleExcitationState::from_vec(psi);
    Ok(out)
}
