// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Jaynes-Cummings Hamiltonian, its dressed eigenbasis and the
//! coupled-oscillator comparison spectrum.
//!
//! The truncated product basis keeps every state with at most `n_max`
//! excitations, ordered as
//! `|0;g>, |1;g>, |0;e>, |2;g>, |1;e>, ..., |n_max;g>, |n_max-1;e>`,
//! so that the Hamiltonian is block diagonal and the truncation is exact for
//! it. The dressed basis uses the same slot layout: ground first, then
//! `(n,-), (n,+)` for `n = 1..=n_max`, which is ascending in energy while
//! `lambda (sqrt(n) + sqrt(n - 1)) < omega_c`.

use std::fmt;

use nalgebra::DMatrix;

use crate::{CMatrix, Error, Result, C64};

const RESONANCE_TOL: f64 = 1e-12;

/// Parameters of the atom-cavity Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega_c: f64,
    pub omega_0: f64,
    pub lambda: f64,
    pub n_max: usize,
}

impl SystemParams {
    pub fn new(omega_c: f64, omega_0: f64, lambda: f64, n_max: usize) -> Result<Self> {
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega_c must be positive, got {omega_c}"
            )));
        }
        if !(omega_0 > 0.0 && omega_0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega_0 must be positive, got {omega_0}"
            )));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be non-negative, got {lambda}"
            )));
        }
        if n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        Ok(Self {
            omega_c,
            omega_0,
            lambda,
            n_max,
        })
    }

    /// Resonant system with unit frequencies and the default truncation.
    pub fn resonant(lambda: f64) -> Result<Self> {
        Self::new(1.0, 1.0, lambda, 3)
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self::new(self.omega_c, self.omega_0, lambda, self.n_max)
    }

    pub fn with_n_max(self, n_max: usize) -> Self {
        Self {
            n_max: n_max.max(1),
            ..self
        }
    }

    pub fn is_resonant(&self) -> bool {
        (self.omega_c - self.omega_0).abs() <= RESONANCE_TOL * self.omega_c.max(self.omega_0)
    }

    /// Dimension of the truncated Hilbert space.
    pub fn dim(&self) -> usize {
        2 * self.n_max + 1
    }

    fn require_resonance(&self) -> Result<()> {
        if self.is_resonant() {
            Ok(())
        } else {
            Err(Error::UnsupportedConfiguration(format!(
                "detuned system (omega_c = {}, omega_0 = {}); dressed states are resonant-only",
                self.omega_c, self.omega_0
            )))
        }
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            omega_c: 1.0,
            omega_0: 1.0,
            lambda: 0.1,
            n_max: 3,
        }
    }
}

/// Index of `|photons; g>` in the truncated product basis.
pub fn ground_arm_index(photons: usize) -> usize {
    if photons == 0 {
        0
    } else {
        2 * photons - 1
    }
}

/// Index of `|photons; e>` in the truncated product basis.
pub fn excited_arm_index(photons: usize) -> usize {
    2 * (photons + 1)
}

/// Product-basis index of a bare state, if it lies inside the truncation.
pub fn product_index(photons: usize, excited: bool, n_max: usize) -> Option<usize> {
    let excitations = photons + usize::from(excited);
    if excitations > n_max {
        return None;
    }
    Some(if excited {
        excited_arm_index(photons)
    } else {
        ground_arm_index(photons)
    })
}

/// Operators of the truncated product basis.
#[derive(Debug, Clone)]
pub struct ProductOperators {
    /// Cavity annihilation operator `a`.
    pub a: DMatrix<f64>,
    /// Atomic lowering operator `|g><e|`.
    pub sm: DMatrix<f64>,
    /// Photon number `a^dag a`.
    pub number: DMatrix<f64>,
    /// Excited-state projector `|e><e|`.
    pub excited: DMatrix<f64>,
    /// `|e><e| - |g><g|`.
    pub sigma_z: DMatrix<f64>,
}

impl ProductOperators {
    pub fn new(n_max: usize) -> Self {
        let dim = 2 * n_max + 1;
        let mut a = DMatrix::zeros(dim, dim);
        let mut sm = DMatrix::zeros(dim, dim);
        let mut number = DMatrix::zeros(dim, dim);
        let mut excited = DMatrix::zeros(dim, dim);
        for photons in 0..=n_max {
            let g = ground_arm_index(photons);
            number[(g, g)] = photons as f64;
            if photons >= 1 {
                a[(ground_arm_index(photons - 1), g)] = (photons as f64).sqrt();
            }
            if photons < n_max {
                let e = excited_arm_index(photons);
                number[(e, e)] = photons as f64;
                excited[(e, e)] = 1.0;
                sm[(g, e)] = 1.0;
                if photons >= 1 {
                    a[(excited_arm_index(photons - 1), e)] = (photons as f64).sqrt();
                }
            }
        }
        let sigma_z = &excited * 2.0 - DMatrix::identity(dim, dim);
        Self {
            a,
            sm,
            number,
            excited,
            sigma_z,
        }
    }

    /// `a^dag sigma^- + a sigma^+`, kept exactly Hermitian at the truncation edge.
    pub fn exchange(&self) -> DMatrix<f64> {
        let hop = self.a.transpose() * &self.sm;
        &hop + hop.transpose()
    }
}

/// `H_JC = omega_c a^dag a + (omega_0 / 2) sigma_z + lambda (a^dag sigma^- + a sigma^+)`
/// in the product basis.
pub fn jc_hamiltonian(params: &SystemParams) -> DMatrix<f64> {
    let ops = ProductOperators::new(params.n_max);
    &ops.number * params.omega_c
        + &ops.sigma_z * (0.5 * params.omega_0)
        + ops.exchange() * params.lambda
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelLabel {
    /// `|G> = |0;g>`.
    Ground,
    /// `|n,+-> = (+-|n;g> + |n-1;e>) / sqrt(2)`.
    Dressed { n: usize, branch: Branch },
    /// Uncoupled product state, used when `lambda = 0`.
    Bare { photons: usize, excited: bool },
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelLabel::Ground => write!(f, "G"),
            LevelLabel::Dressed {
                n,
                branch: Branch::Plus,
            } => write!(f, "{n}+"),
            LevelLabel::Dressed {
                n,
                branch: Branch::Minus,
            } => write!(f, "{n}-"),
            LevelLabel::Bare { photons, excited } => {
                write!(f, "{photons};{}", if *excited { 'e' } else { 'g' })
            }
        }
    }
}

/// Energies `(E_n^+, E_n^-) = (n - 1/2) omega_c +- lambda sqrt(n)` of the
/// `n`-excitation dressed doublet.
pub fn dressed_energies(params: &SystemParams, n: usize) -> Result<(f64, f64)> {
    params.require_resonance()?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "dressed manifold index must be positive".into(),
        ));
    }
    if n > params.n_max {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: params.n_max,
        });
    }
    let centre = (n as f64 - 0.5) * params.omega_c;
    let split = params.lambda * (n as f64).sqrt();
    Ok((centre + split, centre - split))
}

/// Eigenbasis of `H_JC` with the cavity and atomic lowering operators
/// expressed in it.
#[derive(Debug, Clone)]
pub struct DressedBasis {
    pub params: SystemParams,
    pub labels: Vec<LevelLabel>,
    pub energies: Vec<f64>,
    /// Column `j` holds level `j` expanded over the product basis.
    pub vectors: DMatrix<f64>,
    pub op_a: DMatrix<f64>,
    pub op_sm: DMatrix<f64>,
}

/// Build the dressed basis from the closed-form eigenpairs.
///
/// For `lambda = 0` the product basis itself is returned (labels
/// [`LevelLabel::Bare`], slots ordered as the product basis).
pub fn build_dressed_basis(params: &SystemParams) -> Result<DressedBasis> {
    params.require_resonance()?;
    let dim = params.dim();
    let mut labels = Vec::with_capacity(dim);
    let mut energies = Vec::with_capacity(dim);
    let mut vectors = DMatrix::zeros(dim, dim);

    labels.push(LevelLabel::Ground);
    energies.push(-0.5 * params.omega_c);
    vectors[(0, 0)] = 1.0;

    let coupled = params.lambda > 0.0;
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    for n in 1..=params.n_max {
        let g = ground_arm_index(n);
        let e = excited_arm_index(n - 1);
        let (e_plus, e_minus) = dressed_energies(params, n)?;
        if coupled {
            // slot 2n-1 holds (n,-), slot 2n holds (n,+)
            for (slot, branch, energy) in [
                (2 * n - 1, Branch::Minus, e_minus),
                (2 * n, Branch::Plus, e_plus),
            ] {
                labels.push(LevelLabel::Dressed { n, branch });
                energies.push(energy);
                vectors[(g, slot)] = branch.sign() * amp;
                vectors[(e, slot)] = amp;
            }
        } else {
            labels.push(LevelLabel::Bare {
                photons: n,
                excited: false,
            });
            energies.push(e_plus);
            vectors[(g, 2 * n - 1)] = 1.0;
            labels.push(LevelLabel::Bare {
                photons: n - 1,
                excited: true,
            });
            energies.push(e_minus);
            vectors[(e, 2 * n)] = 1.0;
        }
    }

    let ops = ProductOperators::new(params.n_max);
    let op_a = vectors.transpose() * &ops.a * &vectors;
    let op_sm = vectors.transpose() * &ops.sm * &vectors;
    Ok(DressedBasis {
        params: *params,
        labels,
        energies,
        vectors,
        op_a,
        op_sm,
    })
}

impl DressedBasis {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn index_of(&self, label: LevelLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Transition frequency `omega_ij = E_i - E_j`.
    pub fn omega(&self, i: usize, j: usize) -> f64 {
        self.energies[i] - self.energies[j]
    }

    /// Re-express a product-basis operator in this basis.
    pub fn to_dressed(&self, op: &DMatrix<f64>) -> DMatrix<f64> {
        self.vectors.transpose() * op * &self.vectors
    }

    pub fn to_dressed_complex(&self, op: &CMatrix) -> CMatrix {
        let v = to_complex(&self.vectors);
        v.adjoint() * op * &v
    }

    /// Coefficients in this basis of a product-basis state vector.
    pub fn state_coefficients(&self, product_state: &[C64]) -> Vec<C64> {
        let dim = self.dim();
        (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|i| product_state[i] * self.vectors[(i, j)])
                    .sum()
            })
            .collect()
    }

    /// Product-basis vector of the resonant dressed state `|n, branch>`,
    /// regardless of whether this basis is dressed or bare.
    pub fn dressed_product_vector(&self, n: usize, branch: Branch) -> Vec<C64> {
        let mut psi = vec![C64::new(0.0, 0.0); self.dim()];
        let amp = std::f64::consts::FRAC_1_SQRT_2;
        psi[ground_arm_index(n)] = C64::new(branch.sign() * amp, 0.0);
        psi[excited_arm_index(n - 1)] = C64::new(amp, 0.0);
        psi
    }

    /// Diagonal Hamiltonian in this basis.
    pub fn hamiltonian(&self) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim(),
            self.energies.iter().map(|&e| C64::new(e, 0.0)),
        ))
    }
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

/// Spectrum of two resonant coupled oscillators,
/// `E_{m1,m2} = m1 (omega + lambda) + m2 (omega - lambda)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorLevels {
    pub energies: Vec<f64>,
    /// `(m1, m2)` for each entry of `energies`.
    pub labels: Vec<(usize, usize)>,
}

impl OscillatorLevels {
    pub fn energy(&self, m1: usize, m2: usize) -> Option<f64> {
        self.labels
            .iter()
            .position(|&l| l == (m1, m2))
            .map(|i| self.energies[i])
    }
}

pub fn coupled_oscillator_levels(
    omega: f64,
    lambda: f64,
    m_max: usize,
) -> Result<OscillatorLevels> {
    if !(omega > 0.0) || !(lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "omega = {omega}, lambda = {lambda}"
        )));
    }
    if lambda >= omega {
        return Err(Error::UnstableConfiguration { lambda, omega });
    }
    let mut levels: Vec<(f64, (usize, usize))> = (0..=m_max)
        .flat_map(|m1| (0..=m_max).map(move |m2| (m1, m2)))
        .map(|(m1, m2)| {
            (
                m1 as f64 * (omega + lambda) + m2 as f64 * (omega - lambda),
                (m1, m2),
            )
        })
        .collect();
    levels.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let (energies, labels) = levels.into_iter().unzip();
    Ok(OscillatorLevels { energies, labels })
}
