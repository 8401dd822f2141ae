// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use crate::bath::{ohmic_j, SpectralDensity};
use crate::system::DressedBasis;
use crate::{CMatrix, C64};

/// Common-bath dissipative rate tensor `gamma^{cdkl}` over the levels of a
/// [`DressedBasis`].
///
/// The master equation reads
/// `d rho_cd / dt = -i (E_c - E_d) rho_cd + sum_kl gamma^{cdkl} rho_kl`.
#[derive(Debug, Clone)]
pub struct RateTensor {
    dim: usize,
    gamma: Vec<C64>,
    basis: DressedBasis,
    interference: bool,
}

impl RateTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &DressedBasis {
        &self.basis
    }

    pub fn interference_enabled(&self) -> bool {
        self.interference
    }

    #[inline]
    fn index(&self, c: usize, d: usize, k: usize, l: usize) -> usize {
        ((c * self.dim + d) * self.dim + k) * self.dim + l
    }

    pub fn get(&self, c: usize, d: usize, k: usize, l: usize) -> C64 {
        self.gamma[self.index(c, d, k, l)]
    }

    /// `max |gamma^{cdkl} - conj(gamma^{dclk})|`; zero for a generator that
    /// maps Hermitian matrices to Hermitian matrices.
    pub fn conjugation_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for c in 0..n {
            for d in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let diff = self.get(c, d, k, l) - self.get(d, c, l, k).conj();
                        worst = worst.max(diff.norm());
                    }
                }
            }
        }
        worst
    }

    /// `max_kl |sum_c gamma^{cckl}|`; zero for a trace-preserving generator.
    pub fn trace_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for l in 0..n {
                let s: C64 = (0..n).map(|c| self.get(c, c, k, l)).sum();
                worst = worst.max(s.norm());
            }
        }
        worst
    }
}

/// Spectral weights at one transition frequency.
#[derive(Clone, Copy)]
struct Weights {
    cavity: f64,
    atom: f64,
    cross: f64,
}

/// Build `gamma^{cdkl} = gamma_1 + gamma_2 + gamma_3 + gamma_4`:
///
/// ```text
/// gamma_1 = -sum_n [ J1(w_kn) d_dl a+_cn a_nk + J2(w_kn) d_dl s+_cn s-_nk
///                   + sqrt(J1 J2)(w_kn) d_dl (a+_cn s-_nk + s+_cn a_nk) ]
/// gamma_2 =  J1(w_kc) a_ck a+_ld + J2(w_kc) s-_ck s+_ld
///          + sqrt(J1 J2)(w_kc) (a_ck s+_ld + s-_ck a+_ld)
/// gamma_3 = -sum_n [ J1(w_ln) d_ck a+_ln a_nd + J2(w_ln) d_ck s+_ln s-_nd
///                   + sqrt(J1 J2)(w_ln) d_ck (a+_ln s-_nd + s+_ln a_nd) ]
/// gamma_4 =  J1(w_ld) a_ck a+_ld + J2(w_ld) s-_ck s+_ld
///          + sqrt(J1 J2)(w_ld) (a_ck s+_ld + s-_ck a+_ld)
/// ```
///
/// with `w_ij = E_i - E_j` and `J(w <= 0) = 0`. Without interference every
/// `sqrt(J1 J2)` term is dropped.
pub fn build_rate_tensor(
    basis: &DressedBasis,
    j1: &SpectralDensity,
    j2: &SpectralDensity,
    interference: bool,
) -> RateTensor {
    let dim = basis.dim();
    let a: CMatrix = crate::system::to_complex(&basis.op_a);
    let sm: CMatrix = crate::system::to_complex(&basis.op_sm);
    let ad = a.adjoint();
    let sp = sm.adjoint();

    let weights = |omega: f64| {
        let cavity = ohmic_j(j1, omega);
        let atom = ohmic_j(j2, omega);
        let cross = if interference {
            (cavity * atom).sqrt()
        } else {
            0.0
        };
        Weights {
            cavity,
            atom,
            cross,
        }
    };
    let w: Vec<Weights> = (0..dim * dim)
        .map(|ij| weights(basis.omega(ij / dim, ij % dim)))
        .collect();
    let weight = |i: usize, j: usize| w[i * dim + j];

    // sum_n J(w_fn) [a+_in a_nj ...], with the frequency taken at the
    // column index j (gamma_1) or at the row index i (gamma_3)
    let decay_sum = |i: usize, j: usize, f: usize| {
        let mut acc = C64::new(0.0, 0.0);
        for n in 0..dim {
            let wt = weight(f, n);
            acc += ad[(i, n)] * a[(n, j)] * wt.cavity
                + sp[(i, n)] * sm[(n, j)] * wt.atom
                + (ad[(i, n)] * sm[(n, j)] + sp[(i, n)] * a[(n, j)]) * wt.cross;
        }
        acc
    };
    let loss_left = CMatrix::from_fn(dim, dim, |c, k| decay_sum(c, k, k));
    let loss_right = CMatrix::from_fn(dim, dim, |l, d| decay_sum(l, d, l));

    let mut gamma = vec![C64::new(0.0, 0.0); dim * dim * dim * dim];
    for c in 0..dim {
        for d in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    let mut g = C64::new(0.0, 0.0);
                    if d == l {
                        g -= loss_left[(c, k)];
                    }
                    let jump = |wt: Weights| {
                        a[(c, k)] * ad[(l, d)] * wt.cavity
                            + sm[(c, k)] * sp[(l, d)] * wt.atom
                            + (a[(c, k)] * sp[(l, d)] + sm[(c, k)] * ad[(l, d)]) * wt.cross
                    };
                    g += jump(weight(k, c));
                    if c == k {
                        g -= loss_right[(l, d)];
                    }
                    g += jump(weight(l, d));
                    gamma[((c * dim + d) * dim + k) * dim + l] = g;
                }
            }
        }
    }

    RateTensor {
        dim,
        gamma,
        basis: basis.clone(),
        interference,
    }
}
