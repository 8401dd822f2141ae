// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use crate::master::{DensityMatrix, RateTensor};
use crate::system::{Branch, LevelLabel};
use crate::{Error, Result, C64};

/// One-excitation dressed-basis elements of the initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneExcitationInitial {
    pub pp: C64,
    pub mm: C64,
    /// `rho_{1+,1-}(0)`; `rho_{1-,1+}(0)` is its conjugate.
    pub pm: C64,
}

impl OneExcitationInitial {
    /// Read the elements from a density matrix in the working basis of `tensor`.
    pub fn from_density(rho: &DensityMatrix, tensor: &RateTensor) -> Result<Self> {
        let (p, m) = doublet(tensor)?;
        Ok(Self {
            pp: rho.get(p, p),
            mm: rho.get(m, m),
            pm: rho.get(p, m),
        })
    }
}

/// First-order closed-form populations of `|1,+>` and `|1,->`.
#[derive(Debug, Clone)]
pub struct IterationSeries {
    pub times: Vec<f64>,
    pub rho_1p1p: Vec<f64>,
    pub rho_1m1m: Vec<f64>,
}

fn doublet(tensor: &RateTensor) -> Result<(usize, usize)> {
    let basis = tensor.basis();
    let find = |branch| {
        basis
            .index_of(LevelLabel::Dressed { n: 1, branch })
            .ok_or_else(|| {
                Error::UnsupportedConfiguration(
                    "iteration solution needs a dressed basis (lambda > 0)".into(),
                )
            })
    };
    Ok((find(Branch::Plus)?, find(Branch::Minus)?))
}

/// `(exp(z t) - 1) / z`, continuous through `z = 0`.
fn phi(z: C64, t: f64) -> C64 {
    if z.norm() * t.abs() < 1e-8 {
        C64::new(t, 0.0) + z * (t * t / 2.0)
    } else {
        ((z * t).exp() - 1.0) / z
    }
}

/// Evaluate the two-step iteration solution: the one-excitation coherences
/// are first propagated with their own decay and rotation only, then fed back
/// into the population equations.
///
/// `energies` supplies `E_{1+}` and `E_{1-}` at the doublet slots of the
/// tensor's basis.
pub fn iteration_solution(
    tensor: &RateTensor,
    energies: &[f64],
    initial: &OneExcitationInitial,
    t_grid: &[f64],
) -> Result<IterationSeries> {
    let (p, m) = doublet(tensor)?;
    if energies.len() != tensor.dim() {
        return Err(Error::InvalidParameter(format!(
            "{} energies for a tensor of dimension {}",
            energies.len(),
            tensor.dim()
        )));
    }
    let g = |c, d, k, l| tensor.get(c, d, k, l);
    let i = C64::new(0.0, 1.0);
    let split = energies[p] - energies[m];
    let pm0 = initial.pm;
    let mp0 = initial.pm.conj();

    let g_pppp = g(p, p, p, p);
    let g_mmmm = g(m, m, m, m);
    let g_pmpm = g(p, m, p, m);
    let g_mpmp = g(m, p, m, p);

    let z_pm = |own: C64| g_pmpm - own - i * split;
    let z_mp = |own: C64| g_mpmp - own + i * split;

    let mut out = IterationSeries {
        times: t_grid.to_vec(),
        rho_1p1p: Vec::new(),
        rho_1m1m: Vec::new(),
    };
    for &t in t_grid {
        let plus = (g(p, p, p, m) * pm0 * phi(z_pm(g_pppp), t)
            + g(p, p, m, p) * mp0 * phi(z_mp(g_pppp), t)
            + initial.pp)
            * (g_pppp * t).exp();
        let minus = (g(m, m, p, m) * pm0 * phi(z_pm(g_mmmm), t)
            + g(m, m, m, p) * mp0 * phi(z_mp(g_mmmm), t)
            + initial.mm)
            * (g_mmmm * t).exp();
        out.rho_1p1p.push(plus.re);
        out.rho_1m1m.push(minus.re);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::SpectralDensity;
    use crate::master::build_rate_tensor;
    use crate::system::{build_dressed_basis, SystemParams};

    fn tensor() -> RateTensor {
        let basis = build_dressed_basis(&SystemParams::default()).unwrap();
        build_rate_tensor(
            &basis,
            &SpectralDensity::new(0.002, 5.0).unwrap(),
            &SpectralDensity::new(0.001, 8.0).unwrap(),
            true,
        )
    }

    #[test]
    fn initial_values_returned_at_zero() {
        let t = tensor();
        let init = OneExcitationInitial {
            pp: C64::new(0.5, 0.0),
            mm: C64::new(0.5, 0.0),
            pm: C64::new(-0.5, 0.0),
        };
        let s = iteration_solution(&t, &t.basis().energies, &init, &[0.0]).unwrap();
        assert_eq!(s.rho_1p1p[0], 0.5);
        assert_eq!(s.rho_1m1m[0], 0.5);
    }

    #[test]
    fn pure_exponentials_without_coherence() {
        let t = tensor();
        let init = OneExcitationInitial {
            pp: C64::new(0.3, 0.0),
            mm: C64::new(0.7, 0.0),
            pm: C64::new(0.0, 0.0),
        };
        let times = [0.0, 10.0, 100.0, 400.0];
        let s = iteration_solution(&t, &t.basis().energies, &init, &times).unwrap();
        let (p, m) = doublet(&t).unwrap();
        for (k, &time) in times.iter().enumerate() {
            assert!((s.rho_1p1p[k] - 0.3 * (t.get(p, p, p, p).re * time).exp()).abs() < 1e-15);
            assert!((s.rho_1m1m[k] - 0.7 * (t.get(m, m, m, m).re * time).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn uncoupled_basis_rejected() {
        let basis = build_dressed_basis(&SystemParams::resonant(0.0).unwrap()).unwrap();
        let j = SpectralDensity::new(0.002, 5.0).unwrap();
        let t = build_rate_tensor(&basis, &j, &j, true);
        let init = OneExcitationInitial {
            pp: C64::new(1.0, 0.0),
            mm: C64::new(0.0, 0.0),
            pm: C64::new(0.0, 0.0),
        };
        assert!(matches!(
            iteration_solution(&t, &basis.energies, &init, &[0.0]),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }
}
