// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use super::{to_complex, Liouvillian};
use crate::system::{
    build_dressed_basis, jc_hamiltonian, DressedBasis, ProductOperators, SystemParams,
};
use crate::{CMatrix, Error, Result, C64};

/// `L[Q] rho = 2 Q rho Q^dag - Q^dag Q rho - rho Q^dag Q`.
pub fn dissipator(q: &CMatrix, rho: &CMatrix) -> CMatrix {
    let qd = q.adjoint();
    let qdq = &qd * q;
    (q * rho * &qd) * C64::new(2.0, 0.0) - &qdq * rho - rho * &qdq
}

/// Generator in operator form: `-i [H, rho] + sum_j rate_j L[Q_j] rho`.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    pub basis: DressedBasis,
    pub hamiltonian: CMatrix,
    /// `(rate, Q)` pairs.
    pub jumps: Vec<(f64, CMatrix)>,
}

impl LindbladGenerator {
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let mut out = (&self.hamiltonian * rho - rho * &self.hamiltonian) * C64::new(0.0, -1.0);
        for (rate, q) in &self.jumps {
            out += dissipator(q, rho) * C64::new(*rate, 0.0);
        }
        out
    }

    pub fn liouvillian(&self) -> Liouvillian {
        Liouvillian::from_map(self.basis.dim(), |rho| self.apply(rho))
    }
}

/// Independent cavity and atomic decay channels,
/// `-i [H_JC, rho] + J1 L[a] + J2 L[sigma^-]`, in the working basis of
/// `params`.
pub fn traditional_generator(
    params: &SystemParams,
    j1_value: f64,
    j2_value: f64,
) -> Result<LindbladGenerator> {
    let basis = build_dressed_basis(params)?;
    let hamiltonian = to_complex(&basis.to_dressed(&jc_hamiltonian(params)));
    let jumps = vec![
        (j1_value, to_complex(&basis.op_a)),
        (j2_value, to_complex(&basis.op_sm)),
    ];
    Ok(LindbladGenerator {
        basis,
        hamiltonian,
        jumps,
    })
}

/// Uncoupled (`lambda = 0`) common-bath generator
/// `-i [H_0, rho] + L[P]` with `P = sqrt(J1) a + sqrt(J2) sigma^-`.
///
/// The returned generator carries a single jump `(1, P)`.
pub fn lambda_zero_generator(
    params: &SystemParams,
    j1_value: f64,
    j2_value: f64,
) -> Result<LindbladGenerator> {
    if params.lambda != 0.0 {
        return Err(Error::ContractViolation(format!(
            "collective-jump form requires lambda = 0, got {}",
            params.lambda
        )));
    }
    if j1_value < 0.0 || j2_value < 0.0 {
        return Err(Error::InvalidParameter(
            "spectral rates must be non-negative".into(),
        ));
    }
    let basis = build_dressed_basis(params)?;
    let ops = ProductOperators::new(params.n_max);
    let h0 = &ops.number * params.omega_c + &ops.sigma_z * (0.5 * params.omega_0);
    let p = &ops.a * j1_value.sqrt() + &ops.sm * j2_value.sqrt();
    Ok(LindbladGenerator {
        hamiltonian: to_complex(&basis.to_dressed(&h0)),
        jumps: vec![(1.0, to_complex(&basis.to_dressed(&p)))],
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{excited_arm_index, ground_arm_index};

    fn random_matrix(dim: usize, seed: u64) -> CMatrix {
        // small LCG; only needs to be generic, not random
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        CMatrix::from_fn(dim, dim, |_, _| C64::new(next(), next()))
    }

    /// The five-line expansion of the uncoupled common-bath equation written
    /// out term by term.
    fn expanded(params: &SystemParams, j1: f64, j2: f64, rho: &CMatrix) -> CMatrix {
        let ops = ProductOperators::new(params.n_max);
        let a = to_complex(&ops.a);
        let ad = a.adjoint();
        let sm = to_complex(&ops.sm);
        let sp = sm.adjoint();
        let h0 =
            to_complex(&(&ops.number * params.omega_c + &ops.sigma_z * (0.5 * params.omega_0)));
        let two = C64::new(2.0, 0.0);
        let c = |x: f64| C64::new(x, 0.0);
        let x = (j1 * j2).sqrt();
        (&h0 * rho - rho * &h0) * C64::new(0.0, -1.0)
            + (&a * rho * &ad * two - &ad * &a * rho - rho * &ad * &a) * c(j1)
            + (&sm * rho * &sp * two - &sp * &sm * rho - rho * &sp * &sm) * c(j2)
            + (&a * rho * &sp * two - &sp * &a * rho - rho * &sp * &a) * c(x)
            + (&sm * rho * &ad * two - &ad * &sm * rho - rho * &ad * &sm) * c(x)
    }

    #[test]
    fn collective_jump_reproduces_expanded_equation() {
        let params = SystemParams::resonant(0.0).unwrap();
        let (j1, j2) = (0.010289, 0.0055449);
        let gen = lambda_zero_generator(&params, j1, j2).unwrap();
        for seed in 1..4 {
            let rho = random_matrix(params.dim(), seed);
            let diff = gen.apply(&rho) - expanded(&params, j1, j2, &rho);
            assert!(diff.camax() < 1e-15, "seed {seed}: {}", diff.camax());
        }
    }

    #[test]
    fn collective_jump_annihilates_dark_superposition() {
        let params = SystemParams::resonant(0.0).unwrap();
        let (j1, j2) = (0.010289, 0.0055449);
        let gen = lambda_zero_generator(&params, j1, j2).unwrap();
        let mut dark = nalgebra::DVector::<C64>::zeros(params.dim());
        dark[excited_arm_index(0)] = C64::new(j1.sqrt(), 0.0);
        dark[ground_arm_index(1)] = C64::new(-j2.sqrt(), 0.0);
        let p = &gen.jumps[0].1;
        assert!((p * &dark).camax() < 1e-17);
        let rho = &dark * dark.adjoint() / C64::new(j1 + j2, 0.0);
        assert!(gen.apply(&rho).camax() < 1e-17);
    }

    #[test]
    fn single_channel_limit() {
        let params = SystemParams::resonant(0.0).unwrap();
        let j1 = 0.01;
        let gen = lambda_zero_generator(&params, j1, 0.0).unwrap();
        let trad = traditional_generator(&params, j1, 0.0).unwrap();
        let rho = random_matrix(params.dim(), 7);
        assert!((gen.apply(&rho) - trad.apply(&rho)).camax() < 1e-15);
    }

    #[test]
    fn rejects_coupled_system() {
        let params = SystemParams::resonant(0.1).unwrap();
        assert!(matches!(
            lambda_zero_generator(&params, 0.01, 0.01),
            Err(Error::ContractViolation(_))
        ));
    }
}
