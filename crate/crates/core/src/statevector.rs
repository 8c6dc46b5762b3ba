//! Dense `2^n` simulation of the QAOA ansatz for a diagonal problem
//! Hamiltonian. Used only to cross-check the factorized formulas.
//!
//! Basis index `b` stores qubit 1 in its least significant bit; bit value
//! 0 is spin +1.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::gate::Complex;
use crate::ising::{BitString, LinearIsing};
use crate::probability::QaoaParams;

/// Largest qubit count `run_ansatz` accepts unless told otherwise.
pub const DEFAULT_QUBIT_CAP: usize = 20;

// below this size the rayon split costs more than it saves
const PARALLEL_MIN_LEN: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex>,
    n: usize,
}

impl StateVector {
    /// `H^{⊗n}|0…0⟩`.
    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        let a = Complex::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self { amplitudes: vec![a; dim], n }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return invalid(format!("amplitude count must be a power of two, got {dim}"));
        }
        Ok(Self { n: dim.trailing_zeros() as usize, amplitudes })
    }

    /// Computational basis state `|bits⟩`.
    pub fn basis(bits: &BitString) -> Self {
        let n = bits.len();
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 1 << n];
        amplitudes[bits.to_index()] = Complex::new(1.0, 0.0);
        Self { amplitudes, n }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiply each amplitude by `e^{−iγ·energy[b]}`.
    fn apply_phase(&mut self, gamma: f64, energy: &[f64]) {
        let kernel = |(amp, &e): (&mut Complex, &f64)| *amp *= Complex::from_polar(1.0, -gamma * e);
        if self.amplitudes.len() >= PARALLEL_MIN_LEN {
            self.amplitudes.par_iter_mut().zip(energy.par_iter()).for_each(kernel);
        } else {
            self.amplitudes.iter_mut().zip(energy.iter()).for_each(kernel);
        }
    }

    /// `RX(2β)` on every qubit.
    fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let rotate = |pair: &mut [Complex], half: usize| {
            let (lo, hi) = pair.split_at_mut(half);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = x0 * c + Complex::new(x1.im * s, -x1.re * s);
                *a1 = x1 * c + Complex::new(x0.im * s, -x0.re * s);
            }
        };
        for q in 0..self.n {
            let half = 1usize << q;
            let block = half << 1;
            if self.amplitudes.len() >= PARALLEL_MIN_LEN {
                self.amplitudes.par_chunks_mut(block).for_each(|pair| rotate(pair, half));
            } else {
                self.amplitudes.chunks_mut(block).for_each(|pair| rotate(pair, half));
            }
        }
    }
}

/// `H_P(s(b))` for every basis index `b`.
pub fn diagonal_energies(model: &LinearIsing) -> Vec<f64> {
    let coeffs = model.coeffs();
    (0..1usize << coeffs.len())
        .map(|b| {
            coeffs
                .iter()
                .enumerate()
                .map(|(l, a)| if b >> l & 1 == 0 { *a } else { -*a })
                .sum()
        })
        .collect()
}

/// Run the ansatz with the default qubit cap.
pub fn run_ansatz(model: &LinearIsing, params: &QaoaParams) -> Result<StateVector> {
    run_ansatz_capped(model, params, DEFAULT_QUBIT_CAP)
}

/// Uniform superposition followed by `p` layers of `e^{−iγ_j H_P}` and
/// `RX(2β_j)` on every qubit.
pub fn run_ansatz_capped(model: &LinearIsing, params: &QaoaParams, cap: usize) -> Result<StateVector> {
    let n = model.len();
    if n > cap {
        return Err(Error::ResourceLimit { what: "qubit count", requested: n, limit: cap });
    }
    let energy = diagonal_energies(model);
    let mut state = StateVector::uniform(n);
    for (&g, &b) in params.gammas().iter().zip(params.betas()) {
        state.apply_phase(g, &energy);
        state.apply_mixer(b);
    }
    Ok(state)
}

/// `|⟨bits|state⟩|²`.
pub fn outcome_probability(state: &StateVector, bits: &BitString) -> Result<f64> {
    if bits.len() != state.n {
        return invalid(format!("bit string has length {}, state has {} qubits", bits.len(), state.n));
    }
    if bits.0.iter().any(|&b| b > 1) {
        return invalid("bits must be 0 or 1");
    }
    Ok(state.amplitudes[bits.to_index()].norm_sqr())
}

/// `⟨ψ|H_P|ψ⟩`.
pub fn expectation(model: &LinearIsing, state: &StateVector) -> Result<f64> {
    if model.len() != state.n {
        return invalid(format!("model has {} variables, state has {} qubits", model.len(), state.n));
    }
    let energy = diagonal_energies(model);
    Ok(state.amplitudes.iter().zip(&energy).map(|(a, e)| a.norm_sqr() * e).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probability::{prob_opt, qubit_factors};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn model(c: &[f64]) -> LinearIsing {
        LinearIsing::new(c.to_vec()).unwrap()
    }

    fn params(g: &[f64], b: &[f64]) -> QaoaParams {
        QaoaParams::new(g.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn zero_angles_keep_uniform_state() {
        let s = run_ansatz(&model(&[1.0]), &params(&[0.0], &[0.0])).unwrap();
        for a in s.amplitudes() {
            assert!((a - Complex::new(FRAC_1_SQRT_2, 0.0)).norm() <= 1e-15);
        }
    }

    #[test]
    fn two_qubit_outcome_matches_product_formula() {
        let m = model(&[1.0, 2.0]);
        let p = params(&[0.4], &[0.9]);
        let s = run_ansatz(&m, &p).unwrap();
        let direct = outcome_probability(&s, &BitString(vec![0, 0])).unwrap();
        assert!((direct - prob_opt(&m, &p)).abs() <= 1e-10);
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn outcome_examples() {
        let u = StateVector::uniform(2);
        assert!((outcome_probability(&u, &BitString(vec![0, 0])).unwrap() - 0.25).abs() <= 1e-15);
        assert!(outcome_probability(&u, &BitString(vec![0])).is_err());
        let s = run_ansatz(&model(&[1.0]), &params(&[FRAC_PI_4], &[FRAC_PI_4])).unwrap();
        assert!((outcome_probability(&s, &BitString(vec![0])).unwrap() - 1.0).abs() <= 1e-10);

        let m = model(&[1.0, -2.0, 0.5]);
        let s = run_ansatz(&m, &params(&[0.3, 1.1], &[0.2, -0.4])).unwrap();
        let total: f64 = (0..8usize)
            .map(|i| {
                let bits = BitString((0..3).map(|q| (i >> q & 1) as u8).collect());
                outcome_probability(&s, &bits).unwrap()
            })
            .sum();
        assert!((total - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn expectation_examples() {
        let m = model(&[1.0, -2.0, 3.0]);
        assert!(expectation(&m, &StateVector::uniform(3)).unwrap().abs() <= 1e-12);
        let opt = StateVector::basis(&m.optimal_bits());
        assert!((expectation(&m, &opt).unwrap() - 6.0).abs() <= 1e-12);
        assert!(expectation(&model(&[1.0]), &opt).is_err());

        let m = model(&[1.0, 2.0]);
        let p = params(&[0.4], &[0.9]);
        let s = run_ansatz(&m, &p).unwrap();
        let factored: f64 = m
            .coeffs()
            .iter()
            .zip(qubit_factors(&m, &p))
            .map(|(a, q)| a * q.z_expectation())
            .sum();
        assert!((expectation(&m, &s).unwrap() - factored).abs() <= 1e-10);
    }

    #[test]
    fn qubit_cap_enforced() {
        let m = LinearIsing::consecutive(5).unwrap();
        let err = run_ansatz_capped(&m, &params(&[0.1], &[0.1]), 4).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { requested: 5, limit: 4, .. }));
        assert!(run_ansatz(&LinearIsing::consecutive(21).unwrap(), &params(&[0.1], &[0.1])).is_err());
    }

    #[test]
    fn parallel_path_preserves_norm() {
        let m = LinearIsing::consecutive(15).unwrap();
        let s = run_ansatz(&m, &params(&[0.3, 0.7], &[0.5, 1.2])).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-10);
        let direct = outcome_probability(&s, &m.optimal_bits()).unwrap();
        assert!((direct - prob_opt(&m, &params(&[0.3, 0.7], &[0.5, 1.2]))).abs() <= 1e-10);
    }

    #[test]
    fn from_amplitudes_checks_length() {
        assert!(StateVector::from_amplitudes(vec![Complex::new(1.0, 0.0); 3]).is_err());
        assert_eq!(StateVector::from_amplitudes(vec![Complex::new(0.5, 0.0); 4]).unwrap().qubits(), 2);
    }
}
