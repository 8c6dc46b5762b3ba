//! Probability that one measurement of the QAOA ansatz returns the global
//! optimum of a linear Ising model, and the sampling cost derived from it.
//!
//! For a linear problem Hamiltonian the ansatz state factorizes over
//! qubits, so the success probability is a product of `n` single-qubit
//! terms `|⟨b_ℓ| ∏_j RX(2β_j) RZ(2γ_j a_ℓ) |+⟩|²`, where `b_ℓ` is the
//! optimal bit of qubit `ℓ`.

use crate::error::{invalid, Error, Result};
use crate::gate::{check_layers, layered_factor, Complex, Qubit};
use crate::ising::LinearIsing;

/// Ansatz angles, one `(γ_j, β_j)` pair per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        check_layers(&gammas, &betas)?;
        Ok(Self { gammas, betas })
    }

    /// All angles zero: every qubit stays in `|+⟩`.
    pub fn zeros(p: usize) -> Result<Self> {
        Self::new(vec![0.0; p], vec![0.0; p])
    }

    /// Inverse of [`to_flat`](Self::to_flat): `[γ_1..γ_p, β_1..β_p]`.
    pub fn from_flat(x: &[f64]) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return invalid(format!("flat parameter vector must have even length, got {}", x.len()));
        }
        let (g, b) = x.split_at(x.len() / 2);
        Self::new(g.to_vec(), b.to_vec())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Number of layers `p`.
    pub fn layers(&self) -> usize {
        self.gammas.len()
    }
}

/// Per-qubit factor states of the ansatz, qubit 1 first.
pub fn qubit_factors(model: &LinearIsing, params: &QaoaParams) -> Vec<Qubit> {
    model
        .coeffs()
        .iter()
        .map(|&a| layered_factor(a, &params.gammas, &params.betas))
        .collect()
}

/// Probability of measuring `optimal_bits(model)`.
pub fn prob_opt(model: &LinearIsing, params: &QaoaParams) -> f64 {
    prob_opt_raw(model.coeffs(), &params.gammas, &params.betas)
}

/// Unchecked kernel used by the optimizers: `coeffs` nonzero, angle slices of equal length.
pub(crate) fn prob_opt_raw(coeffs: &[f64], gammas: &[f64], betas: &[f64]) -> f64 {
    coeffs
        .iter()
        .map(|&a| {
            let q = layered_factor(a, gammas, betas);
            if a > 0.0 {
                q.amp0.norm_sqr()
            } else {
                q.amp1.norm_sqr()
            }
        })
        .product()
}

/// Natural log of [`prob_opt`], accumulated as a sum so very large models
/// do not underflow.
pub fn log_prob_opt(model: &LinearIsing, params: &QaoaParams) -> f64 {
    model
        .coeffs()
        .iter()
        .map(|&a| {
            let q = layered_factor(a, &params.gammas, &params.betas);
            let amp = if a > 0.0 { q.amp0 } else { q.amp1 };
            amp.norm_sqr().ln()
        })
        .sum()
}

/// Success probability of `base.replicate(k)`, computed as `prob_opt(base)^k`.
pub fn prob_opt_replicated(base: &LinearIsing, k: usize, params: &QaoaParams) -> Result<f64> {
    if k < 1 {
        return invalid("replication factor must be at least 1");
    }
    let p = prob_opt(base, params);
    Ok(match i32::try_from(k) {
        Ok(k) => p.powi(k),
        Err(_) => (k as f64 * p.ln()).exp(),
    })
}

/// Expected sampling cost of the replicated model `base^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeEstimate {
    /// Success probability of the length-`m` base pattern.
    pub base_prob: f64,
    /// Success probability of the replicated model, `base_prob^k`.
    pub prob_opt: f64,
    /// Mean of the geometric distribution, `1 / prob_opt`.
    pub expected_samples: f64,
    /// `ln(expected_samples)`, finite even when `expected_samples` overflows.
    pub log_expected_samples: f64,
    /// `base_prob^(−1/m)`, so that `expected_samples = exponent_base^n`.
    pub exponent_base: f64,
    pub m: usize,
    pub n: usize,
}

pub fn runtime_estimate(base: &LinearIsing, k: usize, params: &QaoaParams) -> Result<RuntimeEstimate> {
    RuntimeEstimate::from_base_prob(prob_opt(base, params), base.len(), k)
}

impl RuntimeEstimate {
    /// Cost of `k` replicas of a length-`m` pattern measured with probability `base_prob`.
    pub fn from_base_prob(base_prob: f64, m: usize, k: usize) -> Result<Self> {
        if k < 1 || m < 1 {
            return invalid("pattern length and replication factor must be at least 1");
        }
        if !(base_prob > 0.0 && base_prob <= 1.0 + 1e-12) {
            return Err(Error::DegenerateProbability(base_prob));
        }
        let log_expected_samples = -(k as f64) * base_prob.ln();
        let prob_opt = match i32::try_from(k) {
            Ok(k) => base_prob.powi(k),
            Err(_) => (-log_expected_samples).exp(),
        };
        Ok(Self {
            base_prob,
            prob_opt,
            expected_samples: log_expected_samples.exp(),
            log_expected_samples,
            exponent_base: exponent_base(base_prob, m),
            m,
            n: k * m,
        })
    }
}

/// `prob^(−1/m)`, the per-variable growth factor of the sampling cost.
pub fn exponent_base(prob: f64, m: usize) -> f64 {
    prob.powf(-1.0 / m as f64)
}

/// Coefficients of the cubic whose largest root is the maximum success
/// probability for `a = (1, 2)` with one layer, highest degree first.
pub const P1_M2_CUBIC: [f64; 4] = [5832.0, -6804.0, 1472.0, -8.0];

pub fn p1_m2_cubic(x: f64) -> f64 {
    P1_M2_CUBIC.iter().fold(0.0, |acc, c| acc * x + c)
}

/// Largest real root of `5832x³ − 6804x² + 1472x − 8`.
///
/// The positive leading coefficient means the cubic is increasing beyond
/// its larger critical point, so the largest root lies between that point
/// and the Cauchy bound. Bisection on that bracket runs to machine precision.
pub fn exact_p1_m2_max() -> f64 {
    let [c3, c2, c1, c0] = P1_M2_CUBIC;
    // derivative 3c3 x² + 2c2 x + c1
    let (da, db, dc) = (3.0 * c3, 2.0 * c2, c1);
    let disc = db * db - 4.0 * da * dc;
    let mut lo = if disc > 0.0 {
        (-db + disc.sqrt()) / (2.0 * da)
    } else {
        -1.0 - (c2.abs().max(c1.abs()).max(c0.abs()) / c3.abs())
    };
    let mut hi = 1.0 + c2.abs().max(c1.abs()).max(c0.abs()) / c3.abs();
    debug_assert!(p1_m2_cubic(lo) <= 0.0 && p1_m2_cubic(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p1_m2_cubic(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `⟨φ(a1)|φ(a2)⟩` for the one-layer single-qubit states
/// `φ(a) = RX(2β_1) RZ(2γ_1 a) |+⟩`.
pub fn overlap_p1(a1: f64, a2: f64, params: &QaoaParams) -> Result<Complex> {
    if params.layers() != 1 {
        return invalid(format!("overlap is defined for one layer, got {}", params.layers()));
    }
    for a in [a1, a2] {
        if a == 0.0 || !a.is_finite() {
            return invalid(format!("coefficient must be finite and nonzero, got {a}"));
        }
    }
    let f1 = layered_factor(a1, &params.gammas, &params.betas);
    let f2 = layered_factor(a2, &params.gammas, &params.betas);
    Ok(f1.inner(&f2))
}

/// Residuals of the two first-layer constraints that a perfect two-layer
/// solution for `(1, 2, 3)` would have to satisfy:
/// `(sin2γ − 2·sin2γ·cos2γ, sin2γ − sin6γ)`.
pub fn sine_constraint_residuals(gamma1: f64) -> (f64, f64) {
    let s2 = (2.0 * gamma1).sin();
    let c2 = (2.0 * gamma1).cos();
    (s2 - 2.0 * s2 * c2, s2 - (6.0 * gamma1).sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn model(c: &[f64]) -> LinearIsing {
        LinearIsing::new(c.to_vec()).unwrap()
    }

    fn params(g: &[f64], b: &[f64]) -> QaoaParams {
        QaoaParams::new(g.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(QaoaParams::new(vec![0.1], vec![]).is_err());
        assert!(QaoaParams::new(vec![], vec![]).is_err());
        assert!(QaoaParams::new(vec![f64::NAN], vec![0.0]).is_err());
        let p = QaoaParams::from_flat(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(p.gammas(), &[1.0, 2.0]);
        assert_eq!(p.betas(), &[3.0, 4.0]);
        assert_eq!(p.to_flat(), vec![1.0, 2.0, 3.0, 4.0]);
        assert!(QaoaParams::from_flat(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn prob_examples() {
        assert!((prob_opt(&model(&[1.0, 2.0]), &params(&[0.0], &[0.0])) - 0.25).abs() <= 1e-15);
        let perfect = params(&[FRAC_PI_4], &[FRAC_PI_4]);
        assert!((prob_opt(&model(&[1.0]), &perfect) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn log_prob_matches_linear() {
        let m = model(&[1.0, -2.0, 3.5]);
        let p = params(&[0.4, 1.3], &[0.9, -0.2]);
        assert!((log_prob_opt(&m, &p).exp() - prob_opt(&m, &p)).abs() <= 1e-14);
        // huge replicated models underflow linearly but not in log space
        let big = model(&[1.0, 2.0]).replicate(20_000).unwrap();
        let q = params(&[0.4], &[0.9]);
        assert!(prob_opt(&big, &q) < 1e-300);
        let expected = 20_000.0 * prob_opt(&model(&[1.0, 2.0]), &q).ln();
        assert!((log_prob_opt(&big, &q) - expected).abs() <= 1e-8 * expected.abs());
    }

    #[test]
    fn replicated_examples() {
        let base = model(&[1.0, 2.0]);
        let p = params(&[0.4], &[0.9]);
        assert_eq!(prob_opt_replicated(&base, 1, &p).unwrap(), prob_opt(&base, &p));
        let direct = prob_opt(&model(&[1.0, 2.0, 1.0, 2.0, 1.0, 2.0]), &p);
        assert!((prob_opt_replicated(&base, 3, &p).unwrap() - direct).abs() <= 1e-12);
        let perfect = params(&[FRAC_PI_4], &[FRAC_PI_4]);
        assert!((prob_opt_replicated(&model(&[1.0]), 5, &perfect).unwrap() - 1.0).abs() <= 1e-12);
        assert!(prob_opt_replicated(&base, 0, &p).is_err());
    }

    #[test]
    fn runtime_examples() {
        let perfect = params(&[FRAC_PI_4], &[FRAC_PI_4]);
        let est = runtime_estimate(&model(&[1.0]), 1, &perfect).unwrap();
        assert!((est.exponent_base - 1.0).abs() <= 1e-12);
        assert!((est.expected_samples - 1.0).abs() <= 1e-12);

        let est = runtime_estimate(&model(&[1.0, 2.0]), 4, &params(&[0.4], &[0.9])).unwrap();
        assert_eq!(est.n, 8);
        assert_eq!(est.m, 2);
        assert!((est.expected_samples * est.prob_opt - 1.0).abs() <= 1e-12);
        assert!((est.exponent_base.powi(8) - est.expected_samples).abs() <= 1e-9 * est.expected_samples);

        // γ = π/4, β = −π/4 rotates a = 1 onto |1⟩
        let dead = params(&[FRAC_PI_4], &[-FRAC_PI_4]);
        assert!(prob_opt(&model(&[1.0]), &dead) < 1e-30);
        // tabulated bases for the p = 1 optima of (1,2) and (1,2,3)
        assert!((exponent_base(0.882385, 2) - 1.06456).abs() <= 5e-6);
        assert!((exponent_base(0.761904, 3) - 1.09488).abs() <= 5e-6);
    }

    #[test]
    fn degenerate_probability_errors() {
        assert!(matches!(
            RuntimeEstimate::from_base_prob(0.0, 2, 1),
            Err(Error::DegenerateProbability(_))
        ));
        assert!(RuntimeEstimate::from_base_prob(f64::NAN, 2, 1).is_err());
        let huge = RuntimeEstimate::from_base_prob(0.5, 1, 5000).unwrap();
        assert!(huge.expected_samples.is_infinite());
        assert!((huge.log_expected_samples - 5000.0 * 2.0_f64.ln()).abs() <= 1e-9);
    }

    #[test]
    fn cubic_root() {
        let x = exact_p1_m2_max();
        assert!((x - 0.882385).abs() <= 1e-6);
        assert!(p1_m2_cubic(x).abs() <= 1e-9);
        assert!(x < 1.0);
    }

    #[test]
    fn overlap_examples() {
        let p = params(&[0.3], &[1.234]);
        let ov = overlap_p1(1.0, 2.0, &p).unwrap();
        assert!((ov - Complex::new(0.3_f64.cos(), 0.0)).norm() <= 1e-12);
        let same = overlap_p1(2.0, 2.0, &p).unwrap();
        assert!((same - Complex::new(1.0, 0.0)).norm() <= 1e-12);
        let at_pi = overlap_p1(1.0, 2.0, &params(&[PI], &[0.77])).unwrap();
        assert!((at_pi - Complex::new(-1.0, 0.0)).norm() <= 1e-12);
        assert!(overlap_p1(1.0, 2.0, &params(&[0.1, 0.2], &[0.3, 0.4])).is_err());
    }

    #[test]
    fn at_gamma_multiple_of_pi_amplitude_is_plus_overlap() {
        for k in -2..=2 {
            let p = params(&[k as f64 * PI], &[0.77]);
            let amp = crate::gate::amplitude_to_bit(1.0, 0, p.gammas(), p.betas()).unwrap();
            assert!((amp.norm() - FRAC_1_SQRT_2).abs() <= 1e-12);
        }
    }

    #[test]
    fn sine_residual_examples() {
        for g in [FRAC_PI_6, -FRAC_PI_6] {
            let (r1, r2) = sine_constraint_residuals(g);
            assert!(r1.abs() <= 1e-12);
            assert!((r2.abs() - 3.0_f64.sqrt() / 2.0).abs() <= 1e-12);
        }
        assert_eq!(sine_constraint_residuals(0.0), (0.0, 0.0));
    }
}
