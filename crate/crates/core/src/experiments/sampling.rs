//! Monte Carlo check of the geometric sampling cost: measure the ansatz
//! until the optimum shows up and count the trials.
//!
//! The ansatz state is a product state, so one measurement is simulated by
//! independent per-qubit draws. That keeps the cost linear in `n`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::ising::LinearIsing;
use crate::probability::{log_prob_opt, qubit_factors, QaoaParams};

/// Below this success probability sampling is refused.
pub const MIN_SAMPLING_PROB: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub model: String,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub true_prob: f64,
    pub seed: u64,
    pub runs: usize,
    pub mean_trials: f64,
    /// Normal-approximation 95% half-width of `mean_trials`.
    pub ci95_halfwidth: f64,
    /// Trials needed by each run, in run order.
    pub trials: Vec<u64>,
}

impl SamplingReport {
    pub fn expected_trials(&self) -> f64 {
        1.0 / self.true_prob
    }

    /// One `run=<i> trials=<t>` line per run.
    pub fn records(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.trials.iter().enumerate() {
            writeln!(out, "run={} trials={}", i + 1, t).expect("writing to a String");
        }
        out
    }

    /// Flat `key=value` summary, fixed key order.
    pub fn summary(&self) -> String {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x:.17}")).collect::<Vec<_>>().join(",");
        format!(
            "model={}\ngamma={}\nbeta={}\nseed={}\nruns={}\ntrue_prob={:.12}\nexpected_trials={:.12}\nmean_trials={:.12}\nci95_halfwidth={:.12}\n",
            self.model,
            join(&self.gammas),
            join(&self.betas),
            self.seed,
            self.runs,
            self.true_prob,
            self.expected_trials(),
            self.mean_trials,
            self.ci95_halfwidth,
        )
    }
}

/// Repeat `runs` times: draw measurements until every qubit shows its
/// optimal bit, and record how many measurements that took.
pub fn sample_until_optimum(
    model: &LinearIsing,
    params: &QaoaParams,
    runs: usize,
    seed: u64,
) -> Result<SamplingReport> {
    if runs < 1 {
        return invalid("at least one sampling run is required");
    }
    let log_prob = log_prob_opt(model, params);
    if log_prob.is_nan() || log_prob < MIN_SAMPLING_PROB.ln() {
        return Err(Error::SamplingRefused(log_prob.exp()));
    }
    let targets = model.optimal_bits();
    let per_qubit: Vec<f64> = qubit_factors(model, params)
        .iter()
        .zip(&targets.0)
        .map(|(q, &b)| q.amplitude(b).norm_sqr())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials: Vec<u64> = (0..runs)
        .map(|_| {
            let mut count = 1u64;
            while !per_qubit.iter().all(|&q| rng.gen::<f64>() < q) {
                count += 1;
            }
            count
        })
        .collect();

    let n = runs as f64;
    let mean = trials.iter().map(|&t| t as f64).sum::<f64>() / n;
    let ci95_halfwidth = if runs > 1 {
        let var = trials.iter().map(|&t| (t as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0);
        1.96 * (var / n).sqrt()
    } else {
        0.0
    };
    Ok(SamplingReport {
        model: model.to_string(),
        gammas: params.gammas().to_vec(),
        betas: params.betas().to_vec(),
        true_prob: log_prob.exp(),
        seed,
        runs,
        mean_trials: mean,
        ci95_halfwidth,
        trials,
    })
}
