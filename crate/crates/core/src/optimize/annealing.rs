//! Simulated annealing with Gaussian proposals.
//!
//! The step size and temperature decay geometrically over a cycle whose
//! length depends only on the dimension. Each cycle ends with a short
//! Nelder–Mead polish of the best point, and the next cycle restarts from
//! there. The schedule does not depend on the total budget, so a larger
//! budget only extends the trajectory.

use std::f64::consts::FRAC_PI_4;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::nelder_mead::descend;
use super::random_search::uniform_point;
use super::Objective;

const CYCLE_LEN_PER_DIM: usize = 200;
const POLISH_EVALS_PER_DIM: usize = 100;
const POLISH_EDGE: f64 = 1e-3;
const SIGMA_START: f64 = FRAC_PI_4;
const SIGMA_END: f64 = 1e-4;
const TEMP_START: f64 = 0.05;
const TEMP_END: f64 = 1e-6;

pub(super) fn run(obj: &mut Objective<'_>, rng: &mut ChaCha8Rng) {
    let dim = obj.dim();
    let cycle_len = CYCLE_LEN_PER_DIM * dim;
    let sigma_decay = (SIGMA_END / SIGMA_START).powf(1.0 / cycle_len as f64);
    let temp_decay = (TEMP_END / TEMP_START).powf(1.0 / cycle_len as f64);

    let mut current = uniform_point(obj.bounds, rng);
    let Some(mut current_f) = obj.eval(&current) else { return };
    obj.bounds.project(&mut current);
    loop {
        let (mut sigma, mut temp) = (SIGMA_START, TEMP_START);
        for _ in 0..cycle_len {
            let mut proposal: Vec<f64> = current
                .iter()
                .map(|x| x + sigma * rng.sample::<f64, _>(StandardNormal))
                .collect();
            obj.bounds.project(&mut proposal);
            let Some(f) = obj.eval(&proposal) else { return };
            if f >= current_f || rng.gen::<f64>() < ((f - current_f) / temp).exp() {
                current = proposal;
                current_f = f;
            }
            sigma *= sigma_decay;
            temp *= temp_decay;
        }
        if descend(obj, obj.best_point().to_vec(), POLISH_EDGE, POLISH_EVALS_PER_DIM * dim).is_none() {
            return;
        }
        current = obj.best_point().to_vec();
        current_f = obj.best_value;
    }
}
