//! Random multistart: uniform samples of the search box, each batch
//! followed by a short Nelder–Mead polish of the batch's best sample.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::nelder_mead::descend;
use super::{Objective, SearchBox};

const SAMPLES_PER_DIM: usize = 20;
const POLISH_EVALS_PER_DIM: usize = 100;
const POLISH_EDGE_FRACTION: f64 = 1.0 / 32.0;

pub(super) fn uniform_point(bounds: &SearchBox, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..bounds.dim())
        .map(|i| bounds.lower[i] + rng.gen::<f64>() * bounds.width(i))
        .collect()
}

pub(super) fn run(obj: &mut Objective<'_>, rng: &mut ChaCha8Rng) {
    let dim = obj.dim();
    let edge = (0..dim).map(|i| obj.bounds.width(i)).fold(f64::INFINITY, f64::min) * POLISH_EDGE_FRACTION;
    loop {
        let mut batch_best: Option<(f64, Vec<f64>)> = None;
        for _ in 0..SAMPLES_PER_DIM * dim {
            let x = uniform_point(obj.bounds, rng);
            let Some(f) = obj.eval(&x) else { return };
            if batch_best.as_ref().is_none_or(|(b, _)| f > *b) {
                batch_best = Some((f, x));
            }
        }
        let (_, start) = batch_best.expect("batch is never empty");
        if descend(obj, start, edge, POLISH_EVALS_PER_DIM * dim).is_none() {
            return;
        }
    }
}
