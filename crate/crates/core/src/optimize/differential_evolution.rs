//! DE/rand/1/bin with box projection. Every few generations the best
//! member is refined by a short Nelder–Mead run, which DE alone does slowly.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::nelder_mead::descend;
use super::random_search::uniform_point;
use super::Objective;

const POPULATION_PER_DIM: usize = 15;
const DIFFERENTIAL_WEIGHT: f64 = 0.7;
const CROSSOVER_RATE: f64 = 0.9;
const POLISH_EVERY: usize = 10;
const POLISH_EVALS_PER_DIM: usize = 100;
const POLISH_EDGE_FRACTION: f64 = 1.0 / 256.0;

pub(super) fn run(obj: &mut Objective<'_>, rng: &mut ChaCha8Rng) -> Option<()> {
    let dim = obj.dim();
    let size = POPULATION_PER_DIM * dim;
    let mut population = Vec::with_capacity(size);
    for _ in 0..size {
        let mut x = uniform_point(obj.bounds, rng);
        let f = obj.eval(&x)?;
        obj.bounds.project(&mut x);
        population.push((f, x));
    }

    let edge = (0..dim).map(|i| obj.bounds.width(i)).fold(f64::INFINITY, f64::min) * POLISH_EDGE_FRACTION;
    let mut next = population.clone();
    for generation in 1.. {
        if generation % POLISH_EVERY == 0 {
            let best = (0..size).max_by(|&a, &b| population[a].0.total_cmp(&population[b].0)).expect("non-empty");
            descend(obj, population[best].1.clone(), edge, POLISH_EVALS_PER_DIM * dim)?;
            if obj.best_value > population[best].0 {
                population[best] = (obj.best_value, obj.best_point().to_vec());
            }
        }
        for (i, slot) in next.iter_mut().enumerate() {
            let picks = loop {
                let idx = sample(rng, size, 3);
                if !idx.iter().any(|j| j == i) {
                    break [idx.index(0), idx.index(1), idx.index(2)];
                }
            };
            let [r1, r2, r3] = picks.map(|j| &population[j].1);
            let forced = rng.gen_range(0..dim);
            let mut trial = population[i].1.clone();
            for d in 0..dim {
                if d == forced || rng.gen::<f64>() < CROSSOVER_RATE {
                    trial[d] = r1[d] + DIFFERENTIAL_WEIGHT * (r2[d] - r3[d]);
                }
            }
            obj.bounds.project(&mut trial);
            let f = obj.eval(&trial)?;
            *slot = if f >= population[i].0 { (f, trial) } else { population[i].clone() };
        }
        std::mem::swap(&mut population, &mut next);
    }
    Some(())
}
