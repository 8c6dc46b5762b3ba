//! Multi-start Nelder–Mead with the standard coefficients.

use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;

use super::random_search::uniform_point;
use super::Objective;

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const INITIAL_EDGE: f64 = PI / 8.0;
const COLLAPSE_DIAMETER: f64 = 1e-10;

/// Restart from a fresh random vertex whenever the simplex collapses,
/// until the budget runs out.
pub(super) fn run(obj: &mut Objective<'_>, rng: &mut ChaCha8Rng) {
    while !obj.exhausted() {
        let start = uniform_point(obj.bounds, rng);
        if descend(obj, start, INITIAL_EDGE, usize::MAX).is_none() {
            return;
        }
    }
}

/// One descent on `−f` from an axis-aligned simplex with edge `edge`.
/// Stops on collapse or after `max_evals` evaluations; returns `None` when
/// the global budget ran out mid-way.
pub(super) fn descend(obj: &mut Objective<'_>, start: Vec<f64>, edge: f64, max_evals: usize) -> Option<()> {
    let dim = obj.dim();
    let stop_at = obj.used.saturating_add(max_evals);
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim + 1);
    simplex.push((-obj.eval(&start)?, start.clone()));
    for i in 0..dim {
        let mut x = start.clone();
        x[i] += edge;
        simplex.push((-obj.eval(&x)?, x));
    }

    let mut centroid = vec![0.0; dim];
    loop {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        if diameter(&simplex) < COLLAPSE_DIAMETER || obj.used >= stop_at {
            return Some(());
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for (_, x) in &simplex[..dim] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / dim as f64;
            }
        }
        let along = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, x)| c + t * (x - c)).collect()
        };

        let best = simplex[0].0;
        let second_worst = simplex[dim - 1].0;
        let (worst, worst_x) = simplex[dim].clone();

        let xr = along(-REFLECT, &worst_x);
        let hr = -obj.eval(&xr)?;
        if hr < best {
            let xe = along(EXPAND, &xr);
            let he = -obj.eval(&xe)?;
            simplex[dim] = if he < hr { (he, xe) } else { (hr, xr) };
            continue;
        }
        if hr < second_worst {
            simplex[dim] = (hr, xr);
            continue;
        }
        // outside contraction when the reflection beat the worst vertex, inside otherwise
        let xc = if hr < worst { along(CONTRACT, &xr) } else { along(CONTRACT, &worst_x) };
        let hc = -obj.eval(&xc)?;
        if hc < hr.min(worst) {
            simplex[dim] = (hc, xc);
            continue;
        }

        let anchor = simplex[0].1.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = anchor.iter().zip(&vertex.1).map(|(a, v)| a + SHRINK * (v - a)).collect();
            *vertex = (-obj.eval(&x)?, x);
        }
    }
}

fn diameter(simplex: &[(f64, Vec<f64>)]) -> f64 {
    let anchor = &simplex[0].1;
    simplex[1..]
        .iter()
        .map(|(_, x)| x.iter().zip(anchor).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}
