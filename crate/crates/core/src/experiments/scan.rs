//! Does a fixed layer count `p` fail to recover the optimum of `(1..m)`?
//!
//! A probability below one is only evidence: the optimizer may simply have
//! missed a perfect point. Likewise an at-one report may be numerical luck.

use rayon::prelude::*;

use super::tables::{best_cell, cell_specs, AT_ONE_TOLERANCE};
use crate::error::{invalid, Result};
use crate::ising::LinearIsing;
use crate::optimize::{portfolio_maximize, OptimizerSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub m: usize,
    pub best_prob: f64,
    pub below_one: bool,
    /// At one although the pattern has more distinct values than layers.
    pub anomaly: bool,
}

/// Scan `(1..m)` for `m = 1..=m_max` at `p` layers. Uses the same per-cell
/// seeds as the probability table, so the two agree cell by cell.
pub fn conjecture_scan(p: usize, m_max: usize, specs: &[OptimizerSpec]) -> Result<Vec<ScanRow>> {
    conjecture_scan_with_tolerance(p, m_max, specs, AT_ONE_TOLERANCE)
}

pub fn conjecture_scan_with_tolerance(
    p: usize,
    m_max: usize,
    specs: &[OptimizerSpec],
    tolerance: f64,
) -> Result<Vec<ScanRow>> {
    if p < 1 || m_max < 1 {
        return invalid("scan needs p >= 1 and m_max >= 1");
    }
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let cell = best_cell(m, p, specs)?;
            Ok(row(m, p, cell.prob, tolerance))
        })
        .collect()
}

/// Scan arbitrary coefficient patterns at `p` layers. `m` in each row is
/// the pattern's index in `patterns`, starting at 1.
pub fn scan_patterns(
    patterns: &[LinearIsing],
    p: usize,
    specs: &[OptimizerSpec],
    tolerance: f64,
) -> Result<Vec<(LinearIsing, ScanRow)>> {
    patterns
        .par_iter()
        .enumerate()
        .map(|(i, model)| {
            let best = portfolio_maximize(model, p, &cell_specs(specs, i + 1, p))?;
            let mut r = row(model.len(), p, best.best_value, tolerance);
            r.m = i + 1;
            r.anomaly = !r.below_one && distinct_values(model) > p;
            Ok((model.clone(), r))
        })
        .collect()
}

fn row(m: usize, p: usize, best_prob: f64, tolerance: f64) -> ScanRow {
    let below_one = best_prob < 1.0 - tolerance;
    ScanRow { m, best_prob, below_one, anomaly: !below_one && m > p }
}

fn distinct_values(model: &LinearIsing) -> usize {
    let mut v: Vec<f64> = model.coeffs().iter().map(|a| a.abs()).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.len()
}
