//! Best success probability over a grid of pattern lengths `m` and layer
//! counts `p`, and the exponent base derived from each cell.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::ising::LinearIsing;
use crate::optimize::{derive_seed, portfolio_maximize, Method, OptimizerSpec};
use crate::probability::exponent_base;

/// Probabilities at or above `1 − AT_ONE_TOLERANCE` count as perfect recovery.
pub const AT_ONE_TOLERANCE: f64 = 1e-4;

pub const CSV_HEADER: &str = "m,p,prob,base";

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub m: usize,
    pub p: usize,
    pub prob: f64,
    pub base: f64,
    pub method: Method,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl TableCell {
    /// Perfect recovery with fewer layers than distinct coefficients.
    pub fn is_anomalous(&self) -> bool {
        self.m > self.p && self.prob >= 1.0 - AT_ONE_TOLERANCE
    }
}

/// Grid over `m ∈ 1..=max_m`, `p ∈ 1..=max_p`, stored `m`-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    pub max_m: usize,
    pub max_p: usize,
    pub cells: Vec<TableCell>,
}

impl ProbTable {
    pub fn cell(&self, m: usize, p: usize) -> Option<&TableCell> {
        if m == 0 || p == 0 || m > self.max_m || p > self.max_p {
            return None;
        }
        self.cells.get((m - 1) * self.max_p + (p - 1))
    }

    pub fn prob(&self, m: usize, p: usize) -> Option<f64> {
        self.cell(m, p).map(|c| c.prob)
    }

    pub fn base(&self, m: usize, p: usize) -> Option<f64> {
        self.cell(m, p).map(|c| c.base)
    }

    pub fn anomalies(&self) -> impl Iterator<Item = &TableCell> {
        self.cells.iter().filter(|c| c.is_anomalous())
    }

    /// `m,p,prob,base` with 6 and 5 decimals, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * (self.cells.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            writeln!(out, "{},{},{:.6},{:.5}", c.m, c.p, c.prob, c.base).expect("writing to a String");
        }
        out
    }
}

/// The portfolio used for cell `(m, p)`: each spec's seed is mixed with the
/// cell coordinates so cells are independent but reproducible.
pub fn cell_specs(specs: &[OptimizerSpec], m: usize, p: usize) -> Vec<OptimizerSpec> {
    let label = ((m as u64) << 32) | p as u64;
    specs
        .iter()
        .map(|s| OptimizerSpec { seed: derive_seed(s.seed, label), ..s.clone() })
        .collect()
}

/// Best probability for the consecutive model `(1..m)` with `p` layers.
pub fn best_cell(m: usize, p: usize, specs: &[OptimizerSpec]) -> Result<TableCell> {
    let model = LinearIsing::consecutive(m)?;
    let best = portfolio_maximize(&model, p, &cell_specs(specs, m, p))?;
    Ok(TableCell {
        m,
        p,
        prob: best.best_value,
        base: exponent_base(best.best_value, m),
        method: best.method,
        gammas: best.best_gammas,
        betas: best.best_betas,
    })
}

pub fn build_tables(max_m: usize, max_p: usize, specs: &[OptimizerSpec]) -> Result<ProbTable> {
    if max_m < 1 || max_p < 1 {
        return invalid("table dimensions must be at least 1");
    }
    if specs.is_empty() {
        return invalid("optimizer portfolio is empty");
    }
    let coords: Vec<(usize, usize)> = (1..=max_m).flat_map(|m| (1..=max_p).map(move |p| (m, p))).collect();
    let cells = coords
        .into_par_iter()
        .map(|(m, p)| best_cell(m, p, specs))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbTable { max_m, max_p, cells })
}
