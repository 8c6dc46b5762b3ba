//! Derivative-free maximization of the success probability over the ansatz
//! angles.
//!
//! A point is the flat vector `[γ_1..γ_p, β_1..β_p]`. Every method sees the
//! objective through [`Objective`], which projects points into the search
//! box, enforces the evaluation budget and keeps the best point seen. The
//! reported optimum is therefore always a point that was actually
//! evaluated, and truncating the budget can only lower the result.

mod annealing;
mod differential_evolution;
mod nelder_mead;
mod random_search;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::ising::LinearIsing;
use crate::probability::{prob_opt_raw, QaoaParams};

pub const DEFAULT_BUDGET: usize = 20_000;
pub const DEFAULT_RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    NelderMead,
    DifferentialEvolution,
    SimulatedAnnealing,
    RandomSearch,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::NelderMead,
        Method::DifferentialEvolution,
        Method::SimulatedAnnealing,
        Method::RandomSearch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::NelderMead => "nelder-mead",
            Method::DifferentialEvolution => "differential-evolution",
            Method::SimulatedAnnealing => "simulated-annealing",
            Method::RandomSearch => "random-search",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Method::NelderMead => 1,
            Method::DifferentialEvolution => 2,
            Method::SimulatedAnnealing => 3,
            Method::RandomSearch => 4,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown optimizer method `{s}`")))
    }
}

/// One optimizer run configuration. `budget` counts objective evaluations
/// per restart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizerSpec {
    pub method: Method,
    pub budget: usize,
    pub seed: u64,
    pub restarts: usize,
}

impl OptimizerSpec {
    pub fn new(method: Method, budget: usize, seed: u64, restarts: usize) -> Result<Self> {
        let spec = Self { method, budget, seed, restarts };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_defaults(method: Method, seed: u64) -> Self {
        Self { method, budget: DEFAULT_BUDGET, seed, restarts: DEFAULT_RESTARTS }
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget < 1 {
            return invalid("optimizer budget must be at least 1");
        }
        if self.restarts < 1 {
            return invalid("optimizer restarts must be at least 1");
        }
        Ok(())
    }

    /// Single-line `key=value` form, e.g. `method=nelder-mead budget=20000 seed=1 restarts=8`.
    pub fn to_kv(&self) -> String {
        format!(
            "method={} budget={} seed={} restarts={}",
            self.method, self.budget, self.seed, self.restarts
        )
    }

    /// Parse whitespace-separated `key=value` pairs. `method` is required;
    /// the other keys fall back to the defaults.
    pub fn from_kv(s: &str) -> Result<Self> {
        let mut method = None;
        let mut budget = DEFAULT_BUDGET;
        let mut seed = 0;
        let mut restarts = DEFAULT_RESTARTS;
        for pair in s.split_whitespace() {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{pair}`")))?;
            let bad = |_| Error::InvalidArgument(format!("bad value for `{key}`: `{value}`"));
            match key {
                "method" => method = Some(value.parse()?),
                "budget" => budget = value.parse().map_err(bad)?,
                "seed" => seed = value.parse().map_err(bad)?,
                "restarts" => restarts = value.parse().map_err(bad)?,
                _ => return invalid(format!("unknown optimizer setting `{key}`")),
            }
        }
        let method = method.ok_or_else(|| Error::InvalidArgument("optimizer setting `method` is required".into()))?;
        Self::new(method, budget, seed, restarts)
    }
}

/// The four default methods, all with default budget and restarts.
pub fn default_portfolio(seed: u64) -> Vec<OptimizerSpec> {
    Method::ALL.into_iter().map(|m| OptimizerSpec::with_defaults(m, seed)).collect()
}

/// Parse a portfolio document: one spec per line, `#` starts a comment.
pub fn parse_portfolio(doc: &str) -> Result<Vec<OptimizerSpec>> {
    let specs = doc
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(OptimizerSpec::from_kv)
        .collect::<Result<Vec<_>>>()?;
    if specs.is_empty() {
        return invalid("portfolio document contains no optimizer specs");
    }
    Ok(specs)
}

/// Axis-aligned search region over `[γ, β]`. Periodic coordinates wrap,
/// the rest are clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub periodic: Vec<bool>,
}

impl SearchBox {
    /// `β_j ∈ [0, π)` always. `γ_j ∈ [0, π·L)` when every coefficient is a
    /// rational with denominator dividing `L ≤ 64`; otherwise `γ_j` is
    /// clamped to `[0, gamma_fallback]`.
    pub fn for_model(model: &LinearIsing, p: usize, gamma_fallback: f64) -> Self {
        let (gamma_upper, gamma_periodic) = match gamma_period_multiple(model.coeffs()) {
            Some(l) => (PI * l as f64, true),
            None => (gamma_fallback, false),
        };
        let mut upper = vec![gamma_upper; p];
        upper.extend(std::iter::repeat_n(PI, p));
        let mut periodic = vec![gamma_periodic; p];
        periodic.extend(std::iter::repeat_n(true, p));
        Self { lower: vec![0.0; 2 * p], upper, periodic }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn project(&self, x: &mut [f64]) {
        for (i, v) in x.iter_mut().enumerate() {
            let (lo, hi) = (self.lower[i], self.upper[i]);
            *v = if self.periodic[i] {
                let w = (*v - lo).rem_euclid(hi - lo);
                // rem_euclid can round up to the width itself
                if w >= hi - lo { lo } else { lo + w }
            } else {
                v.clamp(lo, hi)
            };
        }
    }
}

/// Smallest `L ≤ 64` such that `L·a` is an integer for every coefficient.
fn gamma_period_multiple(coeffs: &[f64]) -> Option<u64> {
    fn lcm(a: u64, b: u64) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        a / gcd(a, b) * b
    }
    let mut l = 1u64;
    for &a in coeffs {
        let d = (1..=64u64).find(|&d| {
            let x = a * d as f64;
            (x - x.round()).abs() <= 1e-9 * x.abs().max(1.0)
        })?;
        l = lcm(l, d);
        if l > 64 {
            return None;
        }
    }
    Some(l)
}

/// Budgeted objective with best-so-far tracking.
pub(crate) struct Objective<'a> {
    coeffs: &'a [f64],
    layers: usize,
    pub(crate) bounds: &'a SearchBox,
    budget: usize,
    used: usize,
    best_value: f64,
    best_point: Vec<f64>,
    scratch: Vec<f64>,
}

impl<'a> Objective<'a> {
    fn new(coeffs: &'a [f64], bounds: &'a SearchBox, budget: usize) -> Self {
        Self {
            coeffs,
            layers: bounds.dim() / 2,
            bounds,
            budget,
            used: 0,
            best_value: f64::NEG_INFINITY,
            best_point: Vec::new(),
            scratch: vec![0.0; bounds.dim()],
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    /// Evaluate at the projection of `x`. Returns `None` once the budget is spent.
    pub(crate) fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.exhausted() {
            return None;
        }
        self.used += 1;
        self.scratch.copy_from_slice(x);
        self.bounds.project(&mut self.scratch);
        let (g, b) = self.scratch.split_at(self.layers);
        let value = prob_opt_raw(self.coeffs, g, b);
        if value > self.best_value {
            self.best_value = value;
            self.best_point.clone_from(&self.scratch);
        }
        Some(value)
    }

    pub(crate) fn best_point(&self) -> &[f64] {
        &self.best_point
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_value: f64,
    pub best_gammas: Vec<f64>,
    pub best_betas: Vec<f64>,
    pub evaluations_used: usize,
    pub method: Method,
}

impl OptimizationResult {
    pub fn params(&self) -> QaoaParams {
        QaoaParams::new(self.best_gammas.clone(), self.best_betas.clone())
            .expect("optimizer results always carry p >= 1 finite angle pairs")
    }
}

fn mix(seed: u64, salt: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent seed from a master seed and a label.
pub fn derive_seed(master: u64, label: u64) -> u64 {
    mix(master, label)
}

/// Maximize over the default search box of `model`.
pub fn maximize(model: &LinearIsing, p: usize, spec: &OptimizerSpec) -> Result<OptimizationResult> {
    let bounds = SearchBox::for_model(model, p, 2.0 * PI);
    maximize_in(model, p, spec, &bounds)
}

pub fn maximize_in(
    model: &LinearIsing,
    p: usize,
    spec: &OptimizerSpec,
    bounds: &SearchBox,
) -> Result<OptimizationResult> {
    if p < 1 {
        return invalid("layer count p must be at least 1");
    }
    spec.validate()?;
    if bounds.dim() != 2 * p {
        return invalid(format!("search box has dimension {}, expected {}", bounds.dim(), 2 * p));
    }
    let base_seed = mix(spec.seed, spec.method.tag());
    let runs: Vec<(f64, Vec<f64>, usize)> = (0..spec.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
            rng.set_stream(restart as u64);
            let mut obj = Objective::new(model.coeffs(), bounds, spec.budget);
            match spec.method {
                Method::NelderMead => nelder_mead::run(&mut obj, &mut rng),
                Method::DifferentialEvolution => {
                    differential_evolution::run(&mut obj, &mut rng);
                }
                Method::SimulatedAnnealing => annealing::run(&mut obj, &mut rng),
                Method::RandomSearch => random_search::run(&mut obj, &mut rng),
            }
            (obj.best_value, obj.best_point().to_vec(), obj.used)
        })
        .collect();

    let evaluations_used = runs.iter().map(|r| r.2).sum();
    // first restart wins ties
    let (best_value, best_point, _) = runs
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("restarts >= 1");
    let (g, b) = best_point.split_at(p);
    Ok(OptimizationResult {
        best_value,
        best_gammas: g.to_vec(),
        best_betas: b.to_vec(),
        evaluations_used,
        method: spec.method,
    })
}

/// Run every spec and keep the largest result; the earliest spec wins ties.
pub fn portfolio_maximize(model: &LinearIsing, p: usize, specs: &[OptimizerSpec]) -> Result<OptimizationResult> {
    if specs.is_empty() {
        return invalid("optimizer portfolio is empty");
    }
    let bounds = SearchBox::for_model(model, p, 2.0 * PI);
    let results = specs
        .par_iter()
        .map(|spec| maximize_in(model, p, spec, &bounds))
        .collect::<Result<Vec<_>>>()?;
    Ok(results
        .into_iter()
        .reduce(|a, b| if b.best_value > a.best_value { b } else { a })
        .expect("non-empty portfolio"))
}
