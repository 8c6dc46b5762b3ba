//! `qaoa-linear`: success probabilities, optimization, tables, sampling and
//! the sign-bit circuit from the command line.
//!
//! Every command writes its resolved configuration to stderr as
//! `# key=value` lines before any result.
//!
//! Exit status: 0 success, 1 failed check, 2 usage or invalid argument,
//! 3 I/O error.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qaoa_linear::experiments::circuit::emit_linear_solver_circuit;
use qaoa_linear::experiments::sampling::sample_until_optimum;
use qaoa_linear::experiments::scan::{conjecture_scan_with_tolerance, scan_patterns, ScanRow};
use qaoa_linear::experiments::tables::{build_tables, AT_ONE_TOLERANCE};
use qaoa_linear::optimize::{
    parse_portfolio, portfolio_maximize, Method, DEFAULT_BUDGET, DEFAULT_RESTARTS,
};
use qaoa_linear::probability::exponent_base;
use qaoa_linear::{prob_opt, verify, LinearIsing, OptimizerSpec, QaoaParams};

const THREADS_ENV: &str = "QAOA_LINEAR_THREADS";

#[derive(Parser, Debug)]
#[command(name = "qaoa-linear", version, about = "QAOA success probabilities on linear Ising models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Probability of sampling the optimum at given angles.
    Prob {
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        /// Comma-separated angles: radians or multiples of pi such as `pi/4`, `-2pi/3`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Maximize the success probability over the angles.
    Optimize {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        p: usize,
        /// Run a single method instead of the default portfolio.
        #[arg(long, conflicts_with = "config")]
        method: Option<String>,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Best probability and exponent base for `(1..m)`, m ≤ M, p ≤ P, as CSV.
    Table {
        #[arg(long = "M")]
        max_m: usize,
        #[arg(long = "P")]
        max_p: usize,
        #[command(flatten)]
        opt: OptimizerArgs,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the ansatz until the optimum appears and average the trial counts.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        /// Layers for `--auto`.
        #[arg(long, requires = "auto")]
        p: Option<usize>,
        /// Use the optimized angles instead of `--gamma`/`--beta`.
        #[arg(long, requires = "p", conflicts_with_all = ["gamma", "beta"])]
        auto: bool,
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        gamma: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "gamma")]
        beta: Option<String>,
        #[arg(long, default_value_t = 1000)]
        runs: usize,
        #[command(flatten)]
        opt: OptimizerArgs,
        /// Write one `run=<i> trials=<t>` line per run to this file.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Emit the sign-bit circuit as text.
    EmitCircuit {
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[arg(long, default_value_t = 8)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the closed-form checks.
    Verify,
    /// For `(1..m)`, m ≤ m-max, report whether p layers stay below probability one.
    Scan {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 7)]
        m_max: usize,
        #[arg(long, default_value_t = AT_ONE_TOLERANCE)]
        tolerance: f64,
        /// Scan these coefficient patterns instead of `(1..m)`; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        pattern: Vec<String>,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ModelArgs {
    /// Comma-separated coefficients, e.g. `3,-1`.
    #[arg(long, allow_hyphen_values = true)]
    model: Option<String>,
    /// Shorthand for the model `(1, 2, ..., m)`.
    #[arg(long)]
    m: Option<usize>,
}

impl ModelArgs {
    fn resolve(&self) -> Result<LinearIsing> {
        match (&self.model, self.m) {
            (Some(s), _) => Ok(s.parse()?),
            (None, Some(m)) => Ok(LinearIsing::consecutive(m)?),
            (None, None) => bail!(qaoa_linear::Error::InvalidArgument("a model is required".into())),
        }
    }
}

#[derive(Args, Debug)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluations per restart.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    /// Portfolio file: one `method=... budget=... seed=... restarts=...` line per optimizer.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl OptimizerArgs {
    fn specs(&self, method: Option<&str>) -> Result<Vec<OptimizerSpec>> {
        if let Some(path) = &self.config {
            let doc = read(path)?;
            return Ok(parse_portfolio(&doc)?);
        }
        let methods = match method {
            Some(name) => vec![name.parse::<Method>()?],
            None => Method::ALL.to_vec(),
        };
        methods
            .into_iter()
            .map(|m| Ok(OptimizerSpec::new(m, self.budget, self.seed, self.restarts)?))
            .collect()
    }
}

#[derive(Debug)]
struct CheckFailed(usize);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<CheckFailed>().is_some() {
        1
    } else if err.downcast_ref::<std::io::Error>().is_some() {
        3
    } else {
        2
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| qaoa_linear::Error::InvalidArgument(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Prob { model, gamma, beta } => {
            let model: LinearIsing = model.parse()?;
            let params = QaoaParams::new(parse_angles(&gamma)?, parse_angles(&beta)?)?;
            config(&[
                ("command", "prob".into()),
                ("model", model.to_string()),
                ("gamma", join(params.gammas())),
                ("beta", join(params.betas())),
            ]);
            println!("{}", sig12(prob_opt(&model, &params)));
        }
        Command::Optimize { model, p, method, opt } => {
            let model = model.resolve()?;
            let specs = opt.specs(method.as_deref())?;
            let mut entries = vec![("command", "optimize".to_string()), ("model", model.to_string()), ("p", p.to_string())];
            entries.extend(specs.iter().map(|s| ("optimizer", s.to_kv())));
            config(&entries);
            let best = portfolio_maximize(&model, p, &specs)?;
            println!("best_prob={}", sig12(best.best_value));
            println!("base={}", sig12(exponent_base(best.best_value, model.len())));
            println!("method={}", best.method);
            println!("evaluations={}", best.evaluations_used);
            println!("gamma={}", join(&best.best_gammas));
            println!("beta={}", join(&best.best_betas));
        }
        Command::Table { max_m, max_p, opt, out } => {
            let specs = opt.specs(None)?;
            let mut entries = vec![
                ("command", "table".to_string()),
                ("M", max_m.to_string()),
                ("P", max_p.to_string()),
                ("seed", opt.seed.to_string()),
                ("out", out.as_ref().map_or("-".into(), |p| p.display().to_string())),
            ];
            entries.extend(specs.iter().map(|s| ("optimizer", s.to_kv())));
            config(&entries);
            let table = build_tables(max_m, max_p, &specs)?;
            let anomalies: Vec<String> = table
                .anomalies()
                .map(|c| format!("anomaly m={} p={} prob={:.6} (at one with m > p)", c.m, c.p, c.prob))
                .collect();
            let summary = format!("cells={}\nanomalies={}\n", table.cells.len(), anomalies.len());
            match out {
                Some(path) => {
                    write(&path, &table.to_csv())?;
                    print!("{summary}");
                    anomalies.iter().for_each(|a| println!("{a}"));
                }
                None => {
                    print!("{}", table.to_csv());
                    eprint!("{summary}");
                    anomalies.iter().for_each(|a| eprintln!("{a}"));
                }
            }
        }
        Command::Sample { model, p, auto, gamma, beta, runs, opt, records } => {
            let model = model.resolve()?;
            let mut entries = vec![
                ("command", "sample".to_string()),
                ("model", model.to_string()),
                ("runs", runs.to_string()),
                ("seed", opt.seed.to_string()),
            ];
            let params = match (auto, gamma, beta) {
                (true, _, _) => {
                    let p = p.expect("clap enforces --p with --auto");
                    let specs = opt.specs(None)?;
                    entries.push(("p", p.to_string()));
                    entries.extend(specs.iter().map(|s| ("optimizer", s.to_kv())));
                    config(&entries);
                    portfolio_maximize(&model, p, &specs)?.params()
                }
                (false, Some(g), Some(b)) => {
                    let params = QaoaParams::new(parse_angles(&g)?, parse_angles(&b)?)?;
                    config(&entries);
                    params
                }
                _ => bail!(qaoa_linear::Error::InvalidArgument(
                    "sample needs --gamma and --beta, or --p with --auto".into()
                )),
            };
            let report = sample_until_optimum(&model, &params, runs, opt.seed)?;
            if let Some(path) = records {
                write(&path, &report.records())?;
            }
            print!("{}", report.summary());
        }
        Command::EmitCircuit { model, width, out } => {
            let model: LinearIsing = model.parse()?;
            config(&[
                ("command", "emit-circuit".into()),
                ("model", model.to_string()),
                ("width", width.to_string()),
                ("out", out.as_ref().map_or("-".into(), |p| p.display().to_string())),
            ]);
            let text = emit_linear_solver_circuit(&model, width)?.to_string();
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify => {
            config(&[("command", "verify".into())]);
            let outcomes = verify::run_all();
            for c in &outcomes {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = outcomes.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CheckFailed(failed).into());
            }
        }
        Command::Scan { p, m_max, tolerance, pattern, opt } => {
            let specs = opt.specs(None)?;
            let mut entries = vec![
                ("command", "scan".to_string()),
                ("p", p.to_string()),
                ("tolerance", tolerance.to_string()),
                ("seed", opt.seed.to_string()),
            ];
            if pattern.is_empty() {
                entries.push(("m_max", m_max.to_string()));
            } else {
                entries.extend(pattern.iter().map(|s| ("pattern", s.clone())));
            }
            entries.extend(specs.iter().map(|s| ("optimizer", s.to_kv())));
            config(&entries);
            if pattern.is_empty() {
                println!("m,best_prob,below_one,anomaly");
                for r in conjecture_scan_with_tolerance(p, m_max, &specs, tolerance)? {
                    println!("{}", scan_line(&r.m.to_string(), &r));
                }
            } else {
                let models = pattern.iter().map(|s| s.parse()).collect::<qaoa_linear::Result<Vec<LinearIsing>>>()?;
                println!("pattern,best_prob,below_one,anomaly");
                for (model, r) in scan_patterns(&models, p, &specs, tolerance)? {
                    println!("{}", scan_line(&format!("\"{model}\""), &r));
                }
            }
        }
    }
    Ok(())
}

fn scan_line(label: &str, r: &ScanRow) -> String {
    format!("{label},{:.6},{},{}", r.best_prob, r.below_one, r.anomaly)
}

fn config(entries: &[(&str, String)]) {
    for (k, v) in entries {
        eprintln!("# {k}={v}");
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Twelve significant digits, switching to scientific notation for very
/// small magnitudes.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 {
        format!("{x:.11e}")
    } else {
        format!("{x:.*}", (11 - exp).max(0) as usize)
    }
}

fn parse_angles(list: &str) -> Result<Vec<f64>> {
    list.split(',').map(|s| parse_angle(s.trim())).collect()
}

/// Decimal radians, or `[±][c][*]pi[/d]` with `π` accepted for `pi`.
fn parse_angle(s: &str) -> Result<f64> {
    let bad = || qaoa_linear::Error::InvalidArgument(format!("cannot parse angle `{s}`"));
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(bad().into()) };
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let coeff = numer.strip_suffix("pi").or_else(|| numer.strip_suffix('π')).ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let c = if coeff.is_empty() { 1.0 } else { coeff.parse::<f64>().map_err(|_| bad())? };
    let d = match denom {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None => 1.0,
    };
    let v = sign * c * PI / d;
    if v.is_finite() && d != 0.0 {
        Ok(v)
    } else {
        Err(bad().into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn angle_literals() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi/4").unwrap(), FRAC_PI_4);
        assert_eq!(parse_angle("π/4").unwrap(), FRAC_PI_4);
        assert!((parse_angle("-pi/6").unwrap() + FRAC_PI_6).abs() < 1e-15);
        assert!((parse_angle("2pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((parse_angle("2*π").unwrap() - 2.0 * PI).abs() < 1e-15);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        for bad in ["", "pi/0", "tau", "NaN", "inf", "1/4", "xpi"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.25), "0.250000000000");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.8823847568), "0.882384756800");
        assert_eq!(sig12(1.5e-7), "1.50000000000e-7");
        assert_eq!(sig12(0.0), "0");
    }
}
