//! Closed-form identities checked numerically. Each check is
//! self-contained and seeded, so a run is reproducible.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_6, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gate::{amplitude_to_bit, Complex};
use crate::ising::LinearIsing;
use crate::probability::{
    exact_p1_m2_max, overlap_p1, p1_m2_cubic, prob_opt, prob_opt_replicated, qubit_factors,
    sine_constraint_residuals, QaoaParams,
};
use crate::statevector::{expectation, outcome_probability, run_ansatz};

const CHECK_SEED: u64 = 0x5eed_0fc0_ffee;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self { name, passed, detail }
    }
}

pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        overlap_identity(),
        p1_m2_exact(),
        sine_constraints(),
        replication_law(),
        oracle_equivalence(),
        zero_angle_baseline(),
        sign_flip(),
    ]
}

fn rng(salt: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    r.set_stream(salt);
    r
}

fn random_params(rng: &mut ChaCha8Rng, p: usize) -> QaoaParams {
    let g = (0..p).map(|_| rng.gen_range(-PI..PI)).collect();
    let b = (0..p).map(|_| rng.gen_range(-PI..PI)).collect();
    QaoaParams::new(g, b).expect("p >= 1 finite angles")
}

fn random_model(rng: &mut ChaCha8Rng, n: usize) -> LinearIsing {
    let c = (0..n)
        .map(|_| {
            let mag = rng.gen_range(0.1..5.0);
            if rng.gen_bool(0.5) { mag } else { -mag }
        })
        .collect();
    LinearIsing::new(c).expect("nonzero coefficients")
}

/// `⟨φ(1)|φ(2)⟩ = cos γ_1` at one layer, and `|⟨0|φ⟩| = 1/√2` when `γ_1 = kπ`.
pub fn overlap_identity() -> CheckOutcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = random_params(&mut r, 1);
        let ov = overlap_p1(1.0, 2.0, &p).expect("one layer");
        worst = worst.max((ov - Complex::new(p.gammas()[0].cos(), 0.0)).norm());
    }
    let mut branch: f64 = 0.0;
    for k in -3..=3 {
        let beta = r.gen_range(-PI..PI);
        let amp = amplitude_to_bit(1.0, 0, &[k as f64 * PI], &[beta]).expect("valid layer");
        branch = branch.max((amp.norm() - FRAC_1_SQRT_2).abs());
    }
    CheckOutcome::new(
        "overlap-identity",
        worst <= 1e-12 && branch <= 1e-12,
        format!("max |overlap - cos g1| = {worst:.3e}, max ||<0|psi(k pi)>| - 1/sqrt2| = {branch:.3e}"),
    )
}

pub fn p1_m2_exact() -> CheckOutcome {
    let root = exact_p1_m2_max();
    let residual = p1_m2_cubic(root);
    CheckOutcome::new(
        "p1-m2-exact",
        (root - 0.882385).abs() <= 1e-6 && residual.abs() <= 1e-9 && root < 1.0,
        format!("root = {root:.9}, cubic(root) = {residual:.3e}"),
    )
}

pub fn sine_constraints() -> CheckOutcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for g in [FRAC_PI_6, -FRAC_PI_6] {
        let (r1, r2) = sine_constraint_residuals(g);
        ok &= r1.abs() <= 1e-12 && r2.abs() >= 0.8;
        detail.push(format!("g1 = {g:+.6}: first = {r1:.3e}, second = {r2:+.6}"));
    }
    CheckOutcome::new("sine-constraints", ok, detail.join("; "))
}

/// `Pr(a^k) = Pr(a)^k` for `k = 1..=8`, comparing the replicated model
/// against the power of the base probability.
pub fn replication_law() -> CheckOutcome {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for k in 1..=8 {
        for _ in 0..10 {
            let m = r.gen_range(1..=4);
            let base = random_model(&mut r, m);
            let layers = r.gen_range(1..=3);
        let p = random_params(&mut r, layers);
            let direct = prob_opt(&base.replicate(k).expect("k >= 1"), &p);
            let power = prob_opt_replicated(&base, k, &p).expect("k >= 1");
            worst = worst.max((direct - power).abs());
        }
    }
    CheckOutcome::new("replication-law", worst <= 1e-12, format!("k = 1..8, max deviation {worst:.3e}"))
}

/// Product formula against the dense simulation, for the optimum
/// probability and the energy expectation.
pub fn oracle_equivalence() -> CheckOutcome {
    let mut r = rng(5);
    let (mut prob_dev, mut energy_dev): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let n = r.gen_range(1..=10);
        let model = random_model(&mut r, n);
        let layers = r.gen_range(1..=3);
        let p = random_params(&mut r, layers);
        let state = run_ansatz(&model, &p).expect("n <= 10");
        let dense = outcome_probability(&state, &model.optimal_bits()).expect("matching length");
        prob_dev = prob_dev.max((dense - prob_opt(&model, &p)).abs());
        let factored: f64 = model
            .coeffs()
            .iter()
            .zip(qubit_factors(&model, &p))
            .map(|(a, q)| a * q.z_expectation())
            .sum();
        energy_dev = energy_dev.max((expectation(&model, &state).expect("matching length") - factored).abs());
    }
    CheckOutcome::new(
        "oracle-equivalence",
        prob_dev <= 1e-10 && energy_dev <= 1e-10,
        format!("50 instances: max probability deviation {prob_dev:.3e}, max energy deviation {energy_dev:.3e}"),
    )
}

pub fn zero_angle_baseline() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for n in 1..=16 {
        let m = LinearIsing::consecutive(n).expect("n >= 1");
        let pr = prob_opt(&m, &QaoaParams::zeros(1).expect("p = 1"));
        worst = worst.max((pr - 0.5_f64.powi(n as i32)).abs());
    }
    CheckOutcome::new("zero-angle-baseline", worst <= 1e-12, format!("n = 1..16, max deviation {worst:.3e}"))
}

pub fn sign_flip() -> CheckOutcome {
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = r.gen_range(1..=8);
        let model = random_model(&mut r, n);
        let layers = r.gen_range(1..=3);
        let p = random_params(&mut r, layers);
        let mut flipped = model.coeffs().to_vec();
        let i = r.gen_range(0..n);
        flipped[i] = -flipped[i];
        let flipped = LinearIsing::new(flipped).expect("nonzero");
        worst = worst.max((prob_opt(&model, &p) - prob_opt(&flipped, &p)).abs());
    }
    CheckOutcome::new("sign-flip", worst <= 1e-12, format!("100 cases, max deviation {worst:.3e}"))
}
