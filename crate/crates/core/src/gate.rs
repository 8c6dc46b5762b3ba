//! Single-qubit gate algebra.
//!
//! Every QAOA state for a linear Ising model is a tensor product of
//! single-qubit states, so exact 2×2 complex arithmetic is all the
//! probability engine needs. Global phases are kept as computed.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use crate::error::{invalid, Result};

pub use num_complex::Complex64 as Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2 {
    pub entries: [[Complex; 2]; 2],
}

impl Gate2 {
    pub const fn new(entries: [[Complex; 2]; 2]) -> Self {
        Self { entries }
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        Self::new([[h, h], [h, -h]])
    }

    pub fn pauli_x() -> Self {
        Self::new([[ZERO, ONE], [ONE, ZERO]])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let e = &self.entries;
        Self::new([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]])
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex) -> Self {
        let e = &self.entries;
        Self::new([[e[0][0] * s, e[0][1] * s], [e[1][0] * s, e[1][1] * s]])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Gate2) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        worst
    }

    /// Whether `G·G† = I` entrywise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.dagger()).max_abs_diff(&Gate2::identity()) <= tol
    }
}

impl Mul for Gate2 {
    type Output = Gate2;

    fn mul(self, rhs: Gate2) -> Gate2 {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Gate2::new(out)
    }
}

/// Single-qubit state `amp0·|0⟩ + amp1·|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit {
    pub amp0: Complex,
    pub amp1: Complex,
}

impl Qubit {
    pub const fn new(amp0: Complex, amp1: Complex) -> Self {
        Self { amp0, amp1 }
    }

    pub const fn zero() -> Self {
        Self::new(ONE, ZERO)
    }

    pub const fn one() -> Self {
        Self::new(ZERO, ONE)
    }

    /// `|+⟩ = H|0⟩`.
    pub fn plus() -> Self {
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        Self::new(h, h)
    }

    pub fn amplitude(&self, bit: u8) -> Complex {
        if bit == 0 {
            self.amp0
        } else {
            self.amp1
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Qubit) -> Complex {
        self.amp0.conj() * other.amp0 + self.amp1.conj() * other.amp1
    }

    /// Expectation of Pauli Z, `|amp0|² − |amp1|²`.
    pub fn z_expectation(&self) -> f64 {
        self.amp0.norm_sqr() - self.amp1.norm_sqr()
    }
}

fn check_angle(theta: f64) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        invalid(format!("rotation angle must be finite, got {theta}"))
    }
}

/// `RX(θ) = exp(−iθX/2)`.
pub fn rx(theta: f64) -> Result<Gate2> {
    check_angle(theta)?;
    let (s, c) = (theta / 2.0).sin_cos();
    let c = Complex::new(c, 0.0);
    let ms = Complex::new(0.0, -s);
    Ok(Gate2::new([[c, ms], [ms, c]]))
}

/// `RZ(θ) = exp(−iθZ/2) = diag(e^{−iθ/2}, e^{iθ/2})`.
pub fn rz(theta: f64) -> Result<Gate2> {
    check_angle(theta)?;
    Ok(Gate2::new([
        [Complex::from_polar(1.0, -theta / 2.0), ZERO],
        [ZERO, Complex::from_polar(1.0, theta / 2.0)],
    ]))
}

/// Matrix-vector product `gate·state`.
pub fn apply(gate: &Gate2, state: &Qubit) -> Qubit {
    let e = &gate.entries;
    Qubit::new(
        e[0][0] * state.amp0 + e[0][1] * state.amp1,
        e[1][0] * state.amp0 + e[1][1] * state.amp1,
    )
}

pub(crate) fn check_layers(gammas: &[f64], betas: &[f64]) -> Result<()> {
    if gammas.len() != betas.len() {
        return invalid(format!(
            "gamma and beta must have equal length, got {} and {}",
            gammas.len(),
            betas.len()
        ));
    }
    if gammas.is_empty() {
        return invalid("at least one layer is required");
    }
    if let Some(bad) = gammas.iter().chain(betas).find(|x| !x.is_finite()) {
        return invalid(format!("angles must be finite, got {bad}"));
    }
    Ok(())
}

/// The single-qubit factor `∏_{j=p..1} RX(2β_j)·RZ(2γ_j·a)|+⟩`, layer 1 applied first.
///
/// Inputs are assumed validated; the rotations are applied in place
/// without building gate matrices since this sits in the optimizer's
/// inner loop.
pub(crate) fn layered_factor(a: f64, gammas: &[f64], betas: &[f64]) -> Qubit {
    let mut q = Qubit::plus();
    for (&g, &b) in gammas.iter().zip(betas) {
        // RZ(2γa): |0⟩ picks up e^{−iγa}, |1⟩ picks up e^{iγa}
        let phase = Complex::from_polar(1.0, -g * a);
        let a0 = q.amp0 * phase;
        let a1 = q.amp1 * phase.conj();
        // RX(2β)
        let (s, c) = b.sin_cos();
        q = Qubit::new(
            Complex::new(c * a0.re + s * a1.im, c * a0.im - s * a1.re),
            Complex::new(c * a1.re + s * a0.im, c * a1.im - s * a0.re),
        );
    }
    q
}

/// Validated version of the layered single-qubit factor.
pub fn qubit_factor(a_coeff: f64, gammas: &[f64], betas: &[f64]) -> Result<Qubit> {
    check_layers(gammas, betas)?;
    if a_coeff == 0.0 || !a_coeff.is_finite() {
        return invalid(format!("coefficient must be finite and nonzero, got {a_coeff}"));
    }
    Ok(layered_factor(a_coeff, gammas, betas))
}

/// `⟨target_bit| ∏_{j=p..1} RX(2β_j)·RZ(2γ_j·a)|+⟩`.
pub fn amplitude_to_bit(a_coeff: f64, target_bit: u8, gammas: &[f64], betas: &[f64]) -> Result<Complex> {
    if target_bit > 1 {
        return invalid(format!("target bit must be 0 or 1, got {target_bit}"));
    }
    Ok(qubit_factor(a_coeff, gammas, betas)?.amplitude(target_bit))
}
