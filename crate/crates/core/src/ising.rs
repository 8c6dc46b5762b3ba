//! Linear Ising models `H(s) = Σ a_ℓ s_ℓ` over spins `s_ℓ ∈ {−1, +1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Coefficient vector of a linear Ising model. Every coefficient is finite
/// and nonzero, and there is at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearIsing {
    coeffs: Vec<f64>,
}

/// Spin assignment, entries in `{−1, +1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinString(pub Vec<i8>);

/// Computational-basis bits. Bit 0 is spin +1, bit 1 is spin −1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(pub Vec<u8>);

impl LinearIsing {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a linear Ising model needs at least one coefficient");
        }
        if let Some((i, a)) = coeffs.iter().enumerate().find(|(_, a)| **a == 0.0 || !a.is_finite()) {
            return invalid(format!("coefficient {} must be finite and nonzero, got {a}", i + 1));
        }
        Ok(Self { coeffs })
    }

    /// The model `(1, 2, ..., m)`.
    pub fn consecutive(m: usize) -> Result<Self> {
        if m < 1 {
            return invalid("consecutive model needs m >= 1");
        }
        Self::new((1..=m).map(|v| v as f64).collect())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, s: &SpinString) -> Result<f64> {
        if s.0.len() != self.len() {
            return invalid(format!("spin string has length {}, model has {}", s.0.len(), self.len()));
        }
        Ok(self.coeffs.iter().zip(&s.0).map(|(a, &s)| a * f64::from(s)).sum())
    }

    /// `s_ℓ = sign(a_ℓ)`, the maximizer of [`evaluate`](Self::evaluate).
    pub fn solve_classical(&self) -> SpinString {
        SpinString(self.coeffs.iter().map(|&a| if a > 0.0 { 1 } else { -1 }).collect())
    }

    /// Basis state of the classical optimum.
    pub fn optimal_bits(&self) -> BitString {
        self.solve_classical().to_bits()
    }

    /// Optimal objective value `Σ |a_ℓ|`.
    pub fn optimum_value(&self) -> f64 {
        self.coeffs.iter().map(|a| a.abs()).sum()
    }

    /// `k` interleaved copies: index `q + ℓ·m` holds `a_q`.
    pub fn replicate(&self, k: usize) -> Result<Self> {
        if k < 1 {
            return invalid("replication factor must be at least 1");
        }
        let m = self.len();
        let mut coeffs = vec![0.0; k * m];
        for copy in 0..k {
            for q in 0..m {
                coeffs[q + copy * m] = self.coeffs[q];
            }
        }
        Ok(Self { coeffs })
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|a| a.fract() == 0.0)
    }
}

impl SpinString {
    pub fn to_bits(&self) -> BitString {
        BitString(self.0.iter().map(|&s| u8::from(s < 0)).collect())
    }
}

impl BitString {
    pub fn to_spins(&self) -> SpinString {
        SpinString(self.0.iter().map(|&b| 1 - 2 * b as i8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Basis index with qubit 1 as the least significant bit.
    pub fn to_index(&self) -> usize {
        self.0.iter().enumerate().fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Comma-separated decimal coefficients, e.g. `1,2,3` or `3,-1.5`.
impl FromStr for LinearIsing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("cannot parse coefficient `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for LinearIsing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model(c: &[f64]) -> LinearIsing {
        LinearIsing::new(c.to_vec()).unwrap()
    }

    /// Exhaustive argmax over all 2^n spin strings.
    fn brute_force_best(m: &LinearIsing) -> (SpinString, f64) {
        let n = m.len();
        let mut best = (SpinString(vec![]), f64::NEG_INFINITY);
        for idx in 0..(1usize << n) {
            let s = SpinString((0..n).map(|i| if idx >> i & 1 == 0 { 1 } else { -1 }).collect());
            let v = m.evaluate(&s).unwrap();
            if v > best.1 {
                best = (s, v);
            }
        }
        best
    }

    #[test]
    fn evaluate_examples() {
        let m = model(&[1.0, 2.0]);
        assert_eq!(m.evaluate(&SpinString(vec![1, 1])).unwrap(), 3.0);
        assert_eq!(m.evaluate(&SpinString(vec![-1, 1])).unwrap(), 1.0);
        assert!(m.evaluate(&SpinString(vec![1])).is_err());
        let m = model(&[1.0, -2.0, 3.0]);
        assert_eq!(m.evaluate(&SpinString(vec![1, -1, 1])).unwrap(), 6.0);
        assert_eq!(brute_force_best(&m).1, 6.0);
    }

    #[test]
    fn classical_solution_examples() {
        assert_eq!(model(&[1.0, 2.0]).solve_classical(), SpinString(vec![1, 1]));
        assert_eq!(model(&[-5.0]).solve_classical(), SpinString(vec![-1]));
        let m = model(&[3.0, -1.0, 2.0, -4.0]);
        assert_eq!(m.solve_classical(), brute_force_best(&m).0);
    }

    #[test]
    fn optimal_bits_examples() {
        assert_eq!(model(&[1.0, 2.0, 3.0]).optimal_bits(), BitString(vec![0, 0, 0]));
        assert_eq!(model(&[-1.0, -1.0]).optimal_bits(), BitString(vec![1, 1]));
        assert_eq!(model(&[2.0, -7.0]).optimal_bits(), BitString(vec![0, 1]));
    }

    #[test]
    fn zero_or_empty_rejected() {
        assert!(LinearIsing::new(vec![]).is_err());
        assert!(LinearIsing::new(vec![1.0, 0.0]).is_err());
        assert!(LinearIsing::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn replicate_examples() {
        let a = model(&[1.0, 2.0]);
        assert_eq!(a.replicate(2).unwrap().coeffs(), &[1.0, 2.0, 1.0, 2.0]);
        assert_eq!(a.replicate(1).unwrap(), a);
        assert!(a.replicate(0).is_err());
        let r = model(&[1.0, 2.0, 3.0]).replicate(3).unwrap();
        assert_eq!(r.len(), 9);
        for v in [1.0, 2.0, 3.0] {
            assert_eq!(r.coeffs().iter().filter(|&&c| c == v).count(), 3);
        }
    }

    #[test]
    fn consecutive_examples() {
        assert_eq!(LinearIsing::consecutive(2).unwrap().coeffs(), &[1.0, 2.0]);
        assert_eq!(LinearIsing::consecutive(3).unwrap().coeffs(), &[1.0, 2.0, 3.0]);
        assert_eq!(LinearIsing::consecutive(1).unwrap().coeffs(), &[1.0]);
        assert!(LinearIsing::consecutive(0).is_err());
    }

    #[test]
    fn literal_parsing() {
        let m: LinearIsing = "1, 2,3".parse().unwrap();
        assert_eq!(m.coeffs(), &[1.0, 2.0, 3.0]);
        assert_eq!("3,-1.5".parse::<LinearIsing>().unwrap().coeffs(), &[3.0, -1.5]);
        assert!("1,x".parse::<LinearIsing>().is_err());
        assert!("1,0".parse::<LinearIsing>().is_err());
        assert!("".parse::<LinearIsing>().is_err());
        assert_eq!(m.to_string().parse::<LinearIsing>().unwrap(), m);
    }

    #[test]
    fn bit_index_is_little_endian() {
        assert_eq!(BitString(vec![1, 0, 1, 1]).to_index(), 0b1101);
        assert_eq!(BitString(vec![0, 1]).to_spins(), SpinString(vec![1, -1]));
    }

    fn coeff() -> impl Strategy<Value = f64> {
        prop_oneof![-10.0..-0.01_f64, 0.01..10.0_f64]
    }

    proptest! {
        #[test]
        fn classical_solution_is_exhaustive_argmax(c in prop::collection::vec(coeff(), 1..=16)) {
            let m = model(&c);
            let s = m.solve_classical();
            let v = m.evaluate(&s).unwrap();
            prop_assert!((v - brute_force_best(&m).1).abs() <= 1e-12);
            prop_assert!((v - m.optimum_value()).abs() <= 1e-12);
        }

        #[test]
        fn replicated_optimum_scales(c in prop::collection::vec(coeff(), 1..=6), k in 1..=8_usize) {
            let m = model(&c);
            let r = m.replicate(k).unwrap();
            let v = r.evaluate(&r.solve_classical()).unwrap();
            let base = m.evaluate(&m.solve_classical()).unwrap();
            prop_assert!((v - k as f64 * base).abs() <= 1e-9);
        }
    }
}
