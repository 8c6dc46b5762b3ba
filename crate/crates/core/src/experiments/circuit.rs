//! Classical sign-bit circuit for the optimum of a linear Ising model.
//!
//! Each coefficient is loaded into a `width`-qubit register in two's
//! complement, least significant bit first, so the sign bit is the last
//! qubit of the register. One CNOT per coefficient copies the sign bit onto
//! an output qubit, and measuring the outputs yields `optimal_bits`.
//!
//! Text format, one instruction per line:
//!
//! ```text
//! # comment
//! init q<i> <0|1>
//! cnot q<control> q<target>
//! measure q<i> -> c<k>
//! ```
//!
//! Instructions are emitted in a fixed order (register inits, output inits,
//! CNOTs, measurements) so the text is stable for diffing.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::ising::LinearIsing;

pub const MAX_REGISTER_WIDTH: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instruction {
    Init { qubit: usize, value: u8 },
    Cnot { control: usize, target: usize },
    Measure { qubit: usize, clbit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn num_qubits(&self) -> usize {
        self.instructions
            .iter()
            .map(|i| match *i {
                Instruction::Init { qubit, .. } | Instruction::Measure { qubit, .. } => qubit + 1,
                Instruction::Cnot { control, target } => control.max(target) + 1,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn num_clbits(&self) -> usize {
        self.instructions
            .iter()
            .filter_map(|i| match *i {
                Instruction::Measure { clbit, .. } => Some(clbit + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn cnot_count(&self) -> usize {
        self.instructions.iter().filter(|i| matches!(i, Instruction::Cnot { .. })).count()
    }

    pub fn measure_count(&self) -> usize {
        self.instructions.iter().filter(|i| matches!(i, Instruction::Measure { .. })).count()
    }

    /// Run the circuit on classical bits. All qubits start at 0; CNOT on
    /// basis states is an XOR. Returns the classical register.
    pub fn interpret(&self) -> Result<Vec<u8>> {
        let mut qubits = vec![0u8; self.num_qubits()];
        let mut clbits = vec![0u8; self.num_clbits()];
        for ins in &self.instructions {
            match *ins {
                Instruction::Init { qubit, value } => qubits[qubit] = value,
                Instruction::Cnot { control, target } => {
                    if control == target {
                        return invalid(format!("cnot control and target are both q{control}"));
                    }
                    qubits[target] ^= qubits[control];
                }
                Instruction::Measure { qubit, clbit } => clbits[clbit] = qubits[qubit],
            }
        }
        Ok(clbits)
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instruction::Init { qubit, value } => write!(f, "init q{qubit} {value}"),
            Instruction::Cnot { control, target } => write!(f, "cnot q{control} q{target}"),
            Instruction::Measure { qubit, clbit } => write!(f, "measure q{qubit} -> c{clbit}"),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

fn parse_index(tok: &str, prefix: char, line: usize) -> Result<usize> {
    tok.strip_prefix(prefix)
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("line {line}: expected {prefix}<index>, got `{tok}`")))
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut instructions = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let toks: Vec<&str> = text.split_whitespace().collect();
            let ins = match toks.as_slice() {
                ["init", q, v] => {
                    let value = match *v {
                        "0" => 0,
                        "1" => 1,
                        _ => return invalid(format!("line {line}: init value must be 0 or 1, got `{v}`")),
                    };
                    Instruction::Init { qubit: parse_index(q, 'q', line)?, value }
                }
                ["cnot", c, t] => Instruction::Cnot {
                    control: parse_index(c, 'q', line)?,
                    target: parse_index(t, 'q', line)?,
                },
                ["measure", q, "->", c] => Instruction::Measure {
                    qubit: parse_index(q, 'q', line)?,
                    clbit: parse_index(c, 'c', line)?,
                },
                _ => return invalid(format!("line {line}: unrecognized instruction `{text}`")),
            };
            instructions.push(ins);
        }
        Ok(Circuit { instructions })
    }
}

/// Two's complement bits of `value`, least significant first.
pub fn twos_complement(value: i64, width: usize) -> Result<Vec<u8>> {
    if !(1..=MAX_REGISTER_WIDTH).contains(&width) {
        return invalid(format!("register width must be in 1..={MAX_REGISTER_WIDTH}, got {width}"));
    }
    let min = -(1i64 << (width - 1));
    let max = (1i64 << (width - 1)) - 1;
    if value < min || value > max {
        return invalid(format!("{value} does not fit in {width}-bit two's complement"));
    }
    Ok((0..width).map(|j| ((value >> j) & 1) as u8).collect())
}

/// Build the sign-bit circuit. Register `ℓ` occupies qubits
/// `ℓ·width .. (ℓ+1)·width`, output `ℓ` is qubit `n·width + ℓ` and is
/// measured into `c<ℓ>`.
pub fn emit_linear_solver_circuit(model: &LinearIsing, width: usize) -> Result<Circuit> {
    let n = model.len();
    let mut registers = Vec::with_capacity(n);
    for (l, &a) in model.coeffs().iter().enumerate() {
        if a.fract() != 0.0 || a.abs() > i64::MAX as f64 / 2.0 {
            return invalid(format!("coefficient {} ({a}) is not an integer", l + 1));
        }
        let bits = twos_complement(a as i64, width)
            .map_err(|e| match e {
                Error::InvalidArgument(msg) => Error::InvalidArgument(format!("coefficient {} ({a}): {msg}", l + 1)),
                other => other,
            })?;
        registers.push(bits);
    }

    let output = |l: usize| n * width + l;
    let sign = |l: usize| l * width + width - 1;
    let mut instructions = Vec::with_capacity(n * (width + 3));
    for (l, bits) in registers.iter().enumerate() {
        for (j, &value) in bits.iter().enumerate() {
            instructions.push(Instruction::Init { qubit: l * width + j, value });
        }
    }
    instructions.extend((0..n).map(|l| Instruction::Init { qubit: output(l), value: 0 }));
    instructions.extend((0..n).map(|l| Instruction::Cnot { control: sign(l), target: output(l) }));
    instructions.extend((0..n).map(|l| Instruction::Measure { qubit: output(l), clbit: l }));
    Ok(Circuit { instructions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model(c: &[f64]) -> LinearIsing {
        LinearIsing::new(c.to_vec()).unwrap()
    }

    #[test]
    fn two_coefficients() {
        let c = emit_linear_solver_circuit(&model(&[3.0, -1.0]), 4).unwrap();
        assert_eq!(c.interpret().unwrap(), vec![0, 1]);
        assert_eq!(c.cnot_count(), 2);
        let text = c.to_string();
        assert_eq!(
            text,
            "init q0 1\ninit q1 1\ninit q2 0\ninit q3 0\n\
             init q4 1\ninit q5 1\ninit q6 1\ninit q7 1\n\
             init q8 0\ninit q9 0\n\
             cnot q3 q8\ncnot q7 q9\n\
             measure q8 -> c0\nmeasure q9 -> c1\n"
        );
    }

    #[test]
    fn single_coefficient() {
        let c = emit_linear_solver_circuit(&model(&[1.0]), 2).unwrap();
        assert_eq!(c.to_string(), "init q0 1\ninit q1 0\ninit q2 0\ncnot q1 q2\nmeasure q2 -> c0\n");
        assert_eq!(c.interpret().unwrap(), vec![0]);
        assert_eq!((c.cnot_count(), c.measure_count()), (1, 1));
    }

    #[test]
    fn rejects_non_integers_and_overflow() {
        let err = emit_linear_solver_circuit(&model(&[1.5]), 4).unwrap_err();
        assert!(err.to_string().contains("coefficient 1"));
        let err = emit_linear_solver_circuit(&model(&[1.0, 8.0]), 4).unwrap_err();
        assert!(err.to_string().contains("coefficient 2 (8)"), "{err}");
        assert!(emit_linear_solver_circuit(&model(&[-8.0]), 4).is_ok());
        assert!(emit_linear_solver_circuit(&model(&[1.0]), 0).is_err());
        assert!(emit_linear_solver_circuit(&model(&[1.0]), 64).is_err());
    }

    #[test]
    fn twos_complement_examples() {
        assert_eq!(twos_complement(3, 4).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(twos_complement(-1, 4).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(twos_complement(-8, 4).unwrap(), vec![0, 0, 0, 1]);
        assert!(twos_complement(-9, 4).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("init q0 2".parse::<Circuit>().is_err());
        assert!("cnot q0".parse::<Circuit>().is_err());
        assert!("measure q0 c0".parse::<Circuit>().is_err());
        assert!("swap q0 q1".parse::<Circuit>().is_err());
        let c: Circuit = "# header\n\ninit q0 1 # set\ncnot q0 q1\nmeasure q1 -> c0\n".parse().unwrap();
        assert_eq!(c.interpret().unwrap(), vec![1]);
        assert!("cnot q0 q0".parse::<Circuit>().unwrap().interpret().is_err());
    }

    fn int_coeff() -> impl Strategy<Value = f64> {
        prop_oneof![-128..=-1_i32, 1..=127_i32].prop_map(f64::from)
    }

    proptest! {
        #[test]
        fn interpretation_matches_optimal_bits(c in prop::collection::vec(int_coeff(), 1..=8)) {
            let m = model(&c);
            let circuit = emit_linear_solver_circuit(&m, 8).unwrap();
            let reparsed: Circuit = circuit.to_string().parse().unwrap();
            prop_assert_eq!(&reparsed, &circuit);
            prop_assert_eq!(reparsed.interpret().unwrap(), m.optimal_bits().0);
            prop_assert_eq!(circuit.cnot_count(), m.len());
        }
    }
}
