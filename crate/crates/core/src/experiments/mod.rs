//! Experiments built on the probability engine and the optimizers.

pub mod circuit;
pub mod sampling;
pub mod scan;
pub mod tables;

pub use circuit::{emit_linear_solver_circuit, Circuit, Instruction};
pub use sampling::{sample_until_optimum, SamplingReport};
pub use scan::{conjecture_scan, ScanRow};
pub use tables::{build_tables, ProbTable, TableCell};
