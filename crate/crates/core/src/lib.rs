//! Synthesis of restricted uniformly controlled gates (rUCGs), k-sparse
//! rUCGs and diagonal unitaries into CNOT, rotation and single-controlled
//! gate circuits.
//!
//! The pipeline maps a target vector `χ` to its Walsh–Hadamard frequency
//! vector `Y` ([`transform`]), walks the control states with CNOT-only
//! Gray paths ([`gray`]) and emits one controlled gate per state
//! ([`synth::size`]), or places independent groups of states in parallel
//! for low depth ([`synth::depth`]). Every circuit can be checked against a
//! brute-force reference ([`verify`]).

pub mod bench;
pub mod circuit;
pub mod error;
pub mod f2;
pub mod gray;
pub mod group;
pub mod instances;
pub mod io;
pub mod kgate;
pub mod partition;
pub mod pipeline;
pub mod realization;
pub mod synth;
pub mod transform;
pub mod verify;

pub use circuit::{CircuitIR, CostReport, Gate, Param, QubitLayout};
pub use error::{Error, Result};
pub use group::{Dyadic, GroupElement, PhaseVector};
pub use realization::Realization;
pub use transform::{FrequencyVector, SpectrumVector, TargetVector};
