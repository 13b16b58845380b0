//! From a mod-2 measurement-based computation to its internal logic:
//! build the poset of measurement contexts, decide contextuality by
//! searching for global sections of the character presheaf or of a state's
//! pseudostate, compute the Heyting algebra of down-sets with its exact
//! non-Booleanness, and trace how both are consumed measurement by
//! measurement.

pub mod contexts;
pub mod error;
pub mod heyting;
pub mod mbqc;
pub mod pauli;
pub mod poset;
pub mod presheaf;
pub mod quantum;
pub mod scenario;

pub use error::{Error, Result};

/// Hard ceiling on the qubit cap, regardless of environment overrides.
pub const HARD_MAX_QUBITS: usize = 14;

/// Default qubit cap for dense vectors and matrices.
pub const DEFAULT_MAX_QUBITS: usize = 12;

/// The dense-representation qubit cap: `CONTEXTUS_MAX_QUBITS` when set,
/// clamped to the hard ceiling, otherwise 12.
pub fn max_qubits() -> usize {
    match std::env::var("CONTEXTUS_MAX_QUBITS") {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) => n.clamp(1, HARD_MAX_QUBITS),
            Err(_) => DEFAULT_MAX_QUBITS,
        },
        Err(_) => DEFAULT_MAX_QUBITS,
    }
}
