//! Parity obstructions and exhaustive synthesis for the two-qudit SWAP gate.
//!
//! Every gate handled here permutes the `d²` computational basis states of a
//! pair of qudits, so the whole crate works with exact permutations:
//!
//! - [`perm`]: permutation algebra (composition, cycles, signature, matrices).
//! - [`gates`]: the generalised CNOT gates and the SWAP target on `d²` points.
//! - [`feasibility`]: the signature obstruction deciding when no CNOT circuit
//!   can realise SWAP.
//! - [`synthesis`]: breadth-first enumeration of the group generated by the
//!   two CNOT gates, shortest-word synthesis and unreachability certificates.
//! - [`cache`]: on-disk cache of group censuses.
//! - [`cli`]: the command-line front end used by the `qudit-swap` binary.
//!
//! ```
//! use qudit_swap::{feasibility, gates, synthesis};
//!
//! // No CNOT circuit swaps two qutrits: CNOTs are even, SWAP is odd.
//! assert!(feasibility::decide(3).unwrap().is_infeasible());
//!
//! // For qubits the textbook three-gate circuit is recovered.
//! let swap = gates::swap_perm(2).unwrap();
//! let result = synthesis::find_word(2, &swap, None, &Default::default()).unwrap();
//! assert_eq!(result.word().unwrap().to_string(), "CNOT1 CNOT2 CNOT1");
//! ```

pub mod cache;
pub mod cli;
mod error;
pub mod feasibility;
pub mod gates;
pub mod perm;
pub mod synthesis;

pub use error::{Error, Result};
pub use perm::{CycleType, MatrixFormat, Perm, PermMatrix, Sign};

/// Version string embedded in reports and cache headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
