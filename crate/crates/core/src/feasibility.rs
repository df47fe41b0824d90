//! Signature obstruction for realising SWAP with generalised CNOT gates.
//!
//! A product of even permutations is even. When both CNOT gates are even
//! and SWAP is odd, no circuit of CNOT gates can equal SWAP. The check is
//! one-sided: a matching signature proves nothing, and only an explicit
//! word from [`crate::synthesis`] can establish that SWAP is reachable.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{cnot1_perm, cnot2_perm, swap_perm};
use crate::perm::Sign;

/// Largest dimension [`parity_report`] accepts; the gates act on `d²` points.
pub const MAX_PARITY_DIMENSION: u32 = 1000;

/// Sign of SWAP from the closed form `(-1)^(d(d-1)/2)`.
///
/// SWAP fixes the `d` diagonal states and transposes the remaining
/// `d(d-1)/2` pairs. Computed without building any permutation.
pub fn swap_signature_formula(d: u32) -> Sign {
    let d = d as u64;
    let transpositions = d * d.saturating_sub(1) / 2;
    Sign::from_odd(transpositions % 2 == 1)
}

/// Signatures of the generators and the SWAP target at one dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ParityReport {
    pub d: u32,
    pub sig_cnot1: Sign,
    pub sig_cnot2: Sign,
    pub sig_swap: Sign,
    pub d_mod_4: u32,
}

impl ParityReport {
    fn obstructs(&self) -> bool {
        self.sig_cnot1 == Sign::Plus && self.sig_cnot2 == Sign::Plus && self.sig_swap == Sign::Minus
    }
}

/// Builds the three gate permutations and reads off their signatures.
///
/// The SWAP signature is computed both by cycle count and by the closed
/// form; disagreement is reported as [`Error::SignatureMismatch`].
pub fn parity_report(d: u32) -> Result<ParityReport> {
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    if d > MAX_PARITY_DIMENSION {
        return Err(Error::guard("dimension", d, MAX_PARITY_DIMENSION));
    }
    let sig_cnot1 = cnot1_perm(d)?.signature();
    let sig_cnot2 = cnot2_perm(d)?.signature();
    let sig_swap = swap_perm(d)?.signature();
    let formula = swap_signature_formula(d);
    if formula != sig_swap {
        return Err(Error::SignatureMismatch {
            d,
            formula: formula.value(),
            computed: sig_swap.value(),
        });
    }
    Ok(ParityReport {
        d,
        sig_cnot1,
        sig_cnot2,
        sig_swap,
        d_mod_4: d % 4,
    })
}

/// Outcome of the parity check. There is deliberately no "feasible" case.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// Both generators are even and SWAP is odd.
    InfeasibleByParity(ParityReport),
    /// Parity does not rule SWAP out; only search can settle it.
    UnknownByParity(ParityReport),
}

impl Verdict {
    pub fn report(&self) -> &ParityReport {
        match self {
            Verdict::InfeasibleByParity(r) | Verdict::UnknownByParity(r) => r,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Verdict::InfeasibleByParity(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::InfeasibleByParity(_) => "INFEASIBLE_BY_PARITY",
            Verdict::UnknownByParity(_) => "UNKNOWN_BY_PARITY",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn decide(d: u32) -> Result<Verdict> {
    let report = parity_report(d)?;
    Ok(if report.obstructs() {
        Verdict::InfeasibleByParity(report)
    } else {
        Verdict::UnknownByParity(report)
    })
}
