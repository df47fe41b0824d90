//! Two-qudit gates as permutations of the `d²` computational basis states.
//!
//! Basis state `|m⟩⊗|n⟩` (with `m` the digit of system A) is flattened to
//! `d·m + n`. The generalised CNOT gates act as
//!
//! ```text
//! CNOT1 |m⟩|n⟩ = |m⟩|n + m⟩      (control A, target B)
//! CNOT2 |m⟩|n⟩ = |m + n⟩|n⟩      (control B, target A)
//! SWAP  |m⟩|n⟩ = |n⟩|m⟩
//! ```
//!
//! with addition mod `d`. The permutation of a gate sends the flat index of
//! an input basis state to the flat index of its output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A basis state `|m⟩⊗|n⟩` of a pair of `d`-level systems.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BasisIndex {
    d: u32,
    m: u32,
    n: u32,
}

impl BasisIndex {
    pub fn new(d: u32, m: u32, n: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension);
        }
        if m >= d || n >= d {
            return Err(Error::guard("basis digit", m.max(n), d - 1));
        }
        Ok(BasisIndex { d, m, n })
    }

    pub fn from_flat(d: u32, flat: u32) -> Result<Self> {
        let points = points(d)?;
        if flat as usize >= points {
            return Err(Error::guard("flat index", flat, points as u64 - 1));
        }
        Ok(BasisIndex {
            d,
            m: flat / d,
            n: flat % d,
        })
    }

    pub fn flat(self) -> u32 {
        self.d * self.m + self.n
    }

    pub fn digits(self) -> (u32, u32) {
        (self.m, self.n)
    }
}

/// Number of basis states `d²`, rejecting `d = 0` and overflow.
pub(crate) fn points(d: u32) -> Result<usize> {
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    d.checked_mul(d)
        .map(|p| p as usize)
        .ok_or(Error::guard("dimension", d, u16::MAX))
}

/// The two generators available to a circuit. Ordered `Cnot1 < Cnot2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "CNOT1")]
    Cnot1,
    #[serde(rename = "CNOT2")]
    Cnot2,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::Cnot1, Generator::Cnot2];

    pub fn perm(self, d: u32) -> Result<Perm> {
        GateKind::from(self).perm(d)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Cnot1 => "CNOT1",
            Generator::Cnot2 => "CNOT2",
        })
    }
}

/// Every gate the crate knows about. `SwapTarget` is only ever a
/// synthesis target, never a circuit letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GateKind {
    Cnot1,
    Cnot2,
    SwapTarget,
}

impl GateKind {
    pub fn perm(self, d: u32) -> Result<Perm> {
        match self {
            GateKind::Cnot1 => cnot1_perm(d),
            GateKind::Cnot2 => cnot2_perm(d),
            GateKind::SwapTarget => swap_perm(d),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Cnot1 => "cnot1",
            GateKind::Cnot2 => "cnot2",
            GateKind::SwapTarget => "swap",
        }
    }
}

impl From<Generator> for GateKind {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Cnot1 => GateKind::Cnot1,
            Generator::Cnot2 => GateKind::Cnot2,
        }
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cnot1" => Ok(GateKind::Cnot1),
            "cnot2" => Ok(GateKind::Cnot2),
            "swap" => Ok(GateKind::SwapTarget),
            other => Err(format!("unknown gate `{other}`")),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn basis_perm(d: u32, action: impl Fn(u32, u32) -> (u32, u32)) -> Result<Perm> {
    let n = points(d)?;
    let mut image = Vec::with_capacity(n);
    for m in 0..d {
        for k in 0..d {
            let (m2, k2) = action(m, k);
            image.push(d * m2 + k2);
        }
    }
    Perm::from_image(image)
}

fn add_mod(x: u32, y: u32, d: u32) -> u32 {
    ((x as u64 + y as u64) % d as u64) as u32
}

/// `|m⟩|n⟩ ↦ |m⟩|n + m⟩`.
pub fn cnot1_perm(d: u32) -> Result<Perm> {
    basis_perm(d, |m, n| (m, add_mod(n, m, d)))
}

/// `|m⟩|n⟩ ↦ |m + n⟩|n⟩`.
pub fn cnot2_perm(d: u32) -> Result<Perm> {
    basis_perm(d, |m, n| (add_mod(m, n, d), n))
}

/// `|m⟩|n⟩ ↦ |n⟩|m⟩`.
pub fn swap_perm(d: u32) -> Result<Perm> {
    basis_perm(d, |m, n| (n, m))
}

/// A linear map `(m, n) ↦ (a·m + b·n, c·m + e·n)` on `Z_d × Z_d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct LinearMap2 {
    pub d: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub e: u32,
}

impl LinearMap2 {
    pub fn apply(&self, m: u32, n: u32) -> (u32, u32) {
        let d = self.d as u64;
        let (m, n) = (m as u64, n as u64);
        let x = (self.a as u64 * m + self.b as u64 * n) % d;
        let y = (self.c as u64 * m + self.e as u64 * n) % d;
        (x as u32, y as u32)
    }

    /// `a·e − b·c` reduced into `0..d`.
    pub fn determinant(&self) -> u32 {
        let d = self.d as u64;
        let ae = self.a as u64 * self.e as u64 % d;
        let bc = self.b as u64 * self.c as u64 % d;
        ((ae + d - bc) % d) as u32
    }
}

/// Recovers `p` as a linear map on `Z_d × Z_d`, if it is one.
///
/// The candidate columns are read off the images of `(1, 0)` and `(0, 1)`;
/// the candidate is accepted only if it reproduces `p` on every point.
pub fn as_linear_map(p: &Perm, d: u32) -> Result<Option<LinearMap2>> {
    let n = points(d)?;
    if p.len() != n {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: n,
        });
    }
    if p.apply(0) != 0 {
        return Ok(None);
    }
    if d == 1 {
        return Ok(Some(LinearMap2 {
            d,
            a: 0,
            b: 0,
            c: 0,
            e: 0,
        }));
    }
    let col = |flat: u32| {
        let img = p.apply(flat);
        (img / d, img % d)
    };
    let (a, c) = col(d); // image of (1, 0)
    let (b, e) = col(1); // image of (0, 1)
    let map = LinearMap2 { d, a, b, c, e };
    let reproduces = (0..d).all(|m| {
        (0..d).all(|k| {
            let (x, y) = map.apply(m, k);
            p.apply(d * m + k) == d * x + y
        })
    });
    Ok(reproduces.then_some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermMatrix, Sign};

    fn fixture(text: &str) -> PermMatrix {
        let rows: Vec<Vec<u8>> = text
            .lines()
            .map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect())
            .collect();
        PermMatrix::from_rows(&rows).unwrap()
    }

    /// Direct evaluation of the defining action on digits, independent of
    /// the flat-index loops in `basis_perm`.
    fn evaluate(d: u32, f: impl Fn(u32, u32) -> (u32, u32)) -> Vec<u32> {
        (0..d * d)
            .map(|i| {
                let (m, n) = f(i / d, i % d);
                m * d + n
            })
            .collect()
    }

    #[test]
    fn basis_index_round_trip() {
        for d in 1..8 {
            for flat in 0..d * d {
                let b = BasisIndex::from_flat(d, flat).unwrap();
                let (m, n) = b.digits();
                assert_eq!(BasisIndex::new(d, m, n).unwrap().flat(), flat);
            }
        }
        assert!(BasisIndex::new(3, 3, 0).is_err());
        assert!(BasisIndex::from_flat(3, 9).is_err());
        assert_eq!(BasisIndex::new(0, 0, 0), Err(Error::InvalidDimension));
    }

    #[test]
    fn cnot1_tables() {
        assert_eq!(cnot1_perm(2).unwrap().image(), &[0, 1, 3, 2]);
        assert_eq!(cnot1_perm(3).unwrap().image(), &[0, 1, 2, 4, 5, 3, 8, 6, 7]);
        assert_eq!(cnot1_perm(1).unwrap().image(), &[0]);
        assert_eq!(cnot1_perm(0), Err(Error::InvalidDimension));
        assert_eq!(
            cnot1_perm(3).unwrap().image(),
            &evaluate(3, |m, n| (m, (n + m) % 3))[..]
        );
    }

    #[test]
    fn cnot2_tables() {
        assert_eq!(cnot2_perm(3).unwrap().image(), &[0, 4, 8, 3, 7, 2, 6, 1, 5]);
        assert_eq!(cnot2_perm(2).unwrap().image(), &[0, 3, 2, 1]);
        assert_eq!(cnot2_perm(1).unwrap().image(), &[0]);
        assert_eq!(cnot2_perm(0), Err(Error::InvalidDimension));
    }

    #[test]
    fn swap_tables() {
        assert_eq!(swap_perm(3).unwrap().image(), &[0, 3, 6, 1, 4, 7, 2, 5, 8]);
        assert_eq!(swap_perm(2).unwrap().image(), &[0, 2, 1, 3]);
        for d in 1..10 {
            let s = swap_perm(d).unwrap();
            assert!(s.compose(&s).unwrap().is_identity());
            assert_eq!(s.inverse(), s);
        }
    }

    #[test]
    fn qutrit_matrices_match_published_grids() {
        let cases = [
            (GateKind::Cnot1, include_str!("../tests/fixtures/cnot1_d3.txt")),
            (GateKind::Cnot2, include_str!("../tests/fixtures/cnot2_d3.txt")),
            (GateKind::SwapTarget, include_str!("../tests/fixtures/swap_d3.txt")),
        ];
        for (gate, text) in cases {
            assert_eq!(gate.perm(3).unwrap().to_matrix(), fixture(text), "{gate}");
        }
    }

    #[test]
    fn qutrit_listing_is_inverse_of_forward_cnot1() {
        // The two-row qutrit listing tabulates the subtraction direction.
        let listed = Perm::from_image(vec![0, 1, 2, 5, 3, 4, 7, 8, 6]).unwrap();
        let forward = cnot1_perm(3).unwrap();
        assert_eq!(forward.inverse(), listed);
        assert_eq!(listed.cycle_type(), forward.cycle_type());
        assert_eq!(listed.signature(), forward.signature());
    }

    #[test]
    fn qutrit_swap_listing_erratum() {
        // The printed two-row SWAP listing is not the action of the SWAP
        // matrix, but shares its cycle type and sign.
        let listed = Perm::from_image(vec![0, 5, 6, 7, 4, 1, 2, 3, 8]).unwrap();
        let swap = swap_perm(3).unwrap();
        assert_ne!(listed, swap);
        let differing: Vec<usize> = (0..9)
            .filter(|&i| listed.image()[i] != swap.image()[i])
            .collect();
        assert_eq!(differing, vec![1, 3, 5, 7]);
        assert_eq!(listed.cycle_type(), swap.cycle_type());
        assert_eq!(listed.signature(), Sign::Minus);
    }

    #[test]
    fn cnot1_is_involution_for_qubits() {
        let c = cnot1_perm(2).unwrap();
        assert!(c.compose(&c).unwrap().is_identity());
    }

    #[test]
    fn qutrit_cycles() {
        assert_eq!(
            cnot1_perm(3).unwrap().cycles(),
            vec![vec![0], vec![1], vec![2], vec![3, 4, 5], vec![6, 8, 7]]
        );
        assert_eq!(
            swap_perm(3).unwrap().cycles(),
            vec![vec![0], vec![1, 3], vec![2, 6], vec![4], vec![5, 7], vec![8]]
        );
        assert_eq!(cnot1_perm(3).unwrap().cycle_type().to_string(), "(1,1,1,3,3)");
        assert_eq!(swap_perm(3).unwrap().cycle_type().to_string(), "(1,1,1,2,2,2)");
        assert_eq!(
            cnot1_perm(3).unwrap().inverse().image(),
            &[0, 1, 2, 5, 3, 4, 7, 8, 6]
        );
    }

    #[test]
    fn fixed_point_counts() {
        for d in 1..=50 {
            assert_eq!(cnot1_perm(d).unwrap().fixed_points(), d as usize);
            assert_eq!(cnot2_perm(d).unwrap().fixed_points(), d as usize);
            let swap = swap_perm(d).unwrap();
            assert_eq!(swap.fixed_points(), d as usize);
            let ct = swap.cycle_type();
            let d = d as usize;
            assert_eq!(ct.count(1), d);
            assert_eq!(ct.count(2), d * (d - 1) / 2);
            assert_eq!(ct.lengths().len(), d + d * (d - 1) / 2);
        }
    }

    #[test]
    fn prime_cnot_cycle_structure() {
        for d in [2u32, 3, 5, 7, 11, 13] {
            let ct = cnot1_perm(d).unwrap().cycle_type();
            let du = d as usize;
            assert_eq!(ct.count(1), du);
            assert_eq!(ct.count(du), du - 1);
            assert_eq!(ct.lengths().len(), 2 * du - 1);
        }
    }

    #[test]
    fn composite_cnot_cycle_structure() {
        // At d = 4: m = 0 fixes 4, m = 2 gives two 2-cycles, m = 1, 3 one 4-cycle each.
        let ct = cnot1_perm(4).unwrap().cycle_type();
        assert_eq!(ct.lengths(), &[1, 1, 1, 1, 2, 2, 4, 4]);
    }

    #[test]
    fn cnot2_is_swap_conjugate_of_cnot1() {
        for d in 1..=20 {
            let s = swap_perm(d).unwrap();
            let conj = s.compose(&cnot1_perm(d).unwrap()).unwrap().compose(&s).unwrap();
            assert_eq!(conj, cnot2_perm(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn generators_are_linear() {
        for d in 1..=20 {
            let c1 = as_linear_map(&cnot1_perm(d).unwrap(), d).unwrap().unwrap();
            let c2 = as_linear_map(&cnot2_perm(d).unwrap(), d).unwrap().unwrap();
            let sw = as_linear_map(&swap_perm(d).unwrap(), d).unwrap().unwrap();
            if d > 1 {
                assert_eq!((c1.a, c1.b, c1.c, c1.e), (1, 0, 1, 1));
                assert_eq!((c2.a, c2.b, c2.c, c2.e), (1, 1, 0, 1));
                assert_eq!((sw.a, sw.b, sw.c, sw.e), (0, 1, 1, 0));
            }
            assert_eq!(c1.determinant(), 1 % d);
            assert_eq!(c2.determinant(), 1 % d);
            assert_eq!(sw.determinant(), d - 1);
        }
    }

    #[test]
    fn nonlinear_maps_are_rejected() {
        // Moves the origin.
        let p = Perm::from_image(vec![1, 0, 2, 3]).unwrap();
        assert_eq!(as_linear_map(&p, 2).unwrap(), None);
        // Fixes the origin and both unit vectors but is not linear.
        let q = Perm::from_image(vec![0, 1, 2, 3, 5, 4, 6, 7, 8]).unwrap();
        assert_eq!(as_linear_map(&q, 3).unwrap(), None);
        assert!(matches!(
            as_linear_map(&p, 3),
            Err(Error::SizeMismatch { left: 4, right: 9 })
        ));
    }

    #[test]
    fn gate_names_parse() {
        assert_eq!("cnot1".parse::<GateKind>(), Ok(GateKind::Cnot1));
        assert_eq!("SWAP".parse::<GateKind>(), Ok(GateKind::SwapTarget));
        assert!("toffoli".parse::<GateKind>().is_err());
        assert!(Generator::Cnot1 < Generator::Cnot2);
    }
}
