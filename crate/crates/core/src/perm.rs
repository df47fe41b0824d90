//! Exact permutation algebra on `n` points.
//!
//! A [`Perm`] is stored as its image table: `image[i]` is where point `i`
//! goes. Products follow the functional convention `(p · q)(i) = p(q(i))`,
//! so [`Perm::compose`] applies its argument first.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest matrix dimension accepted by [`PermMatrix::determinant`].
pub const MAX_DETERMINANT_SIZE: usize = 256;

/// A bijection on `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    image: Box<[u32]>,
}

impl Perm {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > u32::MAX as usize {
            return Err(Error::guard("permutation size", n as u64, u32::MAX));
        }
        Ok(Perm {
            image: (0..n as u32).collect(),
        })
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_image(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen = vec![false; n];
        for &x in &image {
            match seen.get_mut(x as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(Error::NotBijection { n }),
            }
        }
        Ok(Perm {
            image: image.into_boxed_slice(),
        })
    }

    /// Size of the underlying point set.
    pub fn len(&self) -> usize {
        self.image.len()
    }

    /// Always false: permutations have at least one point.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.image[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Returns `self · other`, the permutation applying `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            image: inv.into_boxed_slice(),
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm {
            image: (0..self.len() as u32).collect(),
        };
        for _ in 0..k {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    /// Disjoint cycle decomposition in canonical form.
    ///
    /// Every point appears in exactly one cycle (fixed points as 1-cycles).
    /// Each cycle starts at its least point and the cycles are sorted by
    /// their starting point, which makes the output unique.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut visited = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x as u32);
                x = self.image[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    fn cycle_count(&self) -> usize {
        let mut visited = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.image[x] as usize;
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        CycleType(lengths)
    }

    /// Sign as `(-1)^(n - c)` with `c` the number of cycles, fixed points included.
    pub fn signature(&self) -> Sign {
        Sign::from_odd((self.len() - self.cycle_count()) % 2 == 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// The matrix with a 1 in row `p(i)`, column `i`.
    pub fn to_matrix(&self) -> PermMatrix {
        let n = self.len();
        let mut entries = vec![0u8; n * n];
        for (i, &j) in self.image.iter().enumerate() {
            entries[j as usize * n + i] = 1;
        }
        PermMatrix { n, entries }
    }

    /// Cycle notation with fixed points omitted, `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(u32::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }
}

impl Mul for &Perm {
    type Output = Perm;

    /// Panics on size mismatch; use [`Perm::compose`] for the checked form.
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs).expect("permutation sizes differ")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Parity of a permutation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_odd(self != rhs)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("invalid sign {other}"))),
        }
    }
}

/// Cycle lengths of a permutation in ascending order, fixed points included.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn points(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of cycles of exactly length `len`.
    pub fn count(&self, len: usize) -> usize {
        self.0.iter().filter(|&&l| l == len).count()
    }
}

impl From<Vec<usize>> for CycleType {
    fn from(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        CycleType(lengths)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Output layouts for [`PermMatrix`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixFormat {
    /// Rows of space-separated digits.
    Pretty,
    /// `{"entries":[..row-major..],"n":n}`.
    Json,
    /// Comma-separated rows.
    Csv,
}

impl std::str::FromStr for MatrixFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pretty" => Ok(MatrixFormat::Pretty),
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            other => Err(format!("unknown matrix format `{other}`")),
        }
    }
}

/// A 0/1 matrix with exactly one 1 in every row and column.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PermMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl PermMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("no rows".into()));
        }
        let mut col_hits = vec![0usize; n];
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut ones = 0;
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => {
                        ones += 1;
                        col_hits[c] += 1;
                    }
                    _ => return Err(Error::InvalidMatrix(format!("entry {v} is not 0/1"))),
                }
            }
            if ones != 1 {
                return Err(Error::InvalidMatrix(format!("row {r} has {ones} ones")));
            }
            entries.extend_from_slice(row);
        }
        if let Some(c) = col_hits.iter().position(|&h| h != 1) {
            return Err(Error::InvalidMatrix(format!(
                "column {c} has {} ones",
                col_hits[c]
            )));
        }
        Ok(PermMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.n)
    }

    /// Recovers the permutation: column `i` holds its 1 in row `p(i)`.
    pub fn to_perm(&self) -> Perm {
        let mut image = vec![0u32; self.n];
        for (row, r) in self.rows().enumerate() {
            let col = r.iter().position(|&v| v == 1).expect("validated row");
            image[col] = row as u32;
        }
        Perm {
            image: image.into_boxed_slice(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Deliberately ignores the permutation structure so that it can be
    /// checked against [`Perm::signature`].
    pub fn determinant(&self) -> Result<i64> {
        let n = self.n;
        if n > MAX_DETERMINANT_SIZE {
            return Err(Error::guard(
                "matrix dimension",
                n as u64,
                MAX_DETERMINANT_SIZE as u64,
            ));
        }
        let mut a: Vec<i64> = self.entries.iter().map(|&v| v as i64).collect();
        let mut sign = 1i64;
        let mut prev = 1i64;
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let lead = a[i * n + k];
                for j in k + 1..n {
                    let num = a[i * n + j]
                        .checked_mul(pivot)
                        .zip(lead.checked_mul(a[k * n + j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(Error::DeterminantOverflow)?;
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = pivot;
        }
        Ok(sign * a[n * n - 1])
    }

    pub fn render(&self, format: MatrixFormat) -> String {
        match format {
            MatrixFormat::Pretty => self.render_rows(" "),
            MatrixFormat::Csv => self.render_rows(","),
            MatrixFormat::Json => {
                let mut s = serde_json::to_string(&self.to_json()).expect("plain json value");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "entries": self.entries })
    }

    fn render_rows(&self, sep: &str) -> String {
        let mut out = String::with_capacity(self.n * self.n * 2);
        for row in self.rows() {
            let cells: Vec<&str> = row.iter().map(|&v| if v == 1 { "1" } else { "0" }).collect();
            out.push_str(&cells.join(sep));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(MatrixFormat::Pretty))
    }
}
