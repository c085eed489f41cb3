//! Integer partitions and Young-diagram combinatorics.

use std::fmt;
use std::str::FromStr;

use num::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotSorted(Vec<u32>),
    #[error("operation requires strictly decreasing parts, got {0}")]
    NotStrict(Partition),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A partition: weakly decreasing positive integers. The empty partition is
/// allowed. Canonical on construction: zero parts are stripped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(PartitionError::NotSorted(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(n)`, or the empty partition when `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The single-column partition `(1^k)`.
    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`-th part (1-based in the math, 0-based here), zero past the height.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Single-column test: `(1^k)` for some `k >= 1`.
    pub fn is_column(&self) -> bool {
        !self.0.is_empty() && self.0[0] == 1
    }

    /// Conjugate (transposed) diagram.
    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            parts.push(self.0.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition(parts)
    }

    /// The permutation on `|λ|` letters sending the row-major index of cell
    /// `(i,j)` of `λ` to the row-major index of cell `(j,i)` of `λ'`.
    /// Returned 0-based: `perm[l]` is the image of letter `l`.
    pub fn sigma_perm(&self) -> Vec<usize> {
        let conj = self.conjugate();
        // row-major offset of row i in the conjugate diagram
        let mut conj_offsets = Vec::with_capacity(conj.height() + 1);
        let mut acc = 0usize;
        for &p in conj.parts() {
            conj_offsets.push(acc);
            acc += p as usize;
        }
        let mut perm = Vec::with_capacity(self.size() as usize);
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                // cell (i, j) of λ maps to cell (j, i) of λ'
                perm.push(conj_offsets[j] + i);
            }
        }
        perm
    }

    /// Hook lengths of the main-diagonal cells.
    pub fn diagonal_hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::new();
        for i in 0.. {
            if self.part(i) as usize <= i {
                break;
            }
            let arm = self.part(i) - i as u32 - 1;
            let leg = conj.part(i) - i as u32 - 1;
            hooks.push(arm + leg + 1);
        }
        hooks
    }

    /// For strict `λ = (λ_1 > ... > λ_r)`: the partition of `2|λ|` whose
    /// diagonal hook lengths are `2λ_i` and whose `i`-th part is `λ_i + i`.
    /// Built from Frobenius coordinates: arm `λ_i`, leg `λ_i − 1` at the
    /// `i`-th diagonal cell.
    pub fn two_bracket(&self) -> Result<Partition, PartitionError> {
        if !self.has_distinct_parts() {
            return Err(PartitionError::NotStrict(self.clone()));
        }
        let r = self.height();
        let mut parts: Vec<u32> = (0..r).map(|i| self.0[i] + i as u32 + 1).collect();
        // rows below the diagonal block: row i (1-based) collects the columns
        // j <= r whose leg reaches it, i.e. those with λ_j + j - 1 >= i
        for i in (r + 1).. {
            let cnt = (0..r)
                .filter(|&j| self.0[j] as usize + j >= i)
                .count() as u32;
            if cnt == 0 {
                break;
            }
            parts.push(cnt);
        }
        Partition::new(parts)
    }

    /// Dominance order: `μ ⊴ λ` (partial sums of `μ` bounded by those of `λ`).
    /// Requires equal sizes; returns false otherwise.
    pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> bool {
        if mu.size() != lambda.size() {
            return false;
        }
        let n = mu.height().max(lambda.height());
        let (mut sm, mut sl) = (0u64, 0u64);
        for i in 0..n {
            sm += mu.part(i) as u64;
            sl += lambda.part(i) as u64;
            if sm > sl {
                return false;
            }
        }
        true
    }
}

/// Dimension of the irreducible polynomial `GL_g` representation of highest
/// weight `λ` (Weyl dimension formula, zero-padded to length `g`).
/// Zero when `height(λ) > g`.
pub fn dim_gl(lambda: &Partition, g: usize) -> u128 {
    if lambda.height() > g {
        return 0;
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..g {
        for j in (i + 1)..g {
            let li = lambda.part(i) as i64;
            let lj = lambda.part(j) as i64;
            num *= BigUint::from((li - lj + j as i64 - i as i64) as u64);
            den *= BigUint::from((j - i) as u64);
        }
    }
    let q = num / den;
    let digits = q.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0] as u128,
        2 => digits[0] as u128 | ((digits[1] as u128) << 64),
        _ => panic!("dim_gl overflow for {lambda} at g={g}"),
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions_of(n: u32) -> PartitionIter {
    PartitionIter {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Partitions of `n` with strictly decreasing parts.
pub fn distinct_part_partitions(n: u32) -> impl Iterator<Item = Partition> {
    partitions_of(n).filter(Partition::has_distinct_parts)
}

pub struct PartitionIter {
    next: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.next.take()?;
        self.next = lex_successor(&cur);
        Some(Partition(cur))
    }
}

// Next partition in descending lex order: shrink the last part > 1 and
// redistribute the remainder greedily.
fn lex_successor(parts: &[u32]) -> Option<Vec<u32>> {
    let k = parts.iter().rposition(|&p| p > 1)?;
    let mut next: Vec<u32> = parts[..k].to_vec();
    let cap = parts[k] - 1;
    let mut rest = parts[k..].iter().map(|&p| p as u64).sum::<u64>();
    while rest > 0 {
        let take = (cap as u64).min(rest) as u32;
        next.push(take);
        rest -= take as u64;
    }
    Some(next)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `[6,5,4,2,1]`; an entry `a^b` expands to `b` copies of `a`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            if let Some((base, exp)) = piece.split_once('^') {
                let b: u32 = base
                    .trim()
                    .parse()
                    .map_err(|_| PartitionError::Parse(s.to_string()))?;
                let e: u32 = exp
                    .trim()
                    .parse()
                    .map_err(|_| PartitionError::Parse(s.to_string()))?;
                parts.extend(std::iter::repeat(b).take(e as usize));
            } else {
                parts.push(
                    piece
                        .parse()
                        .map_err(|_| PartitionError::Parse(s.to_string()))?,
                );
            }
        }
        Partition::new(parts)
    }
}
