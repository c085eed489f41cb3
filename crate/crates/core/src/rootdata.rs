//! Root datum of Sp_2g with its Siegel Levi GL_g: positive (co)roots in
//! ε-coordinates, signed-permutation Weyl orbits, ρ-shifts, and the
//! dictionary taking a partition to the weight of the associated
//! automorphic bundle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("partition height {height} exceeds g = {g}")]
    HeightExceedsG { height: usize, g: usize },
    #[error("cannot parse weight from {0:?}")]
    Parse(String),
}

/// A character of the diagonal torus in ε-coordinates: `g` integers
/// `(k_1, …, k_g)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// L-dominant: weakly decreasing coordinates.
    pub fn is_l_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Parallel weight `k(1,…,1)`; returns `k` when so.
    pub fn parallel_value(&self) -> Option<i64> {
        let k = *self.0.first()?;
        self.0.iter().all(|&c| c == k).then_some(k)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| WeightError::Parse(s.to_string()))?;
        let mut coords = Vec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            coords.push(
                piece
                    .parse()
                    .map_err(|_| WeightError::Parse(s.to_string()))?,
            );
        }
        Ok(Weight(coords))
    }
}

/// The C_g root datum with the Siegel Levi of type A_{g-1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootDatumC {
    g: usize,
}

impl RootDatumC {
    pub fn new(g: usize) -> Self {
        assert!(g >= 1, "g must be positive");
        RootDatumC { g }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn weyl_order(&self) -> u64 {
        (1u64 << self.g) * (1..=self.g as u64).product::<u64>()
    }

    fn unit(&self, i: usize, sign: i64) -> Vec<i64> {
        let mut v = vec![0i64; self.g];
        v[i] = sign;
        v
    }

    /// Φ⁺ = {e_i−e_j : i<j} ∪ {e_i+e_j : i<j} ∪ {2e_i}.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for i in 0..self.g {
            for j in (i + 1)..self.g {
                let mut v = self.unit(i, 1);
                v[j] = -1;
                out.push(v);
                let mut w = self.unit(i, 1);
                w[j] = 1;
                out.push(w);
            }
        }
        for i in 0..self.g {
            out.push(self.unit(i, 2));
        }
        out
    }

    /// Coroots of Φ⁺: e_i±e_j keep their shape, 2e_i has coroot e_i.
    pub fn positive_coroots(&self) -> Vec<Vec<i64>> {
        self.positive_roots()
            .into_iter()
            .map(|r| {
                if r.iter().any(|&c| c.abs() == 2) {
                    r.iter().map(|&c| c / 2).collect()
                } else {
                    r
                }
            })
            .collect()
    }

    /// Coroots of the Levi positives Φ⁺_L = {e_i−e_j : i<j}.
    pub fn levi_positive_coroots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for i in 0..self.g {
            for j in (i + 1)..self.g {
                let mut v = self.unit(i, 1);
                v[j] = -1;
                out.push(v);
            }
        }
        out
    }

    /// Orbit of a coordinate vector under the Weyl group of type C_g
    /// (signed permutations), by closure under the simple generators.
    pub fn weyl_orbit(&self, v: &[i64]) -> BTreeSet<Vec<i64>> {
        assert_eq!(v.len(), self.g);
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier = vec![v.to_vec()];
        orbit.insert(v.to_vec());
        while let Some(cur) = frontier.pop() {
            for i in 0..self.g {
                let mut next = cur.clone();
                if i + 1 < self.g {
                    next.swap(i, i + 1);
                } else {
                    next[i] = -next[i];
                }
                if orbit.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        orbit
    }

    /// 2ρ_L = (g−1, g−3, …, −(g−1)).
    pub fn two_rho_l(&self) -> Weight {
        Weight(
            (0..self.g)
                .map(|i| self.g as i64 - 1 - 2 * i as i64)
                .collect(),
        )
    }

    /// ρ for Sp_2g: (g, g−1, …, 1).
    pub fn rho_c(&self) -> Weight {
        Weight((0..self.g).map(|i| (self.g - i) as i64).collect())
    }
}

/// Perfect pairing ⟨λ, α∨⟩ in ε-coordinates.
pub fn pairing(lambda: &Weight, coroot: &[i64]) -> Result<i64, WeightError> {
    if lambda.len() != coroot.len() {
        return Err(WeightError::LengthMismatch {
            expected: lambda.len(),
            got: coroot.len(),
        });
    }
    Ok(lambda
        .coords()
        .iter()
        .zip(coroot)
        .map(|(a, b)| a * b)
        .sum())
}

/// The weight of the automorphic bundle attached to S_η: pad η with zeros
/// to length g, reverse, negate. L-dominant by construction.
pub fn automorphic_weight(eta: &Partition, g: usize) -> Result<Weight, WeightError> {
    if eta.height() > g {
        return Err(WeightError::HeightExceedsG {
            height: eta.height(),
            g,
        });
    }
    let coords: Vec<i64> = (0..g).rev().map(|i| -(eta.part(i) as i64)).collect();
    Ok(Weight(coords))
}
