//! Symmetric-group characters via the Murnaghan-Nakayama border-strip
//! recursion, organized in whole columns: one column holds χ^λ(μ) for every
//! λ of the relevant degree at a fixed cycle type μ. Columns for proper
//! suffixes of cycle types are cached and shared, so filling a character
//! table costs each strip removal once.

use std::collections::HashMap;
use std::sync::Arc;

use crate::partitions::{partitions_of, Partition};

#[derive(Default)]
pub struct CharEngine {
    parts_by_deg: Vec<Arc<Vec<Partition>>>,
    index_by_deg: Vec<Arc<HashMap<Partition, usize>>>,
    suffix_columns: HashMap<Partition, Arc<Vec<i128>>>,
}

impl CharEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// All partitions of `n`, in a fixed order shared with `column`.
    pub fn partitions(&mut self, n: u32) -> Arc<Vec<Partition>> {
        self.ensure_degree(n);
        Arc::clone(&self.parts_by_deg[n as usize])
    }

    pub fn index_of(&mut self, lam: &Partition) -> usize {
        let n = lam.size() as u32;
        self.ensure_degree(n);
        self.index_by_deg[n as usize][lam]
    }

    /// χ^λ(μ) for all λ ⊢ |μ|, indexed as in `partitions(|μ|)`.
    pub fn column(&mut self, mu: &Partition) -> Arc<Vec<i128>> {
        if let Some(col) = self.suffix_columns.get(mu) {
            return Arc::clone(col);
        }
        let col = Arc::new(self.build_column(mu));
        self.suffix_columns.insert(mu.clone(), Arc::clone(&col));
        col
    }

    /// Like `column` but never cached: used for top-degree cycle types that a
    /// caller visits once, keeping the cache to proper suffixes.
    pub fn column_once(&mut self, mu: &Partition) -> Vec<i128> {
        if let Some(col) = self.suffix_columns.get(mu) {
            return col.as_ref().clone();
        }
        self.build_column(mu)
    }

    /// Single character value χ^λ(μ). Requires `|λ| = |μ|`.
    pub fn character(&mut self, lam: &Partition, mu: &Partition) -> i128 {
        assert_eq!(lam.size(), mu.size(), "character: size mismatch");
        let idx = self.index_of(lam);
        if let Some(col) = self.suffix_columns.get(mu) {
            return col[idx];
        }
        // one row only: recurse without materializing the whole column
        self.single(lam, mu)
    }

    fn single(&mut self, lam: &Partition, mu: &Partition) -> i128 {
        if mu.is_empty() {
            return 1;
        }
        let t = mu.part(0);
        let rest = Partition::new(mu.parts()[1..].to_vec()).unwrap();
        let rest_col = self.column(&rest);
        let mut acc = 0i128;
        for (xi, sign) in border_strip_removals(lam, t) {
            let idx = self.index_of(&xi);
            acc += sign as i128 * rest_col[idx];
        }
        acc
    }

    fn build_column(&mut self, mu: &Partition) -> Vec<i128> {
        let n = mu.size() as u32;
        self.ensure_degree(n);
        if mu.is_empty() {
            return vec![1];
        }
        let t = mu.part(0);
        let rest = Partition::new(mu.parts()[1..].to_vec()).unwrap();
        let rest_col = self.column(&rest);
        let lams = Arc::clone(&self.parts_by_deg[n as usize]);
        let rest_index = Arc::clone(&self.index_by_deg[(n - t) as usize]);
        let mut col = vec![0i128; lams.len()];
        for (i, lam) in lams.iter().enumerate() {
            let mut acc = 0i128;
            for (xi, sign) in border_strip_removals(lam, t) {
                acc += sign as i128 * rest_col[rest_index[&xi]];
            }
            col[i] = acc;
        }
        col
    }

    fn ensure_degree(&mut self, n: u32) {
        while self.parts_by_deg.len() <= n as usize {
            let m = self.parts_by_deg.len() as u32;
            let parts: Vec<Partition> = partitions_of(m).collect();
            let index: HashMap<Partition, usize> = parts
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect();
            self.parts_by_deg.push(Arc::new(parts));
            self.index_by_deg.push(Arc::new(index));
        }
    }
}

/// All ways to remove a border strip of `t` cells from `λ`, with the sign
/// `(-1)^(height-1)`. Beta-number (abacus) formulation: move one bead down
/// by `t`; the sign counts beads jumped over.
pub fn border_strip_removals(lam: &Partition, t: u32) -> Vec<(Partition, i32)> {
    let l = lam.height();
    let beta: Vec<i64> = (0..l)
        .map(|i| lam.parts()[i] as i64 + (l - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for i in 0..l {
        let target = beta[i] - t as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&b| target < b && b < beta[i]).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (l - 1 - j) as i64) as u32)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts).unwrap(), sign));
    }
    out
}
