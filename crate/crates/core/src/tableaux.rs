//! Semistandard Young tableau enumeration. Brute-force scale only: this
//! backs the independent oracles and small Kostka expansions, not the
//! plethysm engine.

use crate::partitions::Partition;

/// Weight vectors (length `n`) of all semistandard tableaux of the given
/// shape with entries in `1..=n`, one entry per tableau.
pub fn ssyt_weights(shape: &Partition, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let rows = shape.height();
    if rows == 0 {
        out.push(vec![0; n]);
        return out;
    }
    let mut tab: Vec<Vec<u32>> = shape.parts().iter().map(|&p| vec![0; p as usize]).collect();
    fill(shape, n, &mut tab, 0, 0, &mut out);
    out
}

fn fill(
    shape: &Partition,
    n: usize,
    tab: &mut Vec<Vec<u32>>,
    row: usize,
    col: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if row == shape.height() {
        let mut w = vec![0u32; n];
        for r in tab.iter() {
            for &v in r {
                w[(v - 1) as usize] += 1;
            }
        }
        out.push(w);
        return;
    }
    let (nrow, ncol) = if col + 1 == shape.part(row) as usize {
        (row + 1, 0)
    } else {
        (row, col + 1)
    };
    let lo = {
        let left = if col > 0 { tab[row][col - 1] } else { 1 };
        let above = if row > 0 { tab[row - 1][col] + 1 } else { 1 };
        left.max(above)
    };
    for v in lo..=n as u32 {
        tab[row][col] = v;
        fill(shape, n, tab, nrow, ncol, out);
    }
}

/// Number of semistandard tableaux of `shape` with entries in `1..=n`.
pub fn ssyt_count(shape: &Partition, n: usize) -> u64 {
    ssyt_weights(shape, n).len() as u64
}
