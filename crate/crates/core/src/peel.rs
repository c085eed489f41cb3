//! Independent plethysm oracle for small degrees: evaluate s_λ ∘ s_μ as an
//! honest polynomial in d variables by tableau enumeration, then decompose
//! by peeling highest weights. No power sums, no characters — this path
//! shares nothing with the main engine beyond the partition type.

use std::collections::BTreeMap;

use crate::partitions::Partition;
use crate::tableaux::ssyt_weights;

/// Decomposition of s_λ ∘ s_μ by highest-weight peeling, using `d = |λ||μ|`
/// variables. Exponential in the degree; keep inputs small.
pub fn plethysm_by_peeling(lam: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    let nvars = (lam.size() * mu.size()) as usize;
    // the monomials of s_μ in nvars variables, one per tableau
    let inner = ssyt_weights(mu, nvars);
    // s_λ evaluated at those monomials
    let outer = ssyt_weights(lam, inner.len());
    let mut poly: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for weight in outer {
        let mut expo = vec![0u32; nvars];
        for (j, &mult) in weight.iter().enumerate() {
            if mult > 0 {
                for (v, &e) in inner[j].iter().enumerate() {
                    expo[v] += mult * e;
                }
            }
        }
        *poly.entry(expo).or_insert(0) += 1;
    }
    decompose_by_peeling(poly, nvars)
}

/// Peels a symmetric polynomial (monomial expansion) into Schur constituents:
/// repeatedly locate the lex-greatest dominant exponent vector, read off its
/// coefficient, and subtract that multiple of the corresponding Schur
/// polynomial.
pub fn decompose_by_peeling(
    mut poly: BTreeMap<Vec<u32>, i64>,
    nvars: usize,
) -> Vec<(Partition, u64)> {
    let mut out = Vec::new();
    loop {
        poly.retain(|_, c| *c != 0);
        // lex-greatest weakly decreasing exponent vector with nonzero coeff
        let top = poly
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (e.clone(), *c))
            .max_by(|a, b| a.0.cmp(&b.0));
        let Some((expo, c)) = top else { break };
        assert!(c > 0, "peeling found negative leading coefficient");
        let eta = Partition::new(expo).unwrap();
        for w in ssyt_weights(&eta, nvars) {
            *poly.entry(w).or_insert(0) -= c;
        }
        out.push((eta, c as u64));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
