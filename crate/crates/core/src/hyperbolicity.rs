//! The hyperbolicity pipeline: decompose S_λ ∘ Sym² into Schur functors,
//! push each graded piece through the automorphic-weight dictionary, and
//! certify every constituent at the given characteristic. Also the closed
//! forms for the exterior-power case and the k/p thresholds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{dim_gl, distinct_part_partitions, Partition, PartitionError};
use crate::positivity::{certify, is_prime, AmpleCertificate, PositivityError, Route};
use crate::rootdata::{automorphic_weight, RootDatumC, Weight, WeightError};
use crate::symfunc::{filtration_condition, plethysm_with_max_height, SymFuncError};

#[derive(Debug, Error)]
pub enum HyperbolicityError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("empty partition has no Schur functor")]
    EmptyPartition,
    #[error("partition height {height} exceeds g = {g}")]
    HeightExceedsG { height: usize, g: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    SymFunc(#[from] SymFuncError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Positivity(#[from] PositivityError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified,
    FiltrationFails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub eta: Partition,
    pub multiplicity: u64,
    pub weight: Weight,
    pub certificate: AmpleCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicityReport {
    pub g: usize,
    pub p: u64,
    pub lambda: Partition,
    pub filtration_ok: bool,
    pub constituents: Vec<Constituent>,
    pub verdict: Verdict,
    pub uncovered: Vec<Weight>,
    pub notes: String,
}

/// Graded pieces of Λ^k ∘ Sym² surviving in g variables:
/// {2[λ] : λ a strict partition of k with λ_1 ≤ g}, each once.
pub fn lambda_k_sym2(k: u32, g: usize) -> Vec<(Partition, u64)> {
    assert!(k >= 1);
    let mut out: Vec<(Partition, u64)> = distinct_part_partitions(k)
        .filter(|lam| lam.part(0) as usize <= g)
        .map(|lam| (lam.two_bracket().unwrap(), 1))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// k ≥ g(g−1)/2 + 1 forces every strict partition of k to have a part > g,
/// so all graded pieces die in g variables.
pub fn k_threshold(g: usize) -> u32 {
    (g * (g - 1) / 2 + 1) as u32
}

/// Characteristic bound of the main theorem: p ≥ g² + 3g + 1.
pub fn p_threshold(g: usize) -> u64 {
    (g * g + 3 * g + 1) as u64
}

/// True iff every strict partition of k has largest part ≥ g; equals
/// k ≥ k_threshold(g) (checked by enumeration in the tests).
pub fn strict_partition_height_check(k: u32, g: usize) -> bool {
    distinct_part_partitions(k).all(|lam| lam.part(0) as usize >= g)
}

/// |λ| · dim ∇(λ) / g, the exponent of the log-canonical bundle in the
/// determinant of S_λ applied to a rank-g bundle. Always integral.
pub fn log_canonical_exponent(lam: &Partition, g: usize) -> Result<u128, HyperbolicityError> {
    if lam.height() > g {
        return Err(HyperbolicityError::HeightExceedsG {
            height: lam.height(),
            g,
        });
    }
    let num = lam.size() as u128 * dim_gl(lam, g);
    assert_eq!(num % g as u128, 0, "non-integral exponent for λ={lam}");
    Ok(num / g as u128)
}

/// Full analysis of S_λ Ω¹(log D) at (g, p): filtration condition,
/// constituents of S_λ ∘ Sym² of height ≤ g with their weights and
/// certificates, and the assembled verdict.
pub fn analyze(
    lam: &Partition,
    g: usize,
    p: u64,
) -> Result<HyperbolicityReport, HyperbolicityError> {
    if !is_prime(p) {
        return Err(HyperbolicityError::NotPrime(p));
    }
    if lam.is_empty() {
        return Err(HyperbolicityError::EmptyPartition);
    }
    let filtration_ok = filtration_condition(lam, p);
    let pieces = if lam.is_column() {
        lambda_k_sym2(lam.size() as u32, g)
    } else {
        plethysm_with_max_height(lam, &Partition::row(2), Some(g))?
    };
    let datum = RootDatumC::new(g);
    let mut constituents = Vec::with_capacity(pieces.len());
    let mut uncovered = Vec::new();
    for (eta, mult) in pieces {
        let weight = automorphic_weight(&eta, g)?;
        let certificate = certify(&weight, p, &datum)?;
        if certificate.route == Route::None {
            uncovered.push(weight.clone());
        }
        constituents.push(Constituent {
            eta,
            multiplicity: mult,
            weight,
            certificate,
        });
    }
    let verdict = if !filtration_ok {
        Verdict::FiltrationFails
    } else if uncovered.is_empty() {
        Verdict::Certified
    } else {
        Verdict::NotCertified
    };
    let notes = if verdict == Verdict::Certified && p < p_threshold(g) {
        "below paper threshold, certificate still valid".to_string()
    } else {
        String::new()
    };
    Ok(HyperbolicityReport {
        g,
        p,
        lambda: lam.clone(),
        filtration_ok,
        constituents,
        verdict,
        uncovered,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn lambda_k_sym2_examples() {
        assert_eq!(
            lambda_k_sym2(5, 6),
            vec![
                (p(&[4, 4, 2]), 1),
                (p(&[5, 3, 1, 1]), 1),
                (p(&[6, 1, 1, 1, 1]), 1)
            ]
        );
        assert_eq!(lambda_k_sym2(1, 1), vec![(p(&[2]), 1)]);
        assert_eq!(lambda_k_sym2(5, 3), vec![(p(&[4, 4, 2]), 1)]);
    }

    #[test]
    fn closed_form_matches_engine() {
        for k in 1..=6u32 {
            for g in 1..=4usize {
                let closed = lambda_k_sym2(k, g);
                let engine =
                    plethysm_with_max_height(&Partition::column(k), &Partition::row(2), Some(g))
                        .unwrap();
                assert_eq!(closed, engine, "k={k} g={g}");
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!((k_threshold(1), p_threshold(1)), (1, 5));
        assert_eq!((k_threshold(2), p_threshold(2)), (2, 11));
        assert_eq!((k_threshold(3), p_threshold(3)), (4, 19));
        assert_eq!((k_threshold(4), p_threshold(4)), (7, 29));
    }

    #[test]
    fn strict_height_iff_threshold() {
        assert!(strict_partition_height_check(7, 4));
        assert!(!strict_partition_height_check(6, 4));
        assert!(strict_partition_height_check(2, 2));
        for g in 1..=5usize {
            for k in 1..=20u32 {
                assert_eq!(
                    strict_partition_height_check(k, g),
                    k >= k_threshold(g),
                    "k={k} g={g}"
                );
            }
        }
    }

    #[test]
    fn log_canonical_examples() {
        assert_eq!(log_canonical_exponent(&p(&[1, 1]), 2).unwrap(), 1);
        assert_eq!(log_canonical_exponent(&p(&[2]), 2).unwrap(), 3);
        // S_(2,2) of a rank-2 bundle is det², so 4·1/2 = 2
        assert_eq!(log_canonical_exponent(&p(&[2, 2]), 2).unwrap(), 2);
        assert!(log_canonical_exponent(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn analyze_exterior_square_g2() {
        let rep = analyze(&p(&[1, 1]), 2, 11).unwrap();
        assert_eq!(rep.verdict, Verdict::Certified);
        assert_eq!(rep.constituents.len(), 1);
        assert_eq!(rep.constituents[0].eta, p(&[3, 1]));
        assert_eq!(
            rep.constituents[0].weight,
            Weight::new(vec![-1, -3])
        );
        assert_eq!(rep.constituents[0].certificate.route, Route::Direct);

        // at p = 5 the single weight has no route
        let rep5 = analyze(&p(&[1, 1]), 2, 5).unwrap();
        assert_eq!(rep5.verdict, Verdict::NotCertified);
        assert_eq!(rep5.uncovered, vec![Weight::new(vec![-1, -3])]);

        // p = 2 = k fails the filtration condition
        let rep2 = analyze(&p(&[1, 1]), 2, 2).unwrap();
        assert_eq!(rep2.verdict, Verdict::FiltrationFails);
    }

    #[test]
    fn analyze_s22_g2() {
        let rep = analyze(&p(&[2, 2]), 2, 7).unwrap();
        assert_eq!(rep.verdict, Verdict::Certified);
        let etas: Vec<&Partition> = rep.constituents.iter().map(|c| &c.eta).collect();
        assert_eq!(etas, vec![&p(&[4, 4]), &p(&[6, 2])]);
        let weights: Vec<String> = rep
            .constituents
            .iter()
            .map(|c| c.weight.to_string())
            .collect();
        assert_eq!(weights, vec!["(-4,-4)", "(-2,-6)"]);
    }

    #[test]
    fn analyze_is_deterministic() {
        let a = analyze(&p(&[2, 1]), 2, 11).unwrap();
        let b = analyze(&p(&[2, 1]), 2, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            analyze(&p(&[1, 1]), 2, 6),
            Err(HyperbolicityError::NotPrime(6))
        ));
        assert!(matches!(
            analyze(&Partition::empty(), 2, 7),
            Err(HyperbolicityError::EmptyPartition)
        ));
    }
}
