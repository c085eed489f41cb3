//! Ampleness certificates for automorphic weights: the parallel route for
//! negative line bundles, the direct route through orbital p-closeness and
//! Z_∅-ampleness of γ = 2λ + 2ρ_L, and the tensor-power route with its
//! explicit prime bound. Plus minimal-prime search and region scans.

use num::rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{pairing, RootDatumC, Weight, WeightError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PositivityError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("weight {0} is not L-dominant")]
    NotDominant(Weight),
    #[error("weight {0} has wrong length for g = {1}")]
    WrongLength(Weight, usize),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Parallel,
    Direct,
    TensorPower,
    None,
}

/// Verdict record for one automorphic weight at one characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleCertificate {
    pub weight: Weight,
    pub route: Route,
    pub min_prime: Option<u64>,
    pub orbit_ratio: Option<Ratio<i64>>,
    pub z_empty_ok: bool,
    pub notes: String,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn next_prime_at_least(mut n: u64) -> u64 {
    if n < 2 {
        return 2;
    }
    while !is_prime(n) {
        n += 1;
    }
    n
}

fn check_weight(lambda: &Weight, datum: &RootDatumC) -> Result<(), PositivityError> {
    if lambda.len() != datum.g() {
        return Err(PositivityError::WrongLength(lambda.clone(), datum.g()));
    }
    if !lambda.is_l_dominant() {
        return Err(PositivityError::NotDominant(lambda.clone()));
    }
    Ok(())
}

/// p-small: ⟨λ+ρ, α∨⟩ ≤ p for every positive coroot.
pub fn is_p_small(
    lambda: &Weight,
    p: u64,
    datum: &RootDatumC,
) -> Result<bool, PositivityError> {
    if !is_prime(p) {
        return Err(PositivityError::NotPrime(p));
    }
    check_weight(lambda, datum)?;
    let shifted = lambda.add(&datum.rho_c());
    Ok(datum
        .positive_coroots()
        .iter()
        .all(|a| pairing(&shifted, a).unwrap() <= p as i64))
}

/// max over coroots α∨ with ⟨γ,α∨⟩ ≠ 0 and w ∈ W of |⟨γ, wα∨⟩ / ⟨γ, α∨⟩|.
/// `None` iff γ pairs to zero with every coroot, i.e. γ = 0.
///
/// The coroots fall into two Weyl orbits (short {±e_i±e_j} and long {±e_i});
/// within an orbit the extremal ratio is max |pairing| over min nonzero
/// |pairing|, so two orbit sweeps suffice.
pub fn orbit_ratio_max(gamma: &Weight, datum: &RootDatumC) -> Option<Ratio<i64>> {
    assert_eq!(gamma.len(), datum.g());
    let g = datum.g();
    let mut reps: Vec<Vec<i64>> = vec![{
        let mut e = vec![0i64; g];
        e[0] = 1;
        e
    }];
    if g >= 2 {
        let mut v = vec![0i64; g];
        v[0] = 1;
        v[1] = -1;
        reps.push(v);
    }
    let mut best: Option<Ratio<i64>> = None;
    for rep in reps {
        let mut max_abs: Option<i64> = None;
        let mut min_abs: Option<i64> = None;
        for v in datum.weyl_orbit(&rep) {
            let x = pairing(gamma, &v).unwrap().abs();
            if x == 0 {
                continue;
            }
            max_abs = Some(max_abs.map_or(x, |m| m.max(x)));
            min_abs = Some(min_abs.map_or(x, |m| m.min(x)));
        }
        if let (Some(hi), Some(lo)) = (max_abs, min_abs) {
            let r = Ratio::new(hi, lo);
            best = Some(best.map_or(r, |b| b.max(r)));
        }
    }
    best
}

/// Z_∅-ample: γ strictly decreasing, every γ_i < 0, every γ_i + γ_j < 0
/// for i < j. (Strict positivity on Levi simple coroots, strict negativity
/// on the remaining positive coroots.)
pub fn is_z_empty_ample(gamma: &Weight, datum: &RootDatumC) -> bool {
    assert_eq!(gamma.len(), datum.g());
    let c = gamma.coords();
    let decreasing = c.windows(2).all(|w| w[0] > w[1]);
    let negative = c.iter().all(|&x| x < 0);
    let pairs = (0..c.len()).all(|i| ((i + 1)..c.len()).all(|j| c[i] + c[j] < 0));
    decreasing && negative && pairs
}

/// γ = 2λ + 2ρ_L, the weight the direct route tests.
pub fn gamma_of(lambda: &Weight, datum: &RootDatumC) -> Weight {
    lambda.scale(2).add(&datum.two_rho_l())
}

fn tensor_power_bound(lambda: &Weight, datum: &RootDatumC) -> u64 {
    let g = datum.g() as i64;
    let last = lambda.coords()[datum.g() - 1].abs();
    ((g + 1) * last + g) as u64
}

/// Certificate for ∇(λ) at characteristic p. Routes are tried in order
/// parallel, direct, tensor power; the certificate is sufficient, never
/// claimed necessary.
pub fn certify(
    lambda: &Weight,
    p: u64,
    datum: &RootDatumC,
) -> Result<AmpleCertificate, PositivityError> {
    if !is_prime(p) {
        return Err(PositivityError::NotPrime(p));
    }
    check_weight(lambda, datum)?;
    let gamma = gamma_of(lambda, datum);
    let ratio = orbit_ratio_max(&gamma, datum);
    let z_ok = is_z_empty_ample(&gamma, datum);

    if matches!(lambda.parallel_value(), Some(k) if k < 0) {
        return Ok(AmpleCertificate {
            weight: lambda.clone(),
            route: Route::Parallel,
            min_prime: Some(p),
            orbit_ratio: ratio,
            z_empty_ok: z_ok,
            notes: "negative parallel weight: ample in every characteristic".into(),
        });
    }
    if z_ok {
        let r = ratio.expect("Z_empty-ample weight is nonzero");
        if Ratio::from_integer(p as i64 - 1) >= r {
            return Ok(AmpleCertificate {
                weight: lambda.clone(),
                route: Route::Direct,
                min_prime: Some(p),
                orbit_ratio: Some(r),
                z_empty_ok: true,
                notes: format!("gamma = {gamma} orbitally p-close and Z_empty-ample"),
            });
        }
    }
    if lambda.coords()[0] <= -1 && p >= tensor_power_bound(lambda, datum) {
        return Ok(AmpleCertificate {
            weight: lambda.clone(),
            route: Route::TensorPower,
            min_prime: Some(p),
            orbit_ratio: ratio,
            z_empty_ok: z_ok,
            notes: format!(
                "p >= (g+1)|lambda_g| + g = {}",
                tensor_power_bound(lambda, datum)
            ),
        });
    }
    Ok(AmpleCertificate {
        weight: lambda.clone(),
        route: Route::None,
        min_prime: None,
        orbit_ratio: ratio,
        z_empty_ok: z_ok,
        notes: "no route applies at this characteristic".into(),
    })
}

/// Smallest prime at which some route certifies λ; `None` when no route
/// ever succeeds. Each route has a closed-form threshold, so no open loop.
pub fn min_certifying_prime(
    lambda: &Weight,
    datum: &RootDatumC,
) -> Result<Option<u64>, PositivityError> {
    check_weight(lambda, datum)?;
    let mut candidates: Vec<u64> = Vec::new();
    if matches!(lambda.parallel_value(), Some(k) if k < 0) {
        candidates.push(2);
    }
    let gamma = gamma_of(lambda, datum);
    if is_z_empty_ample(&gamma, datum) {
        let r = orbit_ratio_max(&gamma, datum).expect("Z_empty-ample weight is nonzero");
        // smallest prime p with p - 1 >= ratio
        let bound = (r.ceil().to_integer() + 1) as u64;
        candidates.push(next_prime_at_least(bound));
    }
    if lambda.coords()[0] <= -1 {
        candidates.push(next_prime_at_least(tensor_power_bound(lambda, datum)));
    }
    Ok(candidates.into_iter().min())
}

/// All L-dominant weights (k_1, k_2) with lo ≤ k_i ≤ hi certified at p by
/// the parallel or direct route. Only g = 2 boxes are scanned; the figure
/// the output feeds is two-dimensional.
pub fn region_scan(
    p: u64,
    lo: i64,
    hi: i64,
    datum: &RootDatumC,
) -> Result<Vec<Weight>, PositivityError> {
    if !is_prime(p) {
        return Err(PositivityError::NotPrime(p));
    }
    assert_eq!(datum.g(), 2, "region_scan draws the g = 2 figure");
    let mut out = Vec::new();
    for k1 in lo..=hi {
        for k2 in lo..=k1 {
            let lam = Weight::new(vec![k1, k2]);
            let cert = certify(&lam, p, datum)?;
            if matches!(cert.route, Route::Parallel | Route::Direct) {
                out.push(lam);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Text rows "k2 k1" (abscissa then ordinate), lexicographically sorted.
pub fn render_region(weights: &[Weight]) -> String {
    let mut rows: Vec<(i64, i64)> = weights
        .iter()
        .map(|w| (w.coords()[1], w.coords()[0]))
        .collect();
    rows.sort();
    let mut s = String::new();
    for (k2, k1) in rows {
        s.push_str(&format!("{k2} {k1}\n"));
    }
    s
}
