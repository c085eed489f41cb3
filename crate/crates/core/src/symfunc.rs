//! Exact symmetric-function arithmetic: Schur/power-sum basis conversion,
//! products and plethysm. The pivot basis for everything is power sums with
//! exact rational coefficients; integrality of the final Schur coefficients
//! doubles as a corruption check.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use thiserror::Error;

use crate::charcache::CharEngine;
use crate::partitions::Partition;

#[derive(Debug, Error)]
pub enum SymFuncError {
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(Partition, Partition),
    #[error("operation requires a homogeneous input")]
    NonHomogeneous,
    #[error("expected {expected:?} basis, got {got:?}")]
    WrongBasis { expected: Basis, got: Basis },
    #[error("plethysm requires nonempty partitions")]
    EmptyPartition,
    #[error("non-integral Schur coefficient {coeff} at {at} (corrupted computation)")]
    NonIntegral { at: Partition, coeff: BigRational },
}

thread_local! {
    static ENGINE: RefCell<CharEngine> = RefCell::new(CharEngine::new());
}

/// Runs `f` with the thread's shared character engine.
pub fn with_char_engine<R>(f: impl FnOnce(&mut CharEngine) -> R) -> R {
    ENGINE.with(|e| f(&mut e.borrow_mut()))
}

/// Centralizer order z_μ = ∏ i^{m_i} m_i!.
pub fn zee(mu: &Partition) -> BigUint {
    let mut z = BigUint::one();
    let mut run = 0u64;
    let mut prev = 0u32;
    for &c in mu.parts() {
        if c == prev {
            run += 1;
        } else {
            run = 1;
            prev = c;
        }
        z *= BigUint::from(c as u64) * BigUint::from(run);
    }
    z
}

/// Irreducible symmetric-group character χ^λ(μ) (Murnaghan-Nakayama).
pub fn sym_character(lam: &Partition, mu: &Partition) -> Result<i128, SymFuncError> {
    if lam.size() != mu.size() {
        return Err(SymFuncError::SizeMismatch(lam.clone(), mu.clone()));
    }
    Ok(with_char_engine(|eng| eng.character(lam, mu)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Schur,
    Power,
    Monomial,
}

/// A symmetric function: a basis tag and a finite map from partitions to
/// exact rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, BigRational>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element indexed by `lam` (s_λ, p_λ or m_λ).
    pub fn basis_element(basis: Basis, lam: Partition) -> Self {
        let mut f = Self::zero(basis);
        f.add_term(lam, BigRational::one());
        f
    }

    pub fn schur(lam: Partition) -> Self {
        Self::basis_element(Basis::Schur, lam)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, lam: &Partition) -> BigRational {
        self.terms.get(lam).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lam: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lam).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&mut self, other: &SymFunc) {
        assert_eq!(self.basis, other.basis, "basis mismatch in add");
        for (lam, c) in &other.terms {
            self.add_term(lam.clone(), c.clone());
        }
    }

    /// Common degree of all terms; `None` for zero or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys();
        let d = it.next()?.size();
        it.all(|k| k.size() == d).then_some(d)
    }

    pub fn all_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

/// Schur → power-sum basis: s_λ = Σ_μ χ^λ(μ)/z_μ · p_μ (per degree).
pub fn to_power(f: &SymFunc) -> Result<SymFunc, SymFuncError> {
    if f.basis != Basis::Schur {
        return Err(SymFuncError::WrongBasis {
            expected: Basis::Schur,
            got: f.basis,
        });
    }
    let mut out = SymFunc::zero(Basis::Power);
    with_char_engine(|eng| {
        for (lam, c) in &f.terms {
            let n = lam.size() as u32;
            let idx = eng.index_of(lam);
            let mus = eng.partitions(n);
            for mu in mus.iter() {
                let chi = eng.column(mu)[idx];
                if chi == 0 {
                    continue;
                }
                let z = BigInt::from(zee(mu));
                out.add_term(mu.clone(), c * BigRational::new(BigInt::from(chi), z));
            }
        }
    });
    Ok(out)
}

/// Power-sum → Schur basis. Homogeneous input only; callers split by degree.
pub fn to_schur(f: &SymFunc) -> Result<SymFunc, SymFuncError> {
    if f.basis != Basis::Power {
        return Err(SymFuncError::WrongBasis {
            expected: Basis::Power,
            got: f.basis,
        });
    }
    if f.is_zero() {
        return Ok(SymFunc::zero(Basis::Schur));
    }
    let d = f.homogeneous_degree().ok_or(SymFuncError::NonHomogeneous)?;
    let coeffs = contract_power_terms(&f.terms, d, None);
    let mut out = SymFunc::zero(Basis::Schur);
    for (eta, c) in coeffs {
        out.add_term(eta, c);
    }
    Ok(out)
}

/// ⟨f, s_η⟩ for every η ⊢ d (optionally only η of bounded height), where `f`
/// is given by its power-sum coefficients: c_η = Σ_μ a_μ χ^η(μ).
fn contract_power_terms(
    terms: &BTreeMap<Partition, BigRational>,
    degree: u64,
    max_height: Option<usize>,
) -> Vec<(Partition, BigRational)> {
    with_char_engine(|eng| {
        let etas = eng.partitions(degree as u32);
        let keep: Vec<bool> = etas
            .iter()
            .map(|eta| max_height.map_or(true, |h| eta.height() <= h))
            .collect();
        let mut acc = vec![BigRational::zero(); etas.len()];
        for (mu, a) in terms {
            let col = eng.column_once(mu);
            for i in 0..etas.len() {
                if keep[i] && col[i] != 0 {
                    acc[i] += a * BigRational::from(BigInt::from(col[i]));
                }
            }
        }
        etas.iter()
            .enumerate()
            .filter(|(i, _)| keep[*i] && !acc[*i].is_zero())
            .map(|(i, eta)| (eta.clone(), acc[i].clone()))
            .collect()
    })
}

/// Product of two symmetric functions, returned in the Schur basis.
/// Coefficients of a product of Schur functions are the
/// Littlewood-Richardson numbers; integrality is asserted.
pub fn multiply(f: &SymFunc, g: &SymFunc) -> Result<SymFunc, SymFuncError> {
    let fp = if f.basis == Basis::Power {
        f.clone()
    } else {
        to_power(f)?
    };
    let gp = if g.basis == Basis::Power {
        g.clone()
    } else {
        to_power(g)?
    };
    let mut prod: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for (mu, a) in fp.terms() {
        for (nu, b) in gp.terms() {
            let merged = merge_partitions(mu, nu);
            let entry = prod.entry(merged).or_insert_with(BigRational::zero);
            *entry += a * b;
        }
    }
    prod.retain(|_, v| !v.is_zero());
    // convert back per degree
    let mut by_degree: BTreeMap<u64, BTreeMap<Partition, BigRational>> = BTreeMap::new();
    for (mu, c) in prod {
        by_degree.entry(mu.size()).or_default().insert(mu, c);
    }
    let mut out = SymFunc::zero(Basis::Schur);
    for (d, terms) in by_degree {
        for (eta, c) in contract_power_terms(&terms, d, None) {
            out.add_term(eta, c);
        }
    }
    if f.basis == Basis::Schur && g.basis == Basis::Schur && f.all_integral() && g.all_integral() {
        for (eta, c) in out.terms() {
            if !c.is_integer() {
                return Err(SymFuncError::NonIntegral {
                    at: eta.clone(),
                    coeff: c.clone(),
                });
            }
        }
    }
    Ok(out)
}

fn merge_partitions(a: &Partition, b: &Partition) -> Partition {
    let mut parts: Vec<u32> = a.parts().iter().chain(b.parts()).copied().collect();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Partition::new(parts).unwrap()
}

/// Multiply every part of every index partition by `n` (the effect of
/// substituting p_m ↦ p_{nm}).
fn scale_parts(terms: &BTreeMap<Partition, BigRational>, n: u32) -> BTreeMap<Partition, BigRational> {
    terms
        .iter()
        .map(|(mu, c)| {
            let parts: Vec<u32> = mu.parts().iter().map(|&p| p * n).collect();
            (Partition::new(parts).unwrap(), c.clone())
        })
        .collect()
}

fn power_product(
    a: &BTreeMap<Partition, BigRational>,
    b: &BTreeMap<Partition, BigRational>,
) -> BTreeMap<Partition, BigRational> {
    let mut out: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for (mu, x) in a {
        for (nu, y) in b {
            let merged = merge_partitions(mu, nu);
            let entry = out.entry(merged).or_insert_with(BigRational::zero);
            *entry += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn schur_to_power_terms(lam: &Partition) -> BTreeMap<Partition, BigRational> {
    to_power(&SymFunc::schur(lam.clone()))
        .expect("schur input")
        .terms
}

/// The characteristic-zero plethysm decomposition s_λ ∘ s_μ = Σ_η c^η s_η,
/// as a sorted list of `(η, c^η)` with positive integer multiplicities.
pub fn plethysm(lam: &Partition, mu: &Partition) -> Result<Vec<(Partition, u64)>, SymFuncError> {
    plethysm_with_max_height(lam, mu, None)
}

/// Plethysm restricted at the source: only constituents η with
/// `height(η) <= h` are contracted and returned.
pub fn plethysm_with_max_height(
    lam: &Partition,
    mu: &Partition,
    max_height: Option<usize>,
) -> Result<Vec<(Partition, u64)>, SymFuncError> {
    if lam.is_empty() || mu.is_empty() {
        return Err(SymFuncError::EmptyPartition);
    }
    let degree = lam.size() * mu.size();
    let lam_p = schur_to_power_terms(lam);
    let mu_p = schur_to_power_terms(mu);
    let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for (nu, c) in &lam_p {
        // p_ν ∘ s_μ = ∏_i (s_μ with every power-sum index scaled by ν_i)
        let mut term: BTreeMap<Partition, BigRational> = BTreeMap::new();
        term.insert(Partition::empty(), BigRational::one());
        for &part in nu.parts() {
            term = power_product(&term, &scale_parts(&mu_p, part));
        }
        for (key, v) in term {
            let entry = acc.entry(key).or_insert_with(BigRational::zero);
            *entry += c * v;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    let raw = contract_power_terms(&acc, degree, max_height);
    let mut out = Vec::with_capacity(raw.len());
    for (eta, c) in raw {
        if !c.is_integer() || c.is_negative() {
            return Err(SymFuncError::NonIntegral { at: eta, coeff: c });
        }
        let m: u64 = c
            .to_integer()
            .try_into()
            .map_err(|_| SymFuncError::NonIntegral {
                at: eta.clone(),
                coeff: c.clone(),
            })?;
        out.push((eta, m));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Keeps exactly the constituents of height at most `g`.
pub fn restrict_height(
    constituents: &[(Partition, u64)],
    g: usize,
) -> Vec<(Partition, u64)> {
    constituents
        .iter()
        .filter(|(eta, _)| eta.height() <= g)
        .cloned()
        .collect()
}

/// Whether the plethysm S_λ ∘ S_μ is known to be filtered by Schur functors
/// in characteristic p: the general bound p ≥ 2|λ|−1, weakened to p > k for
/// the exterior power λ = (1^k).
pub fn filtration_condition(lam: &Partition, p: u64) -> bool {
    if lam.is_column() {
        p > lam.size()
    } else {
        p >= 2 * lam.size() - 1
    }
}
