//! Exact-arithmetic toolkit for positivity of automorphic bundles on
//! Siegel modular varieties in characteristic p: Schur-functor plethysm,
//! ampleness certificates for automorphic weights, the hyperbolicity
//! pipeline for S_λ ∘ Sym², and tautological Chow-ring intersections.

pub mod cache;
pub mod charcache;
pub mod chow;
pub mod hyperbolicity;
pub mod partitions;
pub mod peel;
pub mod positivity;
pub mod rootdata;
pub mod symfunc;
pub mod tableaux;
