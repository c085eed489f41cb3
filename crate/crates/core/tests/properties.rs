//! Randomized property tests complementing the deterministic sweeps in the
//! acceptance suite.

use num::rational::Ratio;
use num::{BigInt, BigRational, One};
use proptest::prelude::*;

use ample_core::chow::{ChowRing, MPoly};
use ample_core::partitions::{dim_gl, Partition};
use ample_core::positivity::{is_p_small, is_prime, orbit_ratio_max};
use ample_core::rootdata::{RootDatumC, Weight};
use ample_core::symfunc::{plethysm, to_power, to_schur, SymFunc};

fn arb_partition(max_size: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..=max_size, 0..=4).prop_map(move |mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = 0;
        parts.retain(|&p| {
            total += p;
            total <= max_size
        });
        Partition::new(parts).unwrap()
    })
}

fn nonempty_partition(max_size: u32) -> impl Strategy<Value = Partition> {
    arb_partition(max_size).prop_filter("nonempty", |p| !p.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Plethysm output is integral, homogeneous, nonnegative (the engine
    /// panics on any non-integral coefficient; success is the property).
    #[test]
    fn plethysm_integral_homogeneous(
        lam in nonempty_partition(4),
        mu in nonempty_partition(4),
    ) {
        prop_assume!(lam.size() * mu.size() <= 12);
        let res = plethysm(&lam, &mu).unwrap();
        let degree = lam.size() * mu.size();
        prop_assert!(res.iter().all(|(eta, m)| eta.size() == degree && *m >= 1));
    }

    /// dim S_λ(S_μ(C^g)) = Σ_η c^η dim S_η(C^g) for g ≤ 3.
    #[test]
    fn plethysm_dimension_consistency(
        lam in nonempty_partition(4),
        mu in nonempty_partition(4),
        g in 1usize..=3,
    ) {
        prop_assume!(lam.size() * mu.size() <= 12);
        let res = plethysm(&lam, &mu).unwrap();
        let inner = dim_gl(&mu, g);
        let lhs = dim_gl(&lam, inner as usize);
        let rhs: u128 = res.iter().map(|(eta, m)| *m as u128 * dim_gl(eta, g)).sum();
        prop_assert_eq!(lhs, rhs);
    }

    /// An instance relevant downstream: S_(2,2)∘Sym² at g = 3 keeps its
    /// dimension identity too.
    #[test]
    fn sym2_instance_dimension(g in 1usize..=3) {
        let lam = Partition::new(vec![2, 2]).unwrap();
        let mu = Partition::row(2);
        let res = plethysm(&lam, &mu).unwrap();
        let inner = dim_gl(&mu, g);
        let lhs = dim_gl(&lam, inner as usize);
        let rhs: u128 = res.iter().map(|(eta, m)| *m as u128 * dim_gl(eta, g)).sum();
        prop_assert_eq!(lhs, rhs);
    }

    /// If λ is p-small then every dominant μ ≤ λ is p-small (g = 2).
    #[test]
    fn p_small_downward_closed(
        a in 0i64..=8,
        d in 0i64..=8,
        p_idx in 0usize..=5,
    ) {
        let primes = [3u64, 5, 7, 11, 13, 17];
        let p = primes[p_idx];
        prop_assert!(is_prime(p));
        let datum = RootDatumC::new(2);
        let lam = Weight::new(vec![a, a - d.min(a)]);
        if !is_p_small(&lam, p, &datum).unwrap() {
            return Ok(());
        }
        let (l1, l2) = (lam.coords()[0], lam.coords()[1]);
        for m1 in 0..=l1 {
            for m2 in 0..=m1 {
                let s1 = l1 - m1;
                let s2 = s1 + (l2 - m2);
                if s1 >= 0 && s2 >= 0 && s2 % 2 == 0 {
                    let mu = Weight::new(vec![m1, m2]);
                    prop_assert!(is_p_small(&mu, p, &datum).unwrap(), "λ={} μ={}", lam, mu);
                }
            }
        }
    }

    /// orbit_ratio_max is ≥ 1 whenever defined, exactly 1 on parallel
    /// weights, and invariant under negation.
    #[test]
    fn orbit_ratio_bounds(coords in proptest::collection::vec(-9i64..=9, 2..=3)) {
        let g = coords.len();
        let datum = RootDatumC::new(g);
        let gamma = Weight::new(coords.clone());
        let neg = gamma.scale(-1);
        let r = orbit_ratio_max(&gamma, &datum);
        prop_assert_eq!(r.clone(), orbit_ratio_max(&neg, &datum));
        match r {
            None => prop_assert!(coords.iter().all(|&c| c == 0)),
            Some(v) => prop_assert!(v >= Ratio::one()),
        }
    }

    #[test]
    fn orbit_ratio_parallel_is_one(k in 1i64..=40, g in 1usize..=4) {
        let datum = RootDatumC::new(g);
        let gamma = Weight::new(vec![-k; g]);
        prop_assert_eq!(orbit_ratio_max(&gamma, &datum), Some(Ratio::one()));
    }

    /// Schur → power → Schur is the identity.
    #[test]
    fn basis_round_trip(lam in nonempty_partition(9)) {
        let s = SymFunc::schur(lam);
        let back = to_schur(&to_power(&s).unwrap()).unwrap();
        prop_assert_eq!(back.terms(), s.terms());
    }

    /// normal_form is idempotent and linear on x-homogeneous classes.
    #[test]
    fn normal_form_idempotent_linear(
        coeffs in proptest::collection::vec(-5i64..=5, 3),
        d in 0u16..=4,
        pp in 0u16..=2,
    ) {
        let ring = ChowRing::new(2);
        let nvars = ring.nvars();
        // a degree-d homogeneous class with the given coefficients spread
        // over the first monomials
        let mut poly = MPoly::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            let e1 = (i as u16).min(d);
            let mut expo = vec![0u16; nvars];
            expo[0] = pp;
            expo[nvars - 2] = e1;
            expo[nvars - 1] = d - e1;
            poly = poly.add(&MPoly::monomial(
                nvars,
                expo,
                BigRational::from_integer(BigInt::from(c)),
            ));
        }
        let n1 = ring.normal_form(&poly).unwrap();
        prop_assert_eq!(ring.normal_form(&n1).unwrap(), n1.clone());
        // linearity: NF(2·poly) = 2·NF(poly)
        let two = BigRational::from_integer(BigInt::from(2));
        prop_assert_eq!(
            ring.normal_form(&poly.scale(&two)).unwrap(),
            n1.scale(&two)
        );
    }
}
