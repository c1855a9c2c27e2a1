//! Property tests: ordinal algebraic laws, pairing round trips, literal
//! grammar round trips, and tape/interval invariants under random
//! operation sequences.

use ittm_core::ordinal::{godel_pair, godel_unpair, Ordinal, OrdinalClass};
use ittm_core::tape::{standard_probes, IntervalSet, TapeContent};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Random CNF notations, bounded in depth and width so cases stay small
/// while still exercising nested exponents.
fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..24).prop_map(Ordinal::from);
    leaf.prop_recursive(3, 24, 4, |inner| {
        (proptest::collection::vec((inner, 1u64..4), 1..4)).prop_map(|terms| {
            let mut exps: Vec<(Ordinal, u64)> = terms;
            // strictly decreasing exponents, deduplicated
            exps.sort_by(|a, b| b.0.cmp(&a.0));
            exps.dedup_by(|a, b| a.0 == b.0);
            Ordinal::from_terms(
                exps.into_iter()
                    .map(|(e, c)| (e, BigUint::from(c)))
                    .collect(),
            )
            .expect("construction is canonical")
        })
    })
}

/// Random ordinals below w^(w): finite exponents only.
fn arb_below_omega_omega() -> impl Strategy<Value = Ordinal> {
    proptest::collection::vec((0u64..12, 1u64..5), 1..4).prop_map(|terms| {
        let mut exps: Vec<(u64, u64)> = terms;
        exps.sort_by(|a, b| b.0.cmp(&a.0));
        exps.dedup_by(|a, b| a.0 == b.0);
        Ordinal::from_terms(
            exps.into_iter()
                .map(|(e, c)| (Ordinal::from(e), BigUint::from(c)))
                .collect(),
        )
        .expect("canonical")
    })
}

proptest! {
    #[test]
    fn add_is_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_is_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_left_distributes(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn add_monotone_and_inflationary(a in arb_ordinal(), b in arb_ordinal()) {
        let sum = a.add(&b);
        prop_assert!(a <= sum);
        prop_assert_eq!(a == sum, b.is_zero());
        // strict monotonicity in the right argument
        let bigger = a.add(&b.succ());
        prop_assert!(sum < bigger);
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_ordinal(), b in arb_ordinal()) {
        let sum = a.add(&b);
        let d = sum.checked_sub(&a).expect("a <= a+b");
        prop_assert_eq!(a.add(&d), sum);
    }

    #[test]
    fn classify_successor_consistent(a in arb_ordinal()) {
        match a.classify() {
            OrdinalClass::Zero => prop_assert!(a.is_zero()),
            OrdinalClass::Successor(p) => prop_assert_eq!(p.add(&Ordinal::one()), a.clone()),
            OrdinalClass::Limit => {
                prop_assert!(!a.is_zero());
                prop_assert!(a >= Ordinal::omega());
            }
        }
        let nl = a.next_limit();
        prop_assert!(nl > a);
        prop_assert!(matches!(nl.classify(), OrdinalClass::Limit));
    }

    #[test]
    fn literal_grammar_roundtrips(a in arb_ordinal()) {
        let text = a.to_string();
        let back: Ordinal = text.parse().expect("printer emits the grammar");
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pairing_roundtrips_below_omega_omega(b in arb_below_omega_omega(), c in arb_below_omega_omega()) {
        let r = godel_pair(&b, &c);
        let (ub, uc) = godel_unpair(&r);
        prop_assert_eq!((ub, uc), (b, c));
    }

    #[test]
    fn unpairing_roundtrips(r in arb_below_omega_omega()) {
        let (b, c) = godel_unpair(&r);
        prop_assert_eq!(godel_pair(&b, &c), r);
    }

    #[test]
    fn pairing_closure_below_mult_closed(b in arb_below_omega_omega(), c in arb_below_omega_omega()) {
        let alpha: Ordinal = "w^(w)".parse().unwrap();
        prop_assert!(b < alpha && c < alpha);
        prop_assert!(godel_pair(&b, &c) < alpha);
    }

    #[test]
    fn interval_set_invariants_after_random_ops(
        ops in proptest::collection::vec((0u64..64, 1u64..8, any::<bool>()), 0..40)
    ) {
        let mut s = IntervalSet::new();
        for (lo, len, ins) in ops {
            let lo_o = Ordinal::from(lo);
            let hi_o = Ordinal::from(lo + len);
            if ins {
                s.insert(&lo_o, &hi_o);
            } else {
                s.remove(&lo_o, &hi_o);
            }
            s.check_invariants().expect("invariants after every op");
        }
    }

    #[test]
    fn tape_writes_are_local_and_canonical(
        writes in proptest::collection::vec((0u64..48, any::<bool>()), 0..40)
    ) {
        let alpha: Ordinal = "w".parse().unwrap();
        let mut t = TapeContent::empty(alpha.clone());
        let mut reference = vec![false; 48];
        for (pos, bit) in &writes {
            t = t.write(&Ordinal::from(*pos), *bit).expect("in range");
            reference[*pos as usize] = *bit;
            t.ones().check_invariants().expect("ones normalized");
            t.zeros().check_invariants().expect("zeros normalized");
        }
        for (i, want) in reference.iter().enumerate() {
            prop_assert_eq!(t.read(&Ordinal::from(i as u64)).unwrap(), *want);
        }
        // pointwise-equal contents over the same base are structurally equal
        let mut u = TapeContent::empty(alpha);
        for (i, want) in reference.iter().enumerate() {
            if *want {
                u = u.write(&Ordinal::from(i as u64), true).unwrap();
            }
        }
        prop_assert_eq!(t, u);
    }

    #[test]
    fn liminf_is_pointwise_lower_bound(
        cells_a in proptest::collection::vec(0u64..24, 0..12),
        cells_b in proptest::collection::vec(0u64..24, 0..12),
    ) {
        let alpha: Ordinal = "w".parse().unwrap();
        let mk = |cells: &[u64]| {
            let mut t = TapeContent::empty(alpha.clone());
            for c in cells {
                t = t.write(&Ordinal::from(*c), true).unwrap();
            }
            t
        };
        let a = mk(&cells_a);
        let b = mk(&cells_b);
        let lim = TapeContent::liminf_period(&[a.clone(), b.clone()]).unwrap();
        for p in standard_probes(&alpha) {
            let lv = lim.read(&p).unwrap();
            prop_assert!(!lv || a.read(&p).unwrap());
            prop_assert!(!lv || b.read(&p).unwrap());
            prop_assert_eq!(lv, a.read(&p).unwrap() && b.read(&p).unwrap());
        }
    }
}

/// The spec-sized round trip: ten thousand random notations below w^(w).
#[test]
fn pairing_roundtrips_ten_thousand_random_notations() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9a1f);
    for _ in 0..10_000 {
        let terms: Vec<(Ordinal, BigUint)> = {
            let mut exps: Vec<u64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..10)).collect();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            exps.dedup();
            exps.into_iter()
                .map(|e| (Ordinal::from(e), BigUint::from(rng.gen_range(1u64..50))))
                .collect()
        };
        let r = Ordinal::from_terms(terms).unwrap();
        let (b, c) = godel_unpair(&r);
        assert_eq!(godel_pair(&b, &c), r);
        let forward = godel_pair(&r, &c);
        let (ub, uc) = godel_unpair(&forward);
        assert_eq!((ub, uc), (r, c));
    }
}

#[test]
fn engine_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Ordinal>();
    assert_send_sync::<TapeContent>();
    assert_send_sync::<ittm_core::machine::Configuration>();
    assert_send_sync::<ittm_core::machine::Program>();
    assert_send_sync::<ittm_core::codes::AlphaCode>();
}
