use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use congruential::random::{random_bijection_product, random_map};
use congruential::text::{from_text, to_text};
use congruential::{solve_agreement, star, CongruentialMap};

fn map_from(seed: u64) -> CongruentialMap {
    random_map(&mut ChaCha8Rng::seed_from_u64(seed), 10, 4, 7)
}

fn bijection_from(seed: u64) -> CongruentialMap {
    random_bijection_product(&mut ChaCha8Rng::seed_from_u64(seed), 6, 2)
}

fn agree_upto(f: &CongruentialMap, g: &CongruentialMap, n_max: u64) -> bool {
    (0..=n_max).all(|n| f.eval_u64(n) == g.eval_u64(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let f = map_from(seed);
        prop_assert_eq!(from_text(&to_text(&f)).unwrap(), f);
    }

    #[test]
    fn normalize_is_sound_and_idempotent(seed in any::<u64>()) {
        let f = map_from(seed);
        let g = f.normalize();
        prop_assert!(g.is_normalized());
        prop_assert_eq!(g.normalize(), g.clone());
        prop_assert!(g.modulus() <= f.modulus() && f.modulus().is_multiple_of(g.modulus()));
        prop_assert!(agree_upto(&f, &g, 500));
    }

    #[test]
    fn lift_preserves_values(seed in any::<u64>(), factor in 1usize..5) {
        let f = map_from(seed);
        let lifted = f.lift(f.modulus() * factor);
        prop_assert!(agree_upto(&f, &lifted, 300));
        prop_assert_eq!(lifted.normalize(), f.normalize());
    }

    #[test]
    fn compose_is_pointwise(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (map_from(a), map_from(b));
        let h = f.compose(&g);
        for n in 0u64..400 {
            prop_assert_eq!(h.eval_u64(n), f.eval(&g.eval_u64(n)));
        }
    }

    #[test]
    fn compose_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (map_from(a), map_from(b), map_from(c));
        prop_assert!(f.compose(&g).compose(&h).equal(&f.compose(&g.compose(&h))));
    }

    /// Two affine functions agreeing at two points of a class agree on it, so
    /// pointwise agreement below twice the common period decides equality.
    #[test]
    fn equality_matches_pointwise(a in any::<u64>(), b in any::<u64>(), same in any::<bool>()) {
        let f = map_from(a);
        let g = if same { f.lift(f.modulus() * 3) } else { map_from(b) };
        let l = f.modulus().lcm(&g.modulus()) as u64;
        prop_assert_eq!(f.equal(&g), agree_upto(&f, &g, 2 * l));
        match f.witness_difference(&g) {
            None => prop_assert!(f.equal(&g)),
            Some(n) => prop_assert_ne!(f.eval(&n), g.eval(&n)),
        }
    }

    #[test]
    fn agreement_set_matches_pointwise(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (map_from(a), map_from(b));
        let s = solve_agreement(&f, &g);
        for n in 0u64..600 {
            let n = BigUint::from(n);
            prop_assert_eq!(s.contains(&n), f.eval(&n) == g.eval(&n), "n = {}, set {}", n, s);
        }
    }

    #[test]
    fn bijections_certify_and_invert(seed in any::<u64>()) {
        let f = bijection_from(seed);
        let cert = f.is_bijection().unwrap();
        prop_assert!(cert.verify_by_enumeration());
        let inv = f.inverse().unwrap();
        prop_assert!(f.compose(&inv).is_identity());
        prop_assert!(inv.compose(&f).is_identity());
        prop_assert!(inv.inverse().unwrap().equal(&f));
    }

    /// Whatever the certifier accepts is injective on an initial segment and
    /// hits every small value.
    #[test]
    fn certified_maps_are_bijective_on_samples(seed in any::<u64>()) {
        let f = map_from(seed);
        if f.is_bijection().is_ok() {
            let mut seen = HashSet::new();
            for n in 0u64..2000 {
                prop_assert!(seen.insert(f.eval_u64(n)));
            }
            let inv = f.inverse().unwrap();
            for m in 0u64..200 {
                prop_assert_eq!(f.eval(&inv.eval_u64(m)), BigUint::from(m));
            }
        }
    }

    #[test]
    fn star_interleaves(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (map_from(a), map_from(b));
        let s = star(&f, &g);
        for n in 0u64..200 {
            prop_assert_eq!(s.eval_u64(2 * n), f.eval_u64(n) * 2u32);
            prop_assert_eq!(s.eval_u64(2 * n + 1), g.eval_u64(n) * 2u32 + 1u32);
        }
    }

    #[test]
    fn star_is_a_homomorphism(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), d in any::<u64>()) {
        let (f, g, h, k) = (map_from(a), map_from(b), map_from(c), map_from(d));
        prop_assert!(star(&f, &g).compose(&star(&h, &k)).equal(&star(&f.compose(&h), &g.compose(&k))));
    }
}
