//! Ring-axiom and homomorphism properties of the exact jet arithmetic.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use germlab_core::sample::{random_jetpoly, random_map_germ};
use germlab_core::{GermJet, JetPoly};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), n in 1usize..=3, k in 1u32..=4) {
        let mut r = rng(seed);
        let a = random_jetpoly(n, k, 0, &mut r);
        let b = random_jetpoly(n, k, 0, &mut r);
        let c = random_jetpoly(n, k, 0, &mut r);
        // associativity
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        // distributivity
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        // commutativity
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn compose_is_a_ring_homomorphism(seed in any::<u64>(), n in 1usize..=2, p in 1usize..=2, k in 1u32..=4) {
        let mut r = rng(seed);
        let f = random_map_germ(n, p, k, &mut r);
        let a = random_jetpoly(p, k, 0, &mut r);
        let b = random_jetpoly(p, k, 0, &mut r);
        let prod = a.mul(&b).unwrap().compose(&f).unwrap();
        let prod2 = a.compose(&f).unwrap().mul(&b.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(&prod, &prod2);
        let sum = a.add(&b).unwrap().compose(&f).unwrap();
        let sum2 = a.compose(&f).unwrap().add(&b.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(&sum, &sum2);
    }

    #[test]
    fn chain_rule_at_reduced_order(seed in any::<u64>(), n in 1usize..=2, p in 1usize..=2, q in 1usize..=2, k in 2u32..=4) {
        let mut r = rng(seed);
        let f = random_map_germ(n, p, k, &mut r);
        let g = random_map_germ(p, q, k, &mut r);
        let h = g.compose(&f).unwrap();
        let jh = h.jacobian();
        let jg = g.jacobian();
        let jf = f.jacobian();
        for i in 0..q {
            for j in 0..n {
                let mut acc = JetPoly::zero(n, k);
                for l in 0..p {
                    let pulled = jg[i][l].compose(&f).unwrap();
                    acc = acc.add(&pulled.mul(&jf[l][j]).unwrap()).unwrap();
                }
                // derivative of a k-jet is reliable only through order k-1
                prop_assert_eq!(jh[i][j].truncated(k - 1), acc.truncated(k - 1));
            }
        }
    }

    #[test]
    fn germ_composition_associates(seed in any::<u64>(), k in 1u32..=4) {
        let mut r = rng(seed);
        let f = random_map_germ(1, 2, k, &mut r);
        let g = random_map_germ(2, 2, k, &mut r);
        let h = random_map_germ(2, 1, k, &mut r);
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left.component(0), right.component(0));
    }
}

#[test]
fn display_parse_round_trip_random() {
    let mut r = rng(20240);
    for _ in 0..50 {
        let p = random_jetpoly(3, 4, 0, &mut r);
        let s = p.display('x');
        let q = germlab_core::parse_poly(&s, 3, 4).unwrap();
        assert_eq!(p, q, "round trip through `{s}`");
    }
}

#[test]
fn identity_composition_neutral() {
    let mut r = rng(7);
    let f = random_map_germ(2, 3, 4, &mut r);
    let id = GermJet::identity(2, 4);
    assert_eq!(f.compose(&id).unwrap(), f);
}
