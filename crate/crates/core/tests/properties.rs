use std::collections::BTreeMap;

use proptest::prelude::*;

use linksig::circle::circle_roots;
use linksig::laurent::LaurentPoly;
use linksig::seifert::{link_invariants, random_seifert_with};
use linksig::signature::signature_function;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 0..5)).prop_map(|(low, c)| LaurentPoly::from_ints(low, &c))
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn factors() -> Vec<LaurentPoly> {
    vec![
        LaurentPoly::t_minus_one(),
        LaurentPoly::t_plus_one(),
        LaurentPoly::poly(&[1, 0, 1]),
        LaurentPoly::poly(&[1, -1, 1]),
    ]
}

/// Root multiplicities keyed by the printed point, which is unique per point.
fn root_map(p: &LaurentPoly) -> BTreeMap<String, u32> {
    circle_roots(p)
        .unwrap()
        .into_iter()
        .map(|(pt, m)| (pt.to_string(), m))
        .collect()
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn multiplicity_is_additive(a in nonzero_laurent(), b in nonzero_laurent()) {
        for f in factors() {
            let ab = &a * &b;
            prop_assert_eq!(
                ab.multiplicity(&f).unwrap(),
                a.multiplicity(&f).unwrap() + b.multiplicity(&f).unwrap()
            );
        }
    }

    #[test]
    fn gcd_divides_and_is_canonical(a in nonzero_laurent(), b in nonzero_laurent(), c in nonzero_laurent()) {
        let g = a.gcd(&b);
        prop_assert!(g.is_canonical());
        prop_assert!(g.divides(&a));
        prop_assert!(g.divides(&b));
        let gc = (&a * &c).gcd(&(&b * &c));
        prop_assert!(gc.is_associate(&(&g * &c)));
    }

    #[test]
    fn circle_roots_of_a_product_add(a in nonzero_laurent(), b in nonzero_laurent()) {
        let mut expected = root_map(&a);
        for (k, m) in root_map(&b) {
            *expected.entry(k).or_default() += m;
        }
        prop_assert_eq!(root_map(&(&a * &b)), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_congruence(g in 0usize..=2, mu in 1usize..=3, seed in any::<u64>()) {
        let s = random_seifert_with(g, mu, 2, seed, false);
        let t = random_seifert_with(g, mu, 2, seed, true);
        prop_assert_eq!((t.genus(), t.components()), (g, mu));
        let (a, b) = (link_invariants(&s), link_invariants(&t));
        prop_assert_eq!(&a.deltas, &b.deltas);
        prop_assert_eq!(&a.factors, &b.factors);
        let (fs, ft) = (signature_function(&s).unwrap(), signature_function(&t).unwrap());
        prop_assert_eq!(fs.arc_values(), ft.arc_values());
        prop_assert_eq!(fs.murasugi(), ft.murasugi());
    }
}
