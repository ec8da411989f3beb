mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use ttfkit_core::ideals::{enumerate_ideals, enumerate_two_sided_ideals};
use ttfkit_core::{build_ring, Elem, Error, Ideal, RawTables, Side};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tables_round_trip(r in ring_strategy()) {
        let raw = RawTables {
            size: r.size(),
            zero: 0,
            one: r.one(),
            add: r.add_table().to_vec(),
            mul: r.mul_table().to_vec(),
            label: "copy".into(),
        };
        let back = build_ring(raw).unwrap();
        prop_assert_eq!(back.add_table(), r.add_table());
        prop_assert_eq!(back.mul_table(), r.mul_table());
    }

    #[test]
    fn broken_distributivity_is_caught(r in ring_strategy(), a in 0usize..64, b in 0usize..64) {
        prop_assume!(r.size() > 2);
        let n = r.size();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != 0 && b != 0);
        let mut mul = r.mul_table().to_vec();
        let old = mul[a * n + b];
        mul[a * n + b] = r.add(old as Elem, r.one());
        let raw = RawTables { size: n, zero: 0, one: r.one(), add: r.add_table().to_vec(), mul, label: "bad".into() };
        let err = build_ring(raw).unwrap_err();
        let is_axiom_violation = matches!(err, Error::AxiomViolation { .. });
        prop_assert!(is_axiom_violation);
    }

    #[test]
    fn radical_is_quasi_regular_set(r in ring_strategy()) {
        let j = members(&r.jacobson_radical());
        let brute: BTreeSet<Elem> = r
            .elements()
            .filter(|&x| r.elements().all(|a| is_unit(&r, r.sub(r.one(), r.mul(a, x)))))
            .collect();
        prop_assert_eq!(j, brute);
    }

    #[test]
    fn units_and_idempotents(r in ring_strategy()) {
        for x in r.elements() {
            prop_assert_eq!(r.is_unit(x), is_unit(&r, x));
            prop_assert_eq!(r.is_idempotent(x), r.mul(x, x) == x);
            if let Some(y) = r.inverse(x) {
                prop_assert_eq!(r.mul(x, y), r.one());
            }
        }
    }

    #[test]
    fn generated_ideal_is_least(r in ring_strategy(), picks in proptest::collection::vec(0usize..64, 0..3)) {
        let gens: Vec<Elem> = picks.iter().map(|&p| (p % r.size()) as Elem).collect();
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            let i = Ideal::generated(&r, &gens, side);
            let s = members(&i);
            prop_assert!(is_subgroup(&r, &s));
            for &x in &s {
                for a in r.elements() {
                    if side.left_closed() { prop_assert!(s.contains(&r.mul(a, x))); }
                    if side.right_closed() { prop_assert!(s.contains(&r.mul(x, a))); }
                }
            }
            prop_assert!(gens.iter().all(|g| s.contains(g)));
            let least = enumerate_ideals(&r, side)
                .unwrap()
                .into_iter()
                .filter(|j| gens.iter().all(|&g| j.contains(g)))
                .min_by_key(|j| j.order())
                .unwrap();
            prop_assert_eq!(members(&least), s);
        }
    }

    #[test]
    fn products_and_closures(r in ring_strategy()) {
        let all = enumerate_two_sided_ideals(&r).unwrap();
        for i in &all {
            let c = i.idempotent_element_closure();
            prop_assert!(c.is_subset(i));
            prop_assert!(c.is_idempotent());
            for j in &all {
                let p = i.product(j).unwrap();
                prop_assert!(p.is_subset(&i.intersection(j).unwrap()));
            }
        }
    }
}

#[test]
fn lattice_matches_subset_filter() {
    for pick in 0..12 * 16 {
        let r = small_ring(pick);
        if r.size() > 12 {
            continue;
        }
        let brute: BTreeSet<BTreeSet<Elem>> = subgroups_by_subsets(&r)
            .into_iter()
            .filter(|s| s.iter().all(|&x| r.elements().all(|a| s.contains(&r.mul(a, x)) && s.contains(&r.mul(x, a)))))
            .collect();
        let lib: BTreeSet<BTreeSet<Elem>> = enumerate_two_sided_ideals(&r).unwrap().iter().map(members).collect();
        assert_eq!(lib, brute, "{}", r.label());
    }
}
