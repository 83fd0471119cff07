mod common;

use std::collections::BTreeSet;

use bitorsor_kit::group::builtin::{cyclic, symmetric};
use bitorsor_kit::group::enumerate_homs;
use bitorsor_kit::local_model::{build_tame_quotient, survey_with, TameParams};
use bitorsor_kit::{Exec, FiniteGroup};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn tame_params() -> impl Strategy<Value = TameParams> {
    (2usize..10, 1usize..8, 1usize..5)
        .prop_filter_map("not tame", |(q, n, m)| TameParams::new(q, n, m).ok())
}

fn groups() -> Vec<FiniteGroup> {
    vec![cyclic(2), cyclic(3), cyclic(4), symmetric(3)]
}

/// Homomorphisms up to conjugation in the target, counted by explicit orbits.
fn class_count(pi: &FiniteGroup, g: &FiniteGroup) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for h in enumerate_homs(pi, g) {
        if seen.contains(h.map()) {
            continue;
        }
        count += 1;
        for c in g.elements() {
            seen.insert(
                h.map()
                    .iter()
                    .map(|&x| g.conjugate(c, x))
                    .collect::<Vec<_>>(),
            );
        }
    }
    count
}

#[test]
fn parameter_oracle() {
    for q in 0..12usize {
        for n in 0..10usize {
            for m in 0..6usize {
                let pow = (0..m).fold(1 % n.max(1), |a, _| a * q % n.max(1));
                let want = q >= 2 && n > 0 && m > 0 && gcd(n, q) == 1 && pow == 1 % n.max(1);
                assert_eq!(TameParams::new(q, n, m).is_ok(), want, "q={q} n={n} m={m}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quotient_is_the_expected_extension(p in tame_params()) {
        let e = build_tame_quotient(&p).unwrap();
        prop_assert_eq!(e.pi_big().order(), p.n * p.m);
        prop_assert_eq!(e.gamma().order(), p.n);
        prop_assert_eq!(e.pi_small().order(), p.m);
        prop_assert!(common::is_group_table(&e.pi_big().table_rows()));
    }

    #[test]
    fn survey_covers_every_class(p in tame_params(), gi in 0usize..4) {
        let g = &groups()[gi];
        let r = survey_with(&p, g, Exec::Sequential).unwrap();
        let e = build_tame_quotient(&p).unwrap();
        prop_assert_eq!(r.entries.len(), class_count(e.pi_big(), g));
        prop_assert!(r.all_decomposed(), "{}", r.to_table());
        prop_assert_eq!(r.warning.is_some(), gcd(g.order(), p.q) > 1);
        let keys: Vec<_> = r.entries.iter().map(|x| (x.image_order, x.theta.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        prop_assert_eq!(keys, sorted);
        for x in &r.entries {
            prop_assert!(x.z_type_pi);
            let h = x.gamma_quotient_order.unwrap();
            prop_assert_eq!(p.n % h, 0);
            prop_assert!(x.gamma_quotient_cyclic);
            prop_assert_eq!(p.n * p.m % x.image_order, 0);
        }
    }

    #[test]
    fn parallel_survey_matches_sequential(p in tame_params(), gi in 0usize..4) {
        let g = &groups()[gi];
        let a = survey_with(&p, g, Exec::Sequential).unwrap();
        let b = survey_with(&p, g, Exec::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}
