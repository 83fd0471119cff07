mod common;

use bitorsor_kit::bitorsor::{
    are_isomorphic, compose, corresponding_normal_subgroup, enumerate_morphisms, factor_morphism,
    induction_conditions, inverse, is_induced_from_left, isom_bitorsor, isom_to_wedge,
    pushforward_factor, pushforward_into, quotient_bitorsor, trivial_pi_bitorsor, Bitorsor,
    IsoMode,
};
use bitorsor_kit::group::{all_subgroups, quotient};
use bitorsor_kit::FiniteGroup;
use common::{fixture_groups, fixture_pis, permutation, pool, scramble};
use proptest::prelude::*;

fn pi_and_group() -> impl Strategy<Value = (FiniteGroup, FiniteGroup)> {
    (
        prop::sample::select(fixture_pis()),
        prop::sample::select(fixture_groups()),
    )
}

fn pick<'a>(items: &'a [Bitorsor], i: &prop::sample::Index) -> &'a Bitorsor {
    &items[i.index(items.len())]
}

/// Members of `items` that can follow `b` in a wedge.
fn followers<'a>(b: &Bitorsor, items: &'a [Bitorsor]) -> Vec<&'a Bitorsor> {
    let rp = b.right_pi_group();
    items.iter().filter(|c| c.left_pi_group() == rp).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_fixture_is_a_bitorsor((pi, g) in pi_and_group(), seed in any::<u64>()) {
        for b in pool(&pi, &g) {
            b.check_exhaustive().unwrap();
            let s = scramble(&b, &permutation(b.size(), seed));
            s.check_exhaustive().unwrap();
            prop_assert!(are_isomorphic(&s, &b, IsoMode::FixBoth).is_some());
        }
    }

    #[test]
    fn unit_and_inverse((pi, g) in pi_and_group(), i in any::<prop::sample::Index>()) {
        let items = pool(&pi, &g);
        let b = pick(&items, &i);
        let l = compose(&trivial_pi_bitorsor(&b.left_pi_group()), b).unwrap();
        let r = compose(b, &trivial_pi_bitorsor(&b.right_pi_group())).unwrap();
        prop_assert!(are_isomorphic(&l, b, IsoMode::FixBoth).is_some());
        prop_assert!(are_isomorphic(&r, b, IsoMode::FixBoth).is_some());
        let bb = compose(b, &inverse(b)).unwrap();
        prop_assert!(are_isomorphic(&bb, &trivial_pi_bitorsor(&b.left_pi_group()), IsoMode::FixBoth).is_some());
        let bb = compose(&inverse(b), b).unwrap();
        prop_assert!(are_isomorphic(&bb, &trivial_pi_bitorsor(&b.right_pi_group()), IsoMode::FixBoth).is_some());
        prop_assert_eq!(&inverse(&inverse(b)), b);
    }

    #[test]
    fn associativity(
        (pi, g) in pi_and_group(),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
        k in any::<prop::sample::Index>(),
    ) {
        let items = pool(&pi, &g);
        let a = pick(&items, &i);
        let bs = followers(a, &items);
        let b = bs[j.index(bs.len())];
        let cs = followers(b, &items);
        let c = cs[k.index(cs.len())];
        let l = compose(&compose(a, b).unwrap(), c).unwrap();
        let r = compose(a, &compose(b, c).unwrap()).unwrap();
        l.check_exhaustive().unwrap();
        prop_assert!(are_isomorphic(&l, &r, IsoMode::FixBoth).is_some());
    }

    #[test]
    fn isom_is_wedge_with_inverse(
        (pi, g) in pi_and_group(),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let items: Vec<Bitorsor> = pool(&pi, &g).into_iter().filter(Bitorsor::right_is_constant).collect();
        let (x, y) = (pick(&items, &i), pick(&items, &j));
        let iso = isom_to_wedge(x, y).unwrap();
        iso.check_exhaustive().unwrap();
        prop_assert!(iso.is_isomorphism());
        prop_assert_eq!(isom_bitorsor(x, y).unwrap().size(), g.order());
    }

    #[test]
    fn morphisms_factor_through_images((pi, g) in pi_and_group(), i in any::<prop::sample::Index>()) {
        let items = pool(&pi, &g);
        let b = pick(&items, &i);
        for target in followers(&inverse(b), &items).into_iter().take(3) {
            for m in enumerate_morphisms(b, target) {
                let f = factor_morphism(&m).unwrap();
                prop_assert!(f.beta.is_injective());
                prop_assert_eq!(f.alpha.then(&f.beta).unwrap(), m);
            }
        }
    }

    #[test]
    fn pushforward_is_universal((pi, g) in pi_and_group(), i in any::<prop::sample::Index>(), h in any::<prop::sample::Index>()) {
        let items: Vec<Bitorsor> = pool(&pi, &g).into_iter().filter(Bitorsor::right_is_constant).collect();
        let b = pick(&items, &i);
        let normals: Vec<_> = all_subgroups(&g).into_iter().filter(|s| s.is_normal()).collect();
        let n = &normals[h.index(normals.len())];
        let (gq, q) = quotient(&g, n).unwrap();
        let target = b.right_pi_group().push_through(&q).unwrap();
        let (pushed, canonical) = pushforward_into(b, &q, &target).unwrap();
        prop_assert_eq!(pushed.size(), gq.order());
        canonical.check_exhaustive().unwrap();
        // Every (∗, q)-morphism out of b factors uniquely through the pushforward.
        for y in pool(&pi, &gq).iter().filter(|y| y.right_pi_group() == target) {
            for m in enumerate_morphisms(b, y).into_iter().filter(|m| m.phi_right() == &q) {
                let theta = pushforward_factor(&canonical, &m).unwrap();
                prop_assert!(theta.is_isomorphism());
            }
        }
    }
}

/// The four characterizations of triviality of `B/H` agree on every fixture.
#[test]
fn quotient_lemma_coherence() {
    for pi in fixture_pis() {
        for g in fixture_groups() {
            for b in pool(&pi, &g) {
                let rp = b.right_pi_group();
                for h in all_subgroups(b.right())
                    .into_iter()
                    .filter(|h| h.is_normal() && rp.is_stable(h))
                {
                    let c = induction_conditions(&b, &h).unwrap();
                    assert!(c.iter().all(|&v| v == c[0]), "{b:?} {h:?} {c:?}");
                    let (q, _) = quotient_bitorsor(&b, &h).unwrap();
                    assert_eq!(!q.fixed_points().is_empty(), c[0]);
                }
            }
        }
    }
}

/// `B/H ≅ C/H` exactly when `C ∧ B⁻¹` is induced from the corresponding
/// subgroups.
#[test]
fn isom_quotient_lemma() {
    for pi in [fixture_pis()[1].clone(), fixture_pis()[2].clone()] {
        for g in fixture_groups() {
            let items: Vec<Bitorsor> = pool(&pi, &g)
                .into_iter()
                .filter(Bitorsor::right_is_constant)
                .collect();
            for h in all_subgroups(&g).into_iter().filter(|h| h.is_normal()) {
                for b in &items {
                    for c in &items {
                        let (qb, _) = quotient_bitorsor(b, &h).unwrap();
                        let (qc, _) = quotient_bitorsor(c, &h).unwrap();
                        let same = are_isomorphic(&qb, &qc, IsoMode::FixRight).is_some();
                        let w = compose(c, &inverse(b)).unwrap();
                        let hc = corresponding_normal_subgroup(c, &h).unwrap();
                        let induced = is_induced_from_left(&w, &hc).unwrap();
                        assert_eq!(same, induced.is_some());
                        if let Some(wit) = induced {
                            wit.inclusion.check_exhaustive().unwrap();
                            let hb = corresponding_normal_subgroup(b, &h).unwrap();
                            assert_eq!(wit.inclusion.phi_right().map(), hb.members());
                        }
                    }
                }
            }
        }
    }
}
