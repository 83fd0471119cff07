mod common;

use bitorsor_kit::bitorsor::{
    are_isomorphic, corresponding_normal_subgroup, trivial_bitorsor, IsoMode,
};
use bitorsor_kit::equivariant::{classify, connectivity, from_theta, h1, to_theta, ThetaBitorsor};
use bitorsor_kit::group::builtin::{cyclic, symmetric};
use bitorsor_kit::group::{all_subgroups, enumerate_homs};
use bitorsor_kit::FiniteGroup;
use common::{fixture_groups, permutation, scramble};
use proptest::prelude::*;

fn pis() -> Vec<FiniteGroup> {
    vec![cyclic(2), cyclic(4), cyclic(6), symmetric(3)]
}

/// A θ-bitorsor on a scrambled copy of `Triv(G)`.
fn random_theta(
    pi: &FiniteGroup,
    g: &FiniteGroup,
    pick: &prop::sample::Index,
    seed: u64,
) -> ThetaBitorsor {
    let homs = enumerate_homs(pi, g);
    let theta = homs[pick.index(homs.len())].clone();
    let b = scramble(&trivial_bitorsor(g), &permutation(g.order(), seed));
    ThetaBitorsor::new(b, theta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trips(
        pi in prop::sample::select(pis()),
        g in prop::sample::select(fixture_groups()),
        pick in any::<prop::sample::Index>(),
        seed in any::<u64>(),
        seed2 in any::<u64>(),
    ) {
        let t = random_theta(&pi, &g, &pick, seed);
        let p = from_theta(&t);
        p.check_exhaustive().unwrap();
        let back = to_theta(&p).unwrap();
        prop_assert_eq!(&back.theta, &t.theta);
        prop_assert_eq!(&back.bitorsor, &t.bitorsor);

        let q = scramble(&p, &permutation(p.size(), seed2));
        let again = from_theta(&to_theta(&q).unwrap());
        prop_assert!(are_isomorphic(&again, &q, IsoMode::FixBoth).is_some());
    }

    #[test]
    fn connectivity_characterizations_agree(
        pi in prop::sample::select(pis()),
        g in prop::sample::select(fixture_groups()),
        pick in any::<prop::sample::Index>(),
        seed in any::<u64>(),
    ) {
        let t = random_theta(&pi, &g, &pick, seed);
        let c = connectivity(&t);
        prop_assert!(c[0] == c[1] && c[1] == c[2]);
        prop_assert_eq!(c[0], t.theta.is_surjective());
    }

    #[test]
    fn classes_are_stable_under_scrambling(
        pi in prop::sample::select(pis()),
        g in prop::sample::select(fixture_groups()),
        pick in any::<prop::sample::Index>(),
        seed in any::<u64>(),
    ) {
        let classes = h1(&pi, &g);
        let t = random_theta(&pi, &g, &pick, seed);
        let plain = ThetaBitorsor::on_trivial(t.theta.clone());
        prop_assert_eq!(classify(&t, &classes).unwrap(), classify(&plain, &classes).unwrap());
    }
}

#[test]
fn representatives_classify_to_themselves() {
    for pi in pis() {
        for g in fixture_groups() {
            let classes = h1(&pi, &g);
            for (i, c) in classes.iter().enumerate() {
                assert_eq!(classify(c, &classes).unwrap(), i);
            }
        }
    }
}

#[test]
fn normal_correspondence_does_not_see_theta() {
    for pi in pis() {
        for g in fixture_groups() {
            let b = scramble(&trivial_bitorsor(&g), &permutation(g.order(), 7));
            let normals: Vec<_> = all_subgroups(&g)
                .into_iter()
                .filter(|h| h.is_normal())
                .collect();
            let homs = enumerate_homs(&pi, &g);
            let plain: Vec<_> = normals
                .iter()
                .map(|h| corresponding_normal_subgroup(&b, h).unwrap())
                .collect();
            for theta in homs {
                let p = from_theta(&ThetaBitorsor::new(b.clone(), theta).unwrap());
                for (h, expected) in normals.iter().zip(&plain) {
                    assert_eq!(&corresponding_normal_subgroup(&p, h).unwrap(), expected);
                }
            }
        }
    }
}
