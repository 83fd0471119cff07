mod common;

use bitorsor_kit::bitorsor::{enumerate_morphisms, pushforward_into, Bitorsor};
use bitorsor_kit::devissage::{
    decompose, is_type_gamma, is_type_pi, verify_decomposition, SplitExtension, TypeGammaWitness,
    Verdict,
};
use bitorsor_kit::equivariant::h1;
use bitorsor_kit::group::builtin::{cyclic, semidirect_cyclic_full, symmetric};
use bitorsor_kit::group::{all_subgroups, quotient};
use bitorsor_kit::{FiniteGroup, GroupHom, PiGroup};
use common::{fixture_groups, pool};
use proptest::prelude::*;

fn extensions() -> Vec<SplitExtension> {
    [(3, 2, 2), (4, 2, 3), (3, 2, 1), (5, 4, 2), (7, 3, 2)]
        .into_iter()
        .map(|(n, m, k)| {
            SplitExtension::from_semidirect(&semidirect_cyclic_full(n, m, k).unwrap()).unwrap()
        })
        .collect()
}

/// Whether `Γ` acts trivially on a `Π`-group given by a bitorsor side.
fn gamma_trivial_on_right(b: &Bitorsor, e: &SplitExtension) -> bool {
    e.gamma()
        .members()
        .iter()
        .all(|&s| b.right().elements().all(|g| b.pi_on_right(s, g) == g))
}

#[test]
fn every_class_decomposes_with_the_default_section() {
    for e in extensions() {
        for g in fixture_groups() {
            for t in h1(e.pi_big(), &g) {
                let d = decompose(&t, &e).unwrap();
                assert_eq!(verify_decomposition(&t, &d, &e), Verdict::Valid);
                let tt = &d.certificate.theta_tilde;
                assert!(e
                    .gamma()
                    .members()
                    .iter()
                    .all(|&s| tt.apply(s) == tt.dst().identity()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_section_decomposes(
        e in prop::sample::select(extensions()),
        g in prop::sample::select(fixture_groups()),
        s in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
    ) {
        let sections = e.sections();
        let e = e.with_section(sections[s.index(sections.len())].clone()).unwrap();
        let classes = h1(e.pi_big(), &g);
        let t = &classes[c.index(classes.len())];
        let d = decompose(t, &e).unwrap();
        prop_assert_eq!(verify_decomposition(t, &d, &e), Verdict::Valid);
    }

    /// Pushing a type-Γ bitorsor forward keeps it of type Γ.
    #[test]
    fn type_gamma_is_stable_under_pushforward(
        e in prop::sample::select(extensions()),
        g in prop::sample::select(fixture_groups()),
        c in any::<prop::sample::Index>(),
        n in any::<prop::sample::Index>(),
    ) {
        let classes = h1(e.pi_big(), &g);
        let t = &classes[c.index(classes.len())];
        let d = decompose(t, &e).unwrap();
        let y = &d.y;
        let rp = y.right_pi_group();
        let normals: Vec<_> = all_subgroups(y.right()).into_iter().filter(|h| h.is_normal() && rp.is_stable(h)).collect();
        let h = &normals[n.index(normals.len())];
        let (_, q) = quotient(y.right(), h).unwrap();
        let (pushed, canonical) = pushforward_into(y, &q, &rp.push_through(&q).unwrap()).unwrap();
        let w = &d.certificate.gamma_witness;
        let carried = TypeGammaWitness {
            quotient: w.quotient.clone(),
            sub: w.sub.clone(),
            inclusion: w.inclusion.then(&canonical).unwrap(),
        };
        // The carried morphism need not stay injective; its image is the witness.
        prop_assert!(carried.check(&pushed, &e).is_ok() || !carried.inclusion.is_injective());
        prop_assert!(is_type_gamma(&pushed, &e).unwrap().is_some());
    }
}

/// A target of a morphism out of a type-π bitorsor is of type π exactly when
/// `Γ` acts trivially on its right group.
#[test]
fn type_pi_targets() {
    let e = extensions().remove(0);
    let mut seen = [false; 2];
    for g in [cyclic(2), cyclic(3), symmetric(3)] {
        for t in h1(e.pi_big(), &g) {
            let d = decompose(&t, &e).unwrap();
            assert!(is_type_pi(&d.z, &e).unwrap());
            for g1 in [cyclic(2), cyclic(3), symmetric(3)] {
                for x1 in pool(e.pi_big(), &g1) {
                    if enumerate_morphisms(&d.z, &x1).is_empty() {
                        continue;
                    }
                    let pi_group = gamma_trivial_on_right(&x1, &e);
                    assert_eq!(is_type_pi(&x1, &e).unwrap(), pi_group);
                    seen[usize::from(pi_group)] = true;
                }
            }
            // Π acting on itself by conjugation moves points through Γ.
            let pi = e.pi_big();
            let conj = (0..pi.order() * pi.order())
                .map(|i| pi.conjugate(i / pi.order(), i % pi.order()))
                .collect();
            let target = PiGroup::new(pi.clone(), pi.clone(), conj).unwrap();
            let phi = GroupHom::trivial(d.z.right(), pi);
            let (x1, _) = pushforward_into(&d.z, &phi, &target).unwrap();
            let pi_group = gamma_trivial_on_right(&x1, &e);
            assert!(!pi_group);
            assert_eq!(is_type_pi(&x1, &e).unwrap(), pi_group);
            seen[usize::from(pi_group)] = true;
        }
    }
    assert_eq!(seen, [true, true], "both directions exercised");
}

#[test]
fn pi_mismatch_is_reported() {
    let e = extensions().remove(0);
    let other: FiniteGroup = cyclic(5);
    let t = &h1(&other, &cyclic(5))[1];
    assert!(decompose(t, &e).is_err());
}
