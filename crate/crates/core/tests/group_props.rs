mod common;

use bitorsor_kit::group::builtin::{cyclic, semidirect_cyclic_full, symmetric};
use bitorsor_kit::group::{enumerate_homs, image, kernel, make_group, quotient, sections_of};
use bitorsor_kit::{FiniteGroup, GroupHom};
use common::{fixture_groups, is_group_table};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(fixture_groups())
}

/// Number of homomorphisms by trying every map on generators.
fn count_homs_brute(src: &FiniteGroup, dst: &FiniteGroup) -> usize {
    let n = src.order();
    let m = dst.order();
    let mut count = 0;
    let mut map = vec![0; n];
    let total = m.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for slot in map.iter_mut() {
            *slot = c % m;
            c /= m;
        }
        let ok = (0..n).all(|a| (0..n).all(|b| map[src.mul(a, b)] == dst.mul(map[a], map[b])));
        if ok {
            count += 1;
        }
    }
    count
}

proptest! {
    #[test]
    fn corrupted_tables_are_rejected(pick in 0usize..2, row in 0usize..6, col in 0usize..6, delta in 1usize..6) {
        let g = if pick == 0 { cyclic(6) } else { symmetric(3) };
        let mut rows = g.table_rows();
        rows[row][col] = (rows[row][col] + delta) % 6;
        prop_assert!(!is_group_table(&rows));
        prop_assert!(make_group(&rows, g.generators(), "corrupt").is_err());
    }

    #[test]
    fn every_enumerated_map_is_a_hom(src in small_group(), dst in small_group()) {
        let homs = enumerate_homs(&src, &dst);
        for h in &homs {
            for a in src.elements() {
                for b in src.elements() {
                    prop_assert_eq!(h.apply(src.mul(a, b)), dst.mul(h.apply(a), h.apply(b)));
                }
            }
        }
        if src.order() <= 6 && dst.order() <= 6 {
            prop_assert_eq!(homs.len(), count_homs_brute(&src, &dst));
        }
    }

    #[test]
    fn cyclic_hom_counts(n in 1usize..=12, m in 1usize..=12) {
        prop_assert_eq!(enumerate_homs(&cyclic(n), &cyclic(m)).len(), gcd(n, m));
    }

    #[test]
    fn first_isomorphism_theorem(src in small_group(), dst in small_group(), pick in any::<prop::sample::Index>()) {
        let homs = enumerate_homs(&src, &dst);
        let f = &homs[pick.index(homs.len())];
        let k = kernel(f);
        let (qg, q) = quotient(&src, &k).unwrap();
        let im = image(f);
        let mut induced = vec![usize::MAX; qg.order()];
        for a in src.elements() {
            let slot = &mut induced[q.apply(a)];
            let v = im.position(f.apply(a)).unwrap();
            prop_assert!(*slot == usize::MAX || *slot == v);
            *slot = v;
        }
        let (img, _) = im.to_group();
        let bar = GroupHom::new(qg, img, induced).unwrap();
        prop_assert!(bar.is_bijective());
    }

    #[test]
    fn sections_split(src in small_group(), dst in small_group()) {
        for q in enumerate_homs(&src, &dst).into_iter().filter(GroupHom::is_surjective) {
            for s in sections_of(&q).unwrap() {
                for x in dst.elements() {
                    prop_assert_eq!(q.apply(s.apply(x)), x);
                }
            }
        }
    }

    #[test]
    fn semidirect_products_are_groups(n in 1usize..8, m in 1usize..5, k in 0usize..8) {
        let k = k % n.max(1);
        // The generator acts by `t ↦ k·t`; this is an action of Z/m iff
        // k^m ≡ 1 (which forces k to be a unit), or trivially when m = 1.
        let km = (0..m).fold(1 % n, |acc, _| acc * k % n);
        let valid = m == 1 || km == 1 % n;
        match semidirect_cyclic_full(n, m, k) {
            Ok(sd) => {
                prop_assert!(valid);
                prop_assert!(is_group_table(&sd.group.table_rows()));
                prop_assert_eq!(sd.group.order(), n * m);
                prop_assert_eq!(sd.section.then(&sd.projection).unwrap(), GroupHom::identity(&cyclic(m)));
                prop_assert_eq!(kernel(&sd.projection), image(&sd.inclusion));
            }
            Err(_) => prop_assert!(!valid),
        }
    }
}
