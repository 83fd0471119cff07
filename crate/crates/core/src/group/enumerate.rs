use std::collections::{HashMap, VecDeque};

use super::{FiniteGroup, GroupError, GroupHom};
use crate::par::Exec;

const UNSET: usize = usize::MAX;

/// Every homomorphism `src → dst`, ordered lexicographically by the images of
/// `src.generators()`.
pub fn enumerate_homs(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<GroupHom> {
    enumerate_homs_with(src, dst, Exec::default())
}

pub fn enumerate_homs_with(src: &FiniteGroup, dst: &FiniteGroup, exec: Exec) -> Vec<GroupHom> {
    enumerate_homs_filtered(src, dst, exec, |_, _| true)
}

/// Like [`enumerate_homs_with`], restricted to generator images accepted by
/// `allow(generator_position, candidate)`.
pub fn enumerate_homs_filtered<F>(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    exec: Exec,
    allow: F,
) -> Vec<GroupHom>
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    let gens = src.generators();
    // An image must have order dividing the order of its generator.
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let og = src.element_order(g);
            dst.elements()
                .filter(|&h| og.is_multiple_of(dst.element_order(h)) && allow(i, h))
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let maps = exec.flat_map(&candidates[0], |&first| {
        let mut images = vec![first];
        let mut out = Vec::new();
        search(src, dst, gens, &candidates, &mut images, &mut out);
        out
    });
    maps.into_iter()
        .map(|m| GroupHom::from_trusted(src.clone(), dst.clone(), m))
        .collect()
}

fn search(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(map) = extend(src, dst, &gens[..images.len()], images) else {
        return;
    };
    if images.len() == gens.len() {
        out.push(map);
        return;
    }
    for &c in &candidates[images.len()] {
        images.push(c);
        search(src, dst, gens, candidates, images, out);
        images.pop();
    }
}

/// Extends generator images along the Cayley graph of the subgroup they
/// generate, checking every edge `x → x·g`. Consistency on all edges is
/// equivalent to the homomorphism law on that subgroup.
fn extend(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![UNSET; src.order()];
    map[src.identity()] = dst.identity();
    let mut queue = VecDeque::from([src.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let v = dst.mul(map[x], h);
            if map[y] == UNSET {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

/// All homomorphic sections `s` of a surjection `q` (`q ∘ s = id`).
pub fn sections_of(q: &GroupHom) -> Result<Vec<GroupHom>, GroupError> {
    if !q.is_surjective() {
        return Err(GroupError::NotSurjective);
    }
    let target_gens = q.dst().generators().to_vec();
    let candidates = enumerate_homs_filtered(q.dst(), q.src(), Exec::default(), |i, c| {
        q.apply(c) == target_gens[i]
    });
    Ok(candidates
        .into_iter()
        .filter(|s| q.dst().elements().all(|t| q.apply(s.apply(t)) == t))
        .collect())
}

/// One conjugacy class of homomorphisms under `f ↦ g·f·g⁻¹`.
#[derive(Clone, Debug)]
pub struct HomClass {
    /// Smallest member by generator images.
    pub representative: GroupHom,
    /// Positions in the input list.
    pub members: Vec<usize>,
}

/// Partitions `homs` into classes under conjugation in the common target.
/// Classes come out ordered by representative.
pub fn conjugacy_classes_of_homs(homs: &[GroupHom]) -> Result<Vec<HomClass>, GroupError> {
    let Some(first) = homs.first() else {
        return Ok(Vec::new());
    };
    if homs
        .iter()
        .any(|h| h.src() != first.src() || h.dst() != first.dst())
    {
        return Err(GroupError::MixedSignatures);
    }
    let dst = first.dst();
    let index: HashMap<&[usize], usize> =
        homs.iter().enumerate().map(|(i, h)| (h.map(), i)).collect();
    let mut order: Vec<usize> = (0..homs.len()).collect();
    order.sort_by_key(|&i| (homs[i].generator_images(), homs[i].map().to_vec()));

    let mut assigned = vec![false; homs.len()];
    let mut classes = Vec::new();
    for i in order {
        if assigned[i] {
            continue;
        }
        let mut members = Vec::new();
        for g in dst.elements() {
            let conj: Vec<usize> = homs[i].map().iter().map(|&x| dst.conjugate(g, x)).collect();
            if let Some(&j) = index.get(conj.as_slice()) {
                if !assigned[j] {
                    assigned[j] = true;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(HomClass {
            representative: homs[i].clone(),
            members,
        });
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{cyclic, dihedral, symmetric};

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn cyclic_hom_counts() {
        assert_eq!(enumerate_homs(&cyclic(6), &cyclic(4)).len(), 2);
        assert_eq!(enumerate_homs(&cyclic(3), &cyclic(2)).len(), 1);
        for n in 1..=12 {
            for m in 1..=12 {
                assert_eq!(
                    enumerate_homs(&cyclic(n), &cyclic(m)).len(),
                    gcd(n, m),
                    "Hom(Z/{n}, Z/{m})"
                );
            }
        }
    }

    #[test]
    fn involutions_in_s3() {
        // oracle: elements of order dividing 2
        let s3 = symmetric(3);
        let expected = s3
            .elements()
            .filter(|&g| 2 % s3.element_order(g) == 0)
            .count();
        assert_eq!(expected, 4);
        assert_eq!(enumerate_homs(&cyclic(2), &s3).len(), expected);
    }

    #[test]
    fn homs_are_homs_and_sorted() {
        let homs = enumerate_homs(&dihedral(4), &symmetric(3));
        for h in &homs {
            assert!(GroupHom::new(h.src().clone(), h.dst().clone(), h.map().to_vec()).is_ok());
        }
        let keys: Vec<_> = homs.iter().map(GroupHom::generator_images).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = enumerate_homs_with(&dihedral(4), &symmetric(4), Exec::Sequential);
        let b = enumerate_homs_with(&dihedral(4), &symmetric(4), Exec::Parallel);
        assert_eq!(a, b);
    }

    #[test]
    fn sections() {
        let q = GroupHom::new(cyclic(6), cyclic(2), (0..6).map(|x| x % 2).collect()).unwrap();
        let s = sections_of(&q).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].apply(1), 3);

        let q = GroupHom::new(cyclic(4), cyclic(2), (0..4).map(|x| x % 2).collect()).unwrap();
        assert!(sections_of(&q).unwrap().is_empty());

        let s3 = symmetric(3);
        let z2 = cyclic(2);
        let sign: Vec<usize> = s3
            .elements()
            .map(|g| usize::from(s3.element_order(g) == 2))
            .collect();
        let q = GroupHom::new(s3, z2, sign).unwrap();
        assert_eq!(sections_of(&q).unwrap().len(), 3);
    }

    #[test]
    fn sections_need_surjection() {
        let q = GroupHom::trivial(&cyclic(4), &cyclic(2));
        assert_eq!(sections_of(&q).unwrap_err(), GroupError::NotSurjective);
    }

    #[test]
    fn classes() {
        let homs = enumerate_homs(&cyclic(2), &symmetric(3));
        let classes = conjugacy_classes_of_homs(&homs).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].members.len(), 1);
        assert_eq!(classes[1].members.len(), 3);

        let homs = enumerate_homs(&cyclic(2), &cyclic(2));
        assert_eq!(conjugacy_classes_of_homs(&homs).unwrap().len(), 2);

        let homs = enumerate_homs(&cyclic(1), &dihedral(4));
        assert_eq!(conjugacy_classes_of_homs(&homs).unwrap().len(), 1);
    }

    #[test]
    fn mixed_signatures() {
        let mut homs = enumerate_homs(&cyclic(2), &cyclic(2));
        homs.extend(enumerate_homs(&cyclic(2), &cyclic(4)));
        assert_eq!(
            conjugacy_classes_of_homs(&homs).unwrap_err(),
            GroupError::MixedSignatures
        );
    }
}
