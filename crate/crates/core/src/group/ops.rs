use super::{FiniteGroup, GroupError, GroupHom, Subgroup};

pub fn kernel(f: &GroupHom) -> Subgroup {
    let members: Vec<usize> = f
        .src()
        .elements()
        .filter(|&x| f.apply(x) == f.dst().identity())
        .collect();
    Subgroup::new(f.src(), &members).expect("kernels are subgroups")
}

pub fn image(f: &GroupHom) -> Subgroup {
    Subgroup::whole(f.src())
        .image_under(f)
        .expect("source matches by construction")
}

/// Quotient `G/N` for normal `N`.
///
/// Cosets are indexed in order of their smallest member, so the coset of the
/// identity is not necessarily index 0 when the identity is not index 0.
pub fn quotient(
    group: &FiniteGroup,
    normal: &Subgroup,
) -> Result<(FiniteGroup, GroupHom), GroupError> {
    if *normal.parent() != *group {
        return Err(GroupError::MixedSignatures);
    }
    if !normal.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g);
        for &h in normal.members() {
            coset_of[group.mul(g, h)] = idx;
        }
    }
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset_of[group.mul(a, b)]);
        }
    }
    let label = format!("{}/{}", group.label(), normal.order());
    let q = FiniteGroup::from_flat(k, mul, None, &label)?;
    let proj = GroupHom::from_trusted(group.clone(), q.clone(), coset_of);
    Ok((q, proj))
}

/// Output of [`semidirect_product`]: `N ⋊ Q` with its structure maps.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub inclusion: GroupHom,
    pub projection: GroupHom,
    pub section: GroupHom,
}

/// `N ⋊ Q` with law `(n₁,q₁)(n₂,q₂) = (n₁·act(q₁)(n₂), q₁q₂)`.
///
/// `act[q]` is the automorphism of `N` attached to `q`. Element `(n, q)` gets
/// index `q·|N| + n`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    top: &FiniteGroup,
    act: &[GroupHom],
    label: &str,
) -> Result<SemidirectProduct, GroupError> {
    let not_action = |detail: String| GroupError::NotAnAction { detail };
    if act.len() != top.order() {
        return Err(not_action(format!(
            "{} automorphisms supplied for a group of order {}",
            act.len(),
            top.order()
        )));
    }
    for (q, a) in act.iter().enumerate() {
        if a.src() != normal || a.dst() != normal || !a.is_bijective() {
            return Err(not_action(format!(
                "act({q}) is not an automorphism of {}",
                normal.label()
            )));
        }
    }
    for q1 in top.elements() {
        for q2 in top.elements() {
            let lhs = &act[top.mul(q1, q2)];
            if normal
                .elements()
                .any(|n| lhs.apply(n) != act[q1].apply(act[q2].apply(n)))
            {
                return Err(not_action(format!("act({q1}·{q2}) ≠ act({q1})∘act({q2})")));
            }
        }
    }

    let nn = normal.order();
    let nq = top.order();
    let order = nn * nq;
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        let (q1, n1) = (a / nn, a % nn);
        for b in 0..order {
            let (q2, n2) = (b / nn, b % nn);
            let n = normal.mul(n1, act[q1].apply(n2));
            let q = top.mul(q1, q2);
            mul.push(q * nn + n);
        }
    }
    let mut gens: Vec<usize> = normal
        .generators()
        .iter()
        .map(|&n| top.identity() * nn + n)
        .collect();
    gens.extend(top.generators().iter().map(|&q| q * nn + normal.identity()));
    gens.dedup();
    let group = FiniteGroup::from_flat(order, mul, None, label)?;
    let inclusion = GroupHom::new(
        normal.clone(),
        group.clone(),
        normal.elements().map(|n| top.identity() * nn + n).collect(),
    )?;
    let projection = GroupHom::new(
        group.clone(),
        top.clone(),
        (0..order).map(|a| a / nn).collect(),
    )?;
    let section = GroupHom::new(
        top.clone(),
        group.clone(),
        top.elements().map(|q| q * nn + normal.identity()).collect(),
    )?;
    Ok(SemidirectProduct {
        group,
        inclusion,
        projection,
        section,
    })
}

/// Searches for an isomorphism between two groups by enumerating
/// homomorphisms out of `a`.
pub fn find_group_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<GroupHom> {
    if a.order() != b.order() {
        return None;
    }
    super::enumerate_homs(a, b)
        .into_iter()
        .find(GroupHom::is_bijective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{cyclic, symmetric};

    #[test]
    fn kernel_of_mod_two() {
        let z6 = cyclic(6);
        let z2 = cyclic(2);
        let f = GroupHom::new(z6, z2, (0..6).map(|x| x % 2).collect()).unwrap();
        assert_eq!(kernel(&f).members(), &[0, 2, 4]);
        assert!(kernel(&f).is_normal());
    }

    #[test]
    fn image_of_surjection() {
        let f = GroupHom::new(cyclic(4), cyclic(2), (0..4).map(|x| x % 2).collect()).unwrap();
        assert_eq!(image(&f).order(), 2);
    }

    #[test]
    fn sign_quotient_of_s3() {
        let s3 = symmetric(3);
        let a3 = Subgroup::generated(&s3, &[3]);
        // index 3 is the 3-cycle (1 2 0) in lexicographic permutation order
        assert_eq!(a3.order(), 3);
        let (q, proj) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        // transpositions (order-2 elements) go to the non-identity coset
        for g in s3.elements() {
            let is_transposition = s3.element_order(g) == 2;
            assert_eq!(proj.apply(g) != q.identity(), is_transposition);
        }
    }

    #[test]
    fn quotient_requires_normal() {
        let s3 = symmetric(3);
        let t = Subgroup::generated(&s3, &[1]);
        assert_eq!(quotient(&s3, &t).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn non_action_rejected() {
        let z3 = cyclic(3);
        let z2 = cyclic(2);
        // act(1) = identity but act(0) = inversion: act(0) must be the identity
        let inv = GroupHom::new(z3.clone(), z3.clone(), vec![0, 2, 1]).unwrap();
        let id = GroupHom::identity(&z3);
        let err = semidirect_product(&z3, &z2, &[inv, id], "bad").unwrap_err();
        assert!(matches!(err, GroupError::NotAnAction { .. }));
    }
}
