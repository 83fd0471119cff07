//! Named constructors: `cyclic:<n>`, `dihedral:<n>`, `symmetric:<n≤5>`,
//! `semidirect:<N>:<Q>:<k>`.

use super::{semidirect_product, FiniteGroup, GroupError, GroupHom};

pub fn trivial() -> FiniteGroup {
    cyclic(1)
}

/// `Z/n` with element `k` standing for the residue `k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n ≥ 1");
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let gens = if n == 1 { vec![0] } else { vec![1] };
    FiniteGroup::from_flat(n, mul, Some(gens), &format!("Z/{n}")).expect("cyclic table")
}

/// Dihedral group of order `2n`; element `i + n·j` is `rⁱsʲ`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral group needs n ≥ 1");
    let order = 2 * n;
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, j) = (a % n, a / n);
        for b in 0..order {
            let (k, l) = (b % n, b / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            mul.push(rot + n * ((j + l) % 2));
        }
    }
    let gens = if n == 1 { vec![1] } else { vec![1 % n, n] };
    FiniteGroup::from_flat(order, mul, Some(gens), &format!("D{n}")).expect("dihedral table")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `S_n` on permutations in lexicographic order; `(στ)(i) = σ(τ(i))`.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!(
        (1..=5).contains(&n),
        "symmetric groups are supported for 1 ≤ n ≤ 5"
    );
    let perms = permutations(n);
    let index = |p: &[usize]| {
        perms
            .binary_search_by(|q| q.as_slice().cmp(p))
            .expect("permutation")
    };
    let order = perms.len();
    let mut mul = Vec::with_capacity(order * order);
    for s in &perms {
        for t in &perms {
            let st: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
            mul.push(index(&st));
        }
    }
    let gens = if n == 1 {
        vec![0]
    } else {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut g = vec![index(&swap), index(&cycle)];
        g.dedup();
        g
    };
    FiniteGroup::from_flat(order, mul, Some(gens), &format!("S{n}")).expect("symmetric table")
}

/// `Z/n ⋊ Z/m` where the generator of `Z/m` acts by `t ↦ k·t`.
pub fn semidirect_cyclic(n: usize, m: usize, k: usize) -> Result<FiniteGroup, GroupError> {
    Ok(semidirect_cyclic_full(n, m, k)?.group)
}

pub fn semidirect_cyclic_full(
    n: usize,
    m: usize,
    k: usize,
) -> Result<super::SemidirectProduct, GroupError> {
    if n == 0 || m == 0 {
        return Err(GroupError::NotAnAction {
            detail: "orders must be positive".into(),
        });
    }
    let zn = cyclic(n);
    let zm = cyclic(m);
    let mut act = Vec::with_capacity(m);
    let mut factor = 1 % n.max(1);
    for _ in 0..m {
        let map = (0..n).map(|t| (factor * t) % n).collect();
        act.push(GroupHom::new(zn.clone(), zn.clone(), map).map_err(|e| {
            GroupError::NotAnAction {
                detail: e.to_string(),
            }
        })?);
        factor = (factor * k) % n.max(1);
    }
    semidirect_product(&zn, &zm, &act, &format!("Z/{n}⋊Z/{m}[{k}]"))
}

/// Resolves a built-in group name such as `dihedral:4`.
pub fn by_name(spec: &str) -> Result<FiniteGroup, GroupError> {
    let bad = || GroupError::UnknownGroup(spec.to_string());
    let mut parts = spec.trim().split(':');
    let kind = parts.next().ok_or_else(bad)?;
    let nums: Vec<usize> = parts
        .map(|p| p.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("trivial", []) => Ok(trivial()),
        ("cyclic", [n]) if *n >= 1 => Ok(cyclic(*n)),
        ("dihedral", [n]) if *n >= 1 => Ok(dihedral(*n)),
        ("symmetric", [n]) if (1..=5).contains(n) => Ok(symmetric(*n)),
        ("semidirect", [n, m, k]) => semidirect_cyclic(*n, *m, *k),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_homs, find_group_isomorphism};

    #[test]
    fn orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert!(symmetric(3).check_axioms());
        assert!(dihedral(5).check_axioms());
    }

    #[test]
    fn dihedral_reflections_are_involutions() {
        let d4 = dihedral(4);
        for x in 4..8 {
            assert_eq!(d4.mul(x, x), d4.identity());
        }
    }

    #[test]
    fn semidirect_with_inversion_is_s3() {
        let g = semidirect_cyclic(3, 2, 2).unwrap();
        assert!(find_group_isomorphism(&g, &symmetric(3)).is_some());
    }

    #[test]
    fn semidirect_twist_three_is_dihedral_of_order_eight() {
        let g = semidirect_cyclic(4, 2, 3).unwrap();
        assert_eq!(g.order(), 8);
        // the four elements outside the Z/4 factor are involutions
        for x in 4..8 {
            assert_eq!(g.mul(x, x), g.identity());
        }
        assert!(find_group_isomorphism(&g, &dihedral(4)).is_some());
    }

    #[test]
    fn semidirect_trivial_factor() {
        let g = semidirect_cyclic(3, 1, 1).unwrap();
        assert!(find_group_isomorphism(&g, &cyclic(3)).is_some());
    }

    #[test]
    fn bad_twist_is_not_an_action() {
        // 2² = 4 ≢ 1 mod 5, so Z/2 cannot act through t ↦ 2t
        assert!(matches!(
            semidirect_cyclic(5, 2, 2),
            Err(GroupError::NotAnAction { .. })
        ));
    }

    #[test]
    fn names() {
        assert_eq!(by_name("symmetric:3").unwrap().order(), 6);
        assert_eq!(by_name("semidirect:7:3:2").unwrap().order(), 21);
        assert!(by_name("symmetric:6").is_err());
        assert!(by_name("bogus").is_err());
        assert_eq!(
            enumerate_homs(&by_name("trivial").unwrap(), &cyclic(3)).len(),
            1
        );
    }
}
