#![allow(dead_code)]

use bitorsor_kit::bitorsor::{inverse, Bitorsor};
use bitorsor_kit::equivariant::{from_theta, h1};
use bitorsor_kit::group::builtin::{cyclic, dihedral, symmetric, trivial};
use bitorsor_kit::FiniteGroup;

pub fn fixture_groups() -> Vec<FiniteGroup> {
    vec![
        cyclic(2),
        cyclic(3),
        cyclic(4),
        cyclic(6),
        symmetric(3),
        dihedral(4),
    ]
}

pub fn fixture_pis() -> Vec<FiniteGroup> {
    vec![trivial(), cyclic(2), cyclic(4), symmetric(3)]
}

/// `from_theta` of every class of `H¹(Π, G)` and the inverses.
pub fn pool(pi: &FiniteGroup, g: &FiniteGroup) -> Vec<Bitorsor> {
    h1(pi, g)
        .iter()
        .flat_map(|c| {
            let b = from_theta(c);
            [inverse(&b), b]
        })
        .collect()
}

/// The same bitorsor with point `x` renamed `perm[x]`.
pub fn scramble(b: &Bitorsor, perm: &[usize]) -> Bitorsor {
    let n = b.size();
    let mut left = vec![0; b.left().order() * n];
    let mut right = vec![0; n * b.right().order()];
    let mut pi = vec![0; b.pi().order() * n];
    for x in 0..n {
        for g in b.left().elements() {
            left[g * n + perm[x]] = perm[b.act_left(g, x)];
        }
        for g in b.right().elements() {
            right[perm[x] * b.right().order() + g] = perm[b.act_right(x, g)];
        }
        for s in b.pi().elements() {
            pi[s * n + perm[x]] = perm[b.act_pi(s, x)];
        }
    }
    Bitorsor::with_pi(
        b.left().clone(),
        b.right().clone(),
        left,
        right,
        b.pi().clone(),
        pi,
    )
    .unwrap()
}

/// Deterministic permutation of `0..n` from a seed.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

/// Brute-force group check, independent of the library validator.
pub fn is_group_table(rows: &[Vec<usize>]) -> bool {
    let n = rows.len();
    if rows
        .iter()
        .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
    {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                    return false;
                }
            }
        }
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a)) else {
        return false;
    };
    (0..n).all(|a| (0..n).any(|b| rows[a][b] == e && rows[b][a] == e))
}
