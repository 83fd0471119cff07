use std::fmt;
use std::sync::Arc;

use super::{BitorsorError, PiGroup};
use crate::group::{builtin, FiniteGroup};

/// A `(G′, G)`-bitorsor `(G′, X, G)` on points `0..n`, optionally carrying a
/// left action of a finite group `Π` on the points compatible with both
/// torsor structures.
///
/// Plain bitorsors carry the trivial `Π`. The `Π`-actions on `G′` and `G` are
/// not stored separately: they are forced by the action on points and are
/// derived at construction.
#[derive(Clone)]
pub struct Bitorsor(Arc<Data>);

struct Data {
    left: FiniteGroup,
    right: FiniteGroup,
    size: usize,
    left_act: Vec<usize>,
    right_act: Vec<usize>,
    pi: FiniteGroup,
    pi_points: Vec<usize>,
    left_pi: Vec<usize>,
    right_pi: Vec<usize>,
    left_coord: Vec<usize>,
    right_coord: Vec<usize>,
}

fn fail<T>(detail: impl Into<String>) -> Result<T, BitorsorError> {
    Err(BitorsorError::NotAnAction {
        detail: detail.into(),
    })
}

/// Checks that `act` (row-major `group × points`) is a regular action and
/// returns the inverse of `g ↦ g·x₀`.
fn regular_coords(
    group: &FiniteGroup,
    size: usize,
    at: impl Fn(usize, usize) -> usize,
    compose: impl Fn(usize, usize) -> usize,
    side: &str,
) -> Result<Vec<usize>, BitorsorError> {
    if group.order() > size {
        return Err(BitorsorError::NotFree { side: side.into() });
    }
    if group.order() < size {
        return Err(BitorsorError::NotTransitive { side: side.into() });
    }
    for x in 0..size {
        if at(group.identity(), x) != x {
            return fail(format!("{side}: identity moves point {x}"));
        }
    }
    // The law on generators propagates to all products.
    for a in group.elements() {
        for &b in group.generators() {
            let ab = compose(a, b);
            for x in 0..size {
                if at(ab, x) != at(a, at(b, x)) {
                    return fail(format!(
                        "{side}: action of {a}·{b} is not the composite at point {x}"
                    ));
                }
            }
        }
    }
    let mut coord = vec![usize::MAX; size];
    for g in group.elements() {
        let y = at(g, 0);
        if coord[y] != usize::MAX {
            return Err(BitorsorError::NotFree { side: side.into() });
        }
        coord[y] = g;
    }
    Ok(coord)
}

impl Bitorsor {
    /// Builds and validates a plain bitorsor.
    ///
    /// `left_act[g′·n + x] = g′·x`, `right_act[x·|G| + g] = x·g`.
    pub fn new(
        left: FiniteGroup,
        right: FiniteGroup,
        left_act: Vec<usize>,
        right_act: Vec<usize>,
    ) -> Result<Self, BitorsorError> {
        let size = right.order();
        let pi = builtin::trivial();
        let pi_points = (0..size).collect();
        Self::with_pi(left, right, left_act, right_act, pi, pi_points)
    }

    /// Builds and validates a bitorsor with a `Π`-action on points,
    /// `pi_points[σ·n + x] = σ(x)`.
    pub fn with_pi(
        left: FiniteGroup,
        right: FiniteGroup,
        left_act: Vec<usize>,
        right_act: Vec<usize>,
        pi: FiniteGroup,
        pi_points: Vec<usize>,
    ) -> Result<Self, BitorsorError> {
        let size = if left_act.len().is_multiple_of(left.order()) {
            left_act.len() / left.order()
        } else {
            return fail("left action table has the wrong size");
        };
        if right_act.len() != size * right.order() {
            return fail("right action table has the wrong size");
        }
        if left_act.iter().chain(&right_act).any(|&p| p >= size) {
            return fail("action table entry out of range");
        }
        let nl = left.order();
        let nr = right.order();
        let left_coord = regular_coords(
            &left,
            size,
            |g, x| left_act[g * size + x],
            |a, b| left.mul(a, b),
            "left",
        )?;
        // x·(ab) = (x·a)·b, so the right action is a left action of the
        // opposite group.
        let right_coord = regular_coords(
            &right,
            size,
            |g, x| right_act[x * nr + g],
            |a, b| right.mul(b, a),
            "right",
        )?;
        for x in 0..size {
            for &a in left.generators() {
                for &b in right.generators() {
                    if right_act[left_act[a * size + x] * nr + b]
                        != left_act[a * size + right_act[x * nr + b]]
                    {
                        return Err(BitorsorError::NotCommuting {
                            left: a,
                            point: x,
                            right: b,
                        });
                    }
                }
            }
        }

        let np = pi.order();
        if pi_points.len() != np * size {
            return fail("Π action table has the wrong size");
        }
        for s in pi.elements() {
            let mut seen = vec![false; size];
            for &y in &pi_points[s * size..(s + 1) * size] {
                if y >= size || std::mem::replace(&mut seen[y], true) {
                    return fail(format!("Π element {s} does not permute the points"));
                }
            }
        }
        let e = pi.identity();
        if (0..size).any(|x| pi_points[e * size + x] != x) {
            return fail("identity of Π moves a point");
        }
        for s in pi.elements() {
            for &t in pi.generators() {
                let st = pi.mul(s, t);
                if (0..size).any(|x| {
                    pi_points[st * size + x] != pi_points[s * size + pi_points[t * size + x]]
                }) {
                    return fail(format!("Π action of {s}·{t} is not the composite"));
                }
            }
        }

        let sp = |s: usize, x: usize| pi_points[s * size + x];
        let lb = |x: usize, y: usize| left.mul(left_coord[y], left.inv(left_coord[x]));
        let rb = |x: usize, y: usize| right.mul(right.inv(right_coord[x]), right_coord[y]);
        let mut left_pi = Vec::with_capacity(np * nl);
        let mut right_pi = Vec::with_capacity(np * nr);
        for s in pi.elements() {
            let base = sp(s, 0);
            left_pi.extend(left.elements().map(|g| lb(base, sp(s, left_act[g * size]))));
            right_pi.extend(right.elements().map(|g| rb(base, sp(s, right_act[g]))));
        }
        for s in pi.elements() {
            for x in 0..size {
                for &g in left.generators() {
                    if sp(s, left_act[g * size + x])
                        != left_act[left_pi[s * nl + g] * size + sp(s, x)]
                    {
                        return Err(BitorsorError::NotEquivariant {
                            detail: format!("σ={s} does not normalize the left action"),
                        });
                    }
                }
                for &g in right.generators() {
                    if sp(s, right_act[x * nr + g])
                        != right_act[sp(s, x) * nr + right_pi[s * nr + g]]
                    {
                        return Err(BitorsorError::NotEquivariant {
                            detail: format!("σ={s} does not normalize the right action"),
                        });
                    }
                }
            }
        }

        Ok(Bitorsor(Arc::new(Data {
            left,
            right,
            size,
            left_act,
            right_act,
            pi,
            pi_points,
            left_pi,
            right_pi,
            left_coord,
            right_coord,
        })))
    }

    /// Same bitorsor with the `Π`-action replaced.
    pub fn equip(&self, pi: &FiniteGroup, pi_points: Vec<usize>) -> Result<Self, BitorsorError> {
        Self::with_pi(
            self.left().clone(),
            self.right().clone(),
            self.0.left_act.clone(),
            self.0.right_act.clone(),
            pi.clone(),
            pi_points,
        )
    }

    /// The plain bitorsor obtained by forgetting the `Π`-action.
    pub fn underlying(&self) -> Self {
        if self.0.pi.order() == 1 {
            return self.clone();
        }
        let size = self.size();
        let d = &self.0;
        Bitorsor(Arc::new(Data {
            left: d.left.clone(),
            right: d.right.clone(),
            size,
            left_act: d.left_act.clone(),
            right_act: d.right_act.clone(),
            pi: builtin::trivial(),
            pi_points: (0..size).collect(),
            left_pi: d.left.elements().collect(),
            right_pi: d.right.elements().collect(),
            left_coord: d.left_coord.clone(),
            right_coord: d.right_coord.clone(),
        }))
    }

    pub fn left(&self) -> &FiniteGroup {
        &self.0.left
    }

    pub fn right(&self) -> &FiniteGroup {
        &self.0.right
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.0.size
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.0.pi
    }

    #[inline]
    pub fn act_left(&self, g: usize, x: usize) -> usize {
        self.0.left_act[g * self.0.size + x]
    }

    #[inline]
    pub fn act_right(&self, x: usize, g: usize) -> usize {
        self.0.right_act[x * self.0.right.order() + g]
    }

    #[inline]
    pub fn act_pi(&self, sigma: usize, x: usize) -> usize {
        self.0.pi_points[sigma * self.0.size + x]
    }

    /// `σ(g′)` for `g′ ∈ G′`.
    #[inline]
    pub fn pi_on_left(&self, sigma: usize, g: usize) -> usize {
        self.0.left_pi[sigma * self.0.left.order() + g]
    }

    /// `σ(g)` for `g ∈ G`.
    #[inline]
    pub fn pi_on_right(&self, sigma: usize, g: usize) -> usize {
        self.0.right_pi[sigma * self.0.right.order() + g]
    }

    pub fn left_pi_group(&self) -> PiGroup {
        PiGroup::from_trusted(
            self.0.left.clone(),
            self.0.pi.clone(),
            self.0.left_pi.clone(),
        )
    }

    pub fn right_pi_group(&self) -> PiGroup {
        PiGroup::from_trusted(
            self.0.right.clone(),
            self.0.pi.clone(),
            self.0.right_pi.clone(),
        )
    }

    /// Whether `Π` acts trivially on the right group.
    pub fn right_is_constant(&self) -> bool {
        self.0
            .right_pi
            .chunks(self.0.right.order())
            .all(|row| row.iter().enumerate().all(|(g, &v)| g == v))
    }

    pub fn left_is_constant(&self) -> bool {
        self.0
            .left_pi
            .chunks(self.0.left.order())
            .all(|row| row.iter().enumerate().all(|(g, &v)| g == v))
    }

    pub fn pi_is_trivial_on_points(&self) -> bool {
        self.0
            .pi_points
            .chunks(self.0.size)
            .all(|row| row.iter().enumerate().all(|(x, &v)| x == v))
    }

    pub fn left_act_table(&self) -> &[usize] {
        &self.0.left_act
    }

    pub fn right_act_table(&self) -> &[usize] {
        &self.0.right_act
    }

    pub fn pi_points_table(&self) -> &[usize] {
        &self.0.pi_points
    }

    /// `g′` with `g′·x₀ = x`, where `x₀` is point 0.
    #[inline]
    pub fn left_coord(&self, x: usize) -> usize {
        self.0.left_coord[x]
    }

    /// `g` with `x₀·g = x`, where `x₀` is point 0.
    #[inline]
    pub fn right_coord(&self, x: usize) -> usize {
        self.0.right_coord[x]
    }

    /// The unique `g′` with `g′·x = y`.
    pub fn left_between(&self, x: usize, y: usize) -> usize {
        let l = &self.0.left;
        l.mul(self.left_coord(y), l.inv(self.left_coord(x)))
    }

    /// The unique `g` with `x·g = y`.
    pub fn right_between(&self, x: usize, y: usize) -> usize {
        let r = &self.0.right;
        r.mul(r.inv(self.right_coord(x)), self.right_coord(y))
    }

    /// Points fixed by all of `Π`, in increasing order.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.points()
            .filter(|&x| self.pi().elements().all(|s| self.act_pi(s, x) == x))
            .collect()
    }

    /// `Π`-orbit of a point, sorted.
    pub fn pi_orbit(&self, x: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = self.pi().elements().map(|s| self.act_pi(s, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    pub fn pi_orbit_count(&self) -> usize {
        let mut seen = vec![false; self.size()];
        let mut count = 0;
        for x in self.points() {
            if !seen[x] {
                count += 1;
                for y in self.pi_orbit(x) {
                    seen[y] = true;
                }
            }
        }
        count
    }

    /// Exhaustive check of every axiom on every tuple of elements.
    pub fn check_exhaustive(&self) -> Result<(), BitorsorError> {
        let (l, r, n) = (self.left(), self.right(), self.size());
        for a in l.elements() {
            for b in l.elements() {
                for x in 0..n {
                    if self.act_left(l.mul(a, b), x) != self.act_left(a, self.act_left(b, x)) {
                        return fail("left action law");
                    }
                }
            }
        }
        for a in r.elements() {
            for b in r.elements() {
                for x in 0..n {
                    if self.act_right(x, r.mul(a, b)) != self.act_right(self.act_right(x, a), b) {
                        return fail("right action law");
                    }
                }
            }
        }
        for x in 0..n {
            let mut seen_l = vec![false; n];
            let mut seen_r = vec![false; n];
            for g in l.elements() {
                seen_l[self.act_left(g, x)] = true;
            }
            for g in r.elements() {
                seen_r[self.act_right(x, g)] = true;
            }
            if seen_l.contains(&false) || l.order() != n {
                return Err(BitorsorError::NotTransitive {
                    side: "left".into(),
                });
            }
            if seen_r.contains(&false) || r.order() != n {
                return Err(BitorsorError::NotTransitive {
                    side: "right".into(),
                });
            }
            for a in l.elements() {
                for b in r.elements() {
                    if self.act_right(self.act_left(a, x), b)
                        != self.act_left(a, self.act_right(x, b))
                    {
                        return Err(BitorsorError::NotCommuting {
                            left: a,
                            point: x,
                            right: b,
                        });
                    }
                }
            }
        }
        for s in self.pi().elements() {
            for x in 0..n {
                for g in l.elements() {
                    if self.act_pi(s, self.act_left(g, x))
                        != self.act_left(self.pi_on_left(s, g), self.act_pi(s, x))
                    {
                        return Err(BitorsorError::NotEquivariant {
                            detail: "left".into(),
                        });
                    }
                }
                for g in r.elements() {
                    if self.act_pi(s, self.act_right(x, g))
                        != self.act_right(self.act_pi(s, x), self.pi_on_right(s, g))
                    {
                        return Err(BitorsorError::NotEquivariant {
                            detail: "right".into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for Bitorsor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.left == other.0.left
                && self.0.right == other.0.right
                && self.0.left_act == other.0.left_act
                && self.0.right_act == other.0.right_act
                && self.0.pi == other.0.pi
                && self.0.pi_points == other.0.pi_points)
    }
}

impl Eq for Bitorsor {}

impl fmt::Debug for Bitorsor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bitorsor({}, {} points, {}",
            self.left().label(),
            self.size(),
            self.right().label()
        )?;
        if self.pi().order() > 1 {
            write!(f, "; Π = {}", self.pi().label())?;
        }
        write!(f, ")")
    }
}

/// `Triv(G)`: `G` acting on itself by left and right translation.
pub fn trivial_bitorsor(group: &FiniteGroup) -> Bitorsor {
    let n = group.order();
    let left_act = (0..n * n).map(|i| group.mul(i / n, i % n)).collect();
    let right_act = (0..n * n).map(|i| group.mul(i / n, i % n)).collect();
    Bitorsor::new(group.clone(), group.clone(), left_act, right_act)
        .expect("translations form a bitorsor")
}

/// `Triv(𝖦)` for a `Π`-group: translations, with `Π` acting on points
/// through its action on the group.
pub fn trivial_pi_bitorsor(group: &PiGroup) -> Bitorsor {
    let g = group.group();
    let n = g.order();
    let pi_points = group
        .pi()
        .elements()
        .flat_map(|s| (0..n).map(move |x| group.apply(s, x)))
        .collect();
    trivial_bitorsor(g)
        .equip(group.pi(), pi_points)
        .expect("automorphisms respect translations")
}

/// The bitorsor `(Aut_G(X), X, G)` of a right torsor.
///
/// `Aut_G(X)` is realized on the points themselves: element `y` is the unique
/// `G`-automorphism sending point 0 to `y`, so element 0 is the identity.
pub fn from_right_torsor(
    right: &FiniteGroup,
    right_act: Vec<usize>,
) -> Result<Bitorsor, BitorsorError> {
    let nr = right.order();
    if !right_act.len().is_multiple_of(nr) {
        return fail("right action table has the wrong size");
    }
    let size = right_act.len() / nr;
    if right_act.iter().any(|&p| p >= size) {
        return fail("action table entry out of range");
    }
    let coord = regular_coords(
        right,
        size,
        |g, x| right_act[x * nr + g],
        |a, b| right.mul(b, a),
        "right",
    )?;
    // f_y(x) = y · coord(x)
    let f = |y: usize, x: usize| right_act[y * nr + coord[x]];
    let mul: Vec<usize> = (0..size * size).map(|i| f(i / size, i % size)).collect();
    let left = FiniteGroup::from_flat(
        size,
        mul.clone(),
        None,
        &format!("Aut_{}(X)", right.label()),
    )
    .map_err(|e| BitorsorError::NotAnAction {
        detail: e.to_string(),
    })?;
    Bitorsor::new(left, right.clone(), mul, right_act)
}

/// `X⁻¹ = (G, X, G′)` with `g·x = x·g⁻¹` and `x·g′ = g′⁻¹·x`.
pub fn inverse(b: &Bitorsor) -> Bitorsor {
    let (l, r, n) = (b.left(), b.right(), b.size());
    let left_act = (0..r.order() * n)
        .map(|i| b.act_right(i % n, r.inv(i / n)))
        .collect();
    let right_act = (0..n * l.order())
        .map(|i| b.act_left(l.inv(i % l.order()), i / l.order()))
        .collect();
    Bitorsor::with_pi(
        r.clone(),
        l.clone(),
        left_act,
        right_act,
        b.pi().clone(),
        b.pi_points_table().to_vec(),
    )
    .expect("inverse of a bitorsor is a bitorsor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{cyclic, symmetric};

    #[test]
    fn trivial_bitorsors() {
        let t1 = trivial_bitorsor(&cyclic(1));
        assert_eq!(t1.size(), 1);
        let t4 = trivial_bitorsor(&cyclic(4));
        assert_eq!(t4.act_left(1, 2), 3);
        let t = trivial_bitorsor(&symmetric(3));
        t.check_exhaustive().unwrap();
    }

    #[test]
    fn swap_torsor() {
        let z2 = cyclic(2);
        let b = from_right_torsor(&z2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(b.left().order(), 2);
        // brute force: permutations of two points commuting with the swap
        let commuting = [[0usize, 1], [1, 0]]
            .iter()
            .filter(|p| (0..2).all(|x| p[b.act_right(x, 1)] == b.act_right(p[x], 1)))
            .count();
        assert_eq!(commuting, 2);
        b.check_exhaustive().unwrap();
    }

    #[test]
    fn right_translation_torsor_of_s3() {
        let s3 = symmetric(3);
        let right_act = (0..36).map(|i| s3.mul(i / 6, i % 6)).collect();
        let b = from_right_torsor(&s3, right_act).unwrap();
        assert!(!b.left().is_abelian());
        assert!(crate::group::find_group_isomorphism(b.left(), &s3).is_some());
        b.check_exhaustive().unwrap();
    }

    #[test]
    fn not_free_or_transitive() {
        let z2 = cyclic(2);
        // both elements fix every point of a 2-point set
        assert!(matches!(
            from_right_torsor(&z2, vec![0, 0, 1, 1]),
            Err(BitorsorError::NotAnAction { .. }) | Err(BitorsorError::NotFree { .. })
        ));
        // 4 points under Z/2
        assert!(matches!(
            from_right_torsor(&z2, vec![0, 1, 1, 0, 2, 3, 3, 2]),
            Err(BitorsorError::NotTransitive { .. })
        ));
    }

    #[test]
    fn inverse_is_an_involution() {
        let s3 = symmetric(3);
        let t = trivial_bitorsor(&s3);
        let ii = inverse(&inverse(&t));
        assert_eq!(ii.left_act_table(), t.left_act_table());
        assert_eq!(ii.right_act_table(), t.right_act_table());
        inverse(&t).check_exhaustive().unwrap();
    }

    #[test]
    fn derived_pi_actions() {
        // Π = Z/2 acting on Triv(S₃) by left translation with a transposition
        let s3 = symmetric(3);
        let z2 = cyclic(2);
        let t = trivial_bitorsor(&s3);
        let pts: Vec<usize> = (0..2)
            .flat_map(|s| {
                let s3 = s3.clone();
                (0..6).map(move |x| if s == 0 { x } else { s3.mul(1, x) })
            })
            .collect();
        let b = t.equip(&z2, pts).unwrap();
        assert!(b.right_is_constant());
        assert!(!b.left_is_constant());
        for g in s3.elements() {
            assert_eq!(b.pi_on_left(1, g), s3.conjugate(1, g));
        }
        b.check_exhaustive().unwrap();
    }
}
