use std::fmt;

use super::BitorsorError;
use crate::group::{builtin, FiniteGroup, GroupHom, Subgroup};

/// A group with a left action of `Π` by automorphisms.
///
/// `action[σ·|G| + g]` is `σ(g)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PiGroup {
    group: FiniteGroup,
    pi: FiniteGroup,
    action: Vec<usize>,
}

impl PiGroup {
    pub fn new(
        group: FiniteGroup,
        pi: FiniteGroup,
        action: Vec<usize>,
    ) -> Result<Self, BitorsorError> {
        let n = group.order();
        let bad = |detail: String| Err(BitorsorError::NotEquivariant { detail });
        if action.len() != pi.order() * n {
            return bad(format!(
                "action table has {} entries, expected {}",
                action.len(),
                pi.order() * n
            ));
        }
        for s in pi.elements() {
            let row = &action[s * n..(s + 1) * n];
            let hom = GroupHom::new(group.clone(), group.clone(), row.to_vec()).map_err(|e| {
                BitorsorError::NotEquivariant {
                    detail: format!("σ={s}: {e}"),
                }
            })?;
            if !hom.is_bijective() {
                return bad(format!("σ={s} does not act bijectively"));
            }
        }
        let e = pi.identity();
        if group.elements().any(|g| action[e * n + g] != g) {
            return bad("identity of Π acts nontrivially".into());
        }
        for s in pi.elements() {
            for &t in pi.generators() {
                let st = pi.mul(s, t);
                if group
                    .elements()
                    .any(|g| action[st * n + g] != action[s * n + action[t * n + g]])
                {
                    return bad(format!("action of {s}·{t} is not the composite"));
                }
            }
        }
        Ok(PiGroup { group, pi, action })
    }

    /// `group` with trivial `Π`-action.
    pub fn constant(group: &FiniteGroup, pi: &FiniteGroup) -> Self {
        let action = pi.elements().flat_map(|_| group.elements()).collect();
        PiGroup {
            group: group.clone(),
            pi: pi.clone(),
            action,
        }
    }

    /// A plain group, seen over the trivial `Π`.
    pub fn plain(group: &FiniteGroup) -> Self {
        Self::constant(group, &builtin::trivial())
    }

    pub(crate) fn from_trusted(group: FiniteGroup, pi: FiniteGroup, action: Vec<usize>) -> Self {
        PiGroup { group, pi, action }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    #[inline]
    pub fn apply(&self, sigma: usize, g: usize) -> usize {
        self.action[sigma * self.group.order() + g]
    }

    pub fn is_constant(&self) -> bool {
        self.pi
            .elements()
            .all(|s| self.group.elements().all(|g| self.apply(s, g) == g))
    }

    pub fn is_stable(&self, sub: &Subgroup) -> bool {
        sub.parent() == &self.group
            && self.pi.elements().all(|s| {
                sub.members()
                    .iter()
                    .all(|&h| sub.contains(self.apply(s, h)))
            })
    }

    /// Elements fixed by every `σ`.
    pub fn fixed_subgroup(&self) -> Subgroup {
        let fixed: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| self.pi.elements().all(|s| self.apply(s, g) == g))
            .collect();
        Subgroup::new(&self.group, &fixed).expect("fixed points form a subgroup")
    }

    /// Whether `f: self → other` commutes with the two actions.
    pub fn is_equivariant(&self, f: &GroupHom, other: &PiGroup) -> bool {
        self.pi == other.pi
            && f.src() == &self.group
            && f.dst() == &other.group
            && self.pi.elements().all(|s| {
                self.group
                    .elements()
                    .all(|g| f.apply(self.apply(s, g)) == other.apply(s, f.apply(g)))
            })
    }

    /// Restriction of the action to a stable subgroup, reindexed through
    /// `Subgroup::to_group`.
    pub fn restrict(&self, sub: &Subgroup) -> Result<PiGroup, BitorsorError> {
        if !self.is_stable(sub) {
            return Err(BitorsorError::NotPiStable);
        }
        let (group, _) = sub.to_group();
        let action = self
            .pi
            .elements()
            .flat_map(|s| {
                sub.members()
                    .iter()
                    .map(move |&h| sub.position(self.apply(s, h)).expect("stable"))
            })
            .collect();
        Ok(PiGroup::from_trusted(group, self.pi.clone(), action))
    }

    /// Action induced on the target of a surjective equivariant-compatible
    /// map, such as a quotient by a stable normal subgroup.
    pub fn push_through(&self, q: &GroupHom) -> Result<PiGroup, BitorsorError> {
        if q.src() != &self.group || !q.is_surjective() {
            return Err(BitorsorError::SignatureMismatch {
                detail: "push_through needs a surjection out of the underlying group".into(),
            });
        }
        let m = q.dst().order();
        let mut action = vec![usize::MAX; self.pi.order() * m];
        for s in self.pi.elements() {
            for g in self.group.elements() {
                let slot = &mut action[s * m + q.apply(g)];
                let v = q.apply(self.apply(s, g));
                if *slot == usize::MAX {
                    *slot = v;
                } else if *slot != v {
                    return Err(BitorsorError::NotPiStable);
                }
            }
        }
        Ok(PiGroup::from_trusted(
            q.dst().clone(),
            self.pi.clone(),
            action,
        ))
    }
}

impl fmt::Debug for PiGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiGroup({} ⟲ {})", self.pi.label(), self.group.label())
    }
}
