use std::fmt;

use super::{FiniteGroup, GroupError, Subgroup};

/// A validated homomorphism `src → dst`, stored as an image table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    src: FiniteGroup,
    dst: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(src: FiniteGroup, dst: FiniteGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != src.order() {
            return Err(GroupError::NotAHomomorphism {
                detail: format!(
                    "map has {} entries, source has order {}",
                    map.len(),
                    src.order()
                ),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= dst.order()) {
            return Err(GroupError::NotAHomomorphism {
                detail: format!("image {bad} is not an element of {}", dst.label()),
            });
        }
        if map[src.identity()] != dst.identity() {
            return Err(GroupError::NotAHomomorphism {
                detail: "identity is not preserved".into(),
            });
        }
        for a in src.elements() {
            for b in src.elements() {
                if map[src.mul(a, b)] != dst.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism {
                        detail: format!("f({a}·{b}) ≠ f({a})·f({b})"),
                    });
                }
            }
        }
        Ok(GroupHom { src, dst, map })
    }

    /// Skips validation; callers guarantee the homomorphism law.
    pub(crate) fn from_trusted(src: FiniteGroup, dst: FiniteGroup, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), src.order());
        GroupHom { src, dst, map }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupHom::from_trusted(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn trivial(src: &FiniteGroup, dst: &FiniteGroup) -> Self {
        GroupHom::from_trusted(src.clone(), dst.clone(), vec![dst.identity(); src.order()])
    }

    /// Inner automorphism `x ↦ g x g⁻¹`.
    pub fn conjugation(group: &FiniteGroup, g: usize) -> Self {
        let map = group.elements().map(|x| group.conjugate(g, x)).collect();
        GroupHom::from_trusted(group.clone(), group.clone(), map)
    }

    pub fn src(&self) -> &FiniteGroup {
        &self.src
    }

    pub fn dst(&self) -> &FiniteGroup {
        &self.dst
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Images of the source generators, the key used for deterministic ordering.
    pub fn generator_images(&self) -> Vec<usize> {
        self.src.generators().iter().map(|&g| self.map[g]).collect()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.dst != *other.src() {
            return Err(GroupError::MixedSignatures);
        }
        let map = self.map.iter().map(|&x| other.apply(x)).collect();
        Ok(GroupHom::from_trusted(
            self.src.clone(),
            other.dst.clone(),
            map,
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.dst.order()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.dst.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.src.order() == self.dst.order() && self.is_injective()
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom, GroupError> {
        if !self.is_bijective() {
            return Err(GroupError::NotAHomomorphism {
                detail: "inverse requested for a non-bijective map".into(),
            });
        }
        let mut map = vec![0; self.dst.order()];
        for (a, &b) in self.map.iter().enumerate() {
            map[b] = a;
        }
        Ok(GroupHom::from_trusted(
            self.dst.clone(),
            self.src.clone(),
            map,
        ))
    }

    /// Same map with the target narrowed to `sub` (reindexed through
    /// `Subgroup::to_group`).
    pub fn corestrict(&self, sub: &Subgroup) -> Result<GroupHom, GroupError> {
        if *sub.parent() != self.dst {
            return Err(GroupError::MixedSignatures);
        }
        let (group, _) = sub.to_group();
        let map = self
            .map
            .iter()
            .map(|&y| {
                sub.position(y).ok_or(GroupError::NotAHomomorphism {
                    detail: format!("image {y} lies outside the target subgroup"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupHom::from_trusted(self.src.clone(), group, map))
    }

    /// Restriction to a subgroup of the source, reindexed through `to_group`.
    pub fn restrict(&self, sub: &Subgroup) -> Result<GroupHom, GroupError> {
        if *sub.parent() != self.src {
            return Err(GroupError::MixedSignatures);
        }
        let (group, _) = sub.to_group();
        let map = sub.members().iter().map(|&x| self.map[x]).collect();
        Ok(GroupHom::from_trusted(group, self.dst.clone(), map))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} → {}, {:?})",
            self.src.label(),
            self.dst.label(),
            self.map
        )
    }
}
