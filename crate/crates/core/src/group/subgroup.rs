use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{FiniteGroup, GroupError, GroupHom};

/// A subgroup, kept as the sorted list of its members inside the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
    is_normal: bool,
    as_group: Arc<OnceLock<(FiniteGroup, GroupHom)>>,
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, members: &[usize]) -> Result<Self, GroupError> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            if m >= parent.order() {
                return Err(GroupError::NotASubgroup {
                    detail: format!("{m} is not an element of {}", parent.label()),
                });
            }
            mask[m] = true;
        }
        if !mask[parent.identity()] {
            return Err(GroupError::NotASubgroup {
                detail: "identity missing".into(),
            });
        }
        let sorted: Vec<usize> = (0..parent.order()).filter(|&i| mask[i]).collect();
        for &a in &sorted {
            if !mask[parent.inv(a)] {
                return Err(GroupError::NotASubgroup {
                    detail: format!("inverse of {a} missing"),
                });
            }
            for &b in &sorted {
                if !mask[parent.mul(a, b)] {
                    return Err(GroupError::NotASubgroup {
                        detail: format!("{a}·{b} missing"),
                    });
                }
            }
        }
        Ok(Self::from_mask(parent, mask))
    }

    fn from_mask(parent: &FiniteGroup, mask: Vec<bool>) -> Self {
        let members: Vec<usize> = (0..parent.order()).filter(|&i| mask[i]).collect();
        let is_normal = parent
            .elements()
            .all(|g| members.iter().all(|&h| mask[parent.conjugate(g, h)]));
        Subgroup {
            parent: parent.clone(),
            members,
            mask,
            is_normal,
            as_group: Arc::new(OnceLock::new()),
        }
    }

    pub fn generated(parent: &FiniteGroup, gens: &[usize]) -> Self {
        let members = parent.generated_by(gens);
        let mut mask = vec![false; parent.order()];
        for m in members {
            mask[m] = true;
        }
        Self::from_mask(parent, mask)
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[parent.identity()] = true;
        Self::from_mask(parent, mask)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    /// Index of `x` in the sorted member list, i.e. its index in `to_group()`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subgroup as a group in its own right (members reindexed in sorted
    /// order) together with the inclusion into the parent.
    pub fn to_group(&self) -> (FiniteGroup, GroupHom) {
        self.as_group
            .get_or_init(|| {
                let k = self.members.len();
                let mut mul = Vec::with_capacity(k * k);
                for &a in &self.members {
                    for &b in &self.members {
                        let p = self.parent.mul(a, b);
                        mul.push(
                            self.members
                                .binary_search(&p)
                                .expect("closed under product"),
                        );
                    }
                }
                let label = format!("sub{}({})", k, self.parent.label());
                let group = FiniteGroup::from_flat(k, mul, None, &label)
                    .expect("a subgroup table is a group table");
                let incl = GroupHom::from_trusted(
                    group.clone(),
                    self.parent.clone(),
                    self.members.clone(),
                );
                (group, incl)
            })
            .clone()
    }

    /// Image of the subgroup under a homomorphism defined on the parent.
    pub fn image_under(&self, f: &GroupHom) -> Result<Subgroup, GroupError> {
        if *f.src() != self.parent {
            return Err(GroupError::MixedSignatures);
        }
        let mut mask = vec![false; f.dst().order()];
        for &m in &self.members {
            mask[f.apply(m)] = true;
        }
        Ok(Self::from_mask(f.dst(), mask))
    }

    /// Preimage under a homomorphism into the parent.
    pub fn preimage_under(&self, f: &GroupHom) -> Result<Subgroup, GroupError> {
        if *f.dst() != self.parent {
            return Err(GroupError::MixedSignatures);
        }
        let mask = f
            .src()
            .elements()
            .map(|x| self.contains(f.apply(x)))
            .collect();
        Ok(Self::from_mask(f.src(), mask))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&m| other.contains(m))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} ⊇ {:?})", self.parent.label(), self.members)
    }
}

/// All subgroups of a group, sorted by (order, members).
///
/// Built by repeatedly joining cyclic subgroups; fine for the small orders
/// this crate targets.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    use std::collections::BTreeSet;
    let cyclic: BTreeSet<Vec<usize>> = group.elements().map(|g| group.generated_by(&[g])).collect();
    let mut found: BTreeSet<Vec<usize>> = cyclic.clone();
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let joined: Vec<usize> = s.iter().chain(c.iter()).copied().collect();
                let sub = group.generated_by(&joined);
                if found.insert(sub.clone()) {
                    next.push(sub);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = found
        .into_iter()
        .map(|m| Subgroup::new(group, &m).expect("generated sets are subgroups"))
        .collect();
    subs.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    subs
}
