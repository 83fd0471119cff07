use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use super::GroupError;

/// A finite group stored as a dense multiplication table over indices
/// `0..order`.
///
/// Values are immutable once validated and cheap to clone (the table is
/// shared). Two groups compare equal when their tables agree; labels and
/// chosen generators are presentation details and do not take part in
/// equality.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

struct GroupData {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    generators: Vec<usize>,
    label: String,
}

/// Validates a multiplication table and builds a group from it.
///
/// The identity does not have to sit at index 0; it is discovered. Checks run
/// in the order identity, inverses, associativity, generation, and the first
/// violation found is reported.
pub fn make_group(
    mul_table: &[Vec<usize>],
    generators: &[usize],
    label: &str,
) -> Result<FiniteGroup, GroupError> {
    let order = mul_table.len();
    if order == 0 {
        return Err(GroupError::EmptyTable);
    }
    let mut flat = Vec::with_capacity(order * order);
    for (row, entries) in mul_table.iter().enumerate() {
        if entries.len() != order {
            return Err(GroupError::NotSquare {
                row,
                len: entries.len(),
                expected: order,
            });
        }
        flat.extend_from_slice(entries);
    }
    FiniteGroup::from_flat(order, flat, Some(generators.to_vec()), label)
}

impl FiniteGroup {
    /// Builds a group from a row-major table. When `generators` is `None`, a
    /// generating set is chosen greedily in index order.
    pub fn from_flat(
        order: usize,
        mul: Vec<usize>,
        generators: Option<Vec<usize>>,
        label: &str,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyTable);
        }
        if mul.len() != order * order {
            return Err(GroupError::NotSquare {
                row: mul.len() / order,
                len: mul.len() % order,
                expected: order,
            });
        }
        if let Some(pos) = mul.iter().position(|&v| v >= order) {
            return Err(GroupError::IndexOutOfRange {
                row: pos / order,
                col: pos % order,
                value: mul[pos],
            });
        }
        let at = |a: usize, b: usize| mul[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;

        let inv = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or(GroupError::NoInverse { element: a })
            })
            .collect::<Result<Vec<_>, _>>()?;

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut data = GroupData {
            order,
            mul,
            identity,
            inv,
            generators: Vec::new(),
            label: label.to_string(),
        };
        match generators {
            Some(gens) => {
                if gens.is_empty() {
                    return Err(GroupError::GeneratorsDoNotGenerate {
                        generated: 1,
                        order,
                    });
                }
                if let Some(&bad) = gens.iter().find(|&&g| g >= order) {
                    return Err(GroupError::IndexOutOfRange {
                        row: bad,
                        col: 0,
                        value: bad,
                    });
                }
                let generated = closure(&data, &gens).len();
                if generated != order {
                    return Err(GroupError::GeneratorsDoNotGenerate { generated, order });
                }
                data.generators = gens;
            }
            None => data.generators = greedy_generators(&data),
        }
        Ok(FiniteGroup(Arc::new(data)))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[usize] {
        &self.0.mul
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.0
            .mul
            .chunks(self.0.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Same table and generators under a different display label.
    pub fn relabeled(&self, label: &str) -> Self {
        FiniteGroup(Arc::new(GroupData {
            order: self.0.order,
            mul: self.0.mul.clone(),
            identity: self.0.identity,
            inv: self.0.inv.clone(),
            generators: self.0.generators.clone(),
            label: label.to_string(),
        }))
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted list of the elements of the subgroup generated by `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        closure(&self.0, gens)
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Exhaustive re-check of the group axioms.
    pub fn check_axioms(&self) -> bool {
        let e = self.identity();
        self.elements().all(|a| {
            self.mul(a, self.inv(a)) == e
                && self.mul(self.inv(a), a) == e
                && self.mul(e, a) == a
                && self.elements().all(|b| {
                    self.elements()
                        .all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
                })
        })
    }
}

fn closure(data: &GroupData, gens: &[usize]) -> Vec<usize> {
    let n = data.order;
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([data.identity]);
    seen[data.identity] = true;
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = data.mul[x * n + g];
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    (0..n).filter(|&i| seen[i]).collect()
}

fn greedy_generators(data: &GroupData) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = vec![data.identity];
    for x in 0..data.order {
        if current.len() == data.order {
            break;
        }
        if current.binary_search(&x).is_err() {
            gens.push(x);
            current = closure(data, &gens);
        }
    }
    if gens.is_empty() {
        gens.push(data.identity);
    }
    gens
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || (self.0.order == other.0.order && self.0.mul == other.0.mul)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.label, self.0.order)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}
