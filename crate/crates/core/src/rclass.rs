//! Elementary classes of `Π`-bitorsors and their composition closure.
//!
//! A registry lists, for each group `G` of a finite universe, which classes of
//! `H¹(Π, G)` (indexed in [`h1`] order) are elementary. A `(∗, G)`-bitorsor
//! with constant `G` is a member when its class is listed; a bitorsor with
//! constant left group is a member when its inverse is. The closure consists
//! of everything isomorphic to a composable chain of members.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitorsor::{
    are_isomorphic, compose, enumerate_morphisms, inverse, Bitorsor, BitorsorError,
    BitorsorMorphism, IsoMode,
};
use crate::equivariant::{classify, classify_pi, from_theta, h1, EquivariantError, ThetaBitorsor};
use crate::group::{
    builtin, content_lines, parse_index, tokens, FiniteGroup, GroupError, GroupHom, ParseError,
};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RclassError {
    #[error("membership is undecidable: {0}")]
    Undecidable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("group {group} has no class {class}")]
    UnknownClass { group: String, class: usize },
    #[error("max_n must be at least 1")]
    ZeroBound,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Bitorsor(#[from] BitorsorError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A chain `X₁ ∧ ⋯ ∧ Xₙ` (bracketed from the left) with an isomorphism onto
/// a target.
#[derive(Clone, Debug)]
pub struct Factorization {
    factors: Vec<Bitorsor>,
    wedge: Bitorsor,
    iso: BitorsorMorphism,
}

fn wedge_all(factors: &[Bitorsor]) -> Result<Bitorsor, BitorsorError> {
    let mut it = factors.iter();
    let first = it.next().expect("nonempty").clone();
    it.try_fold(first, |acc, b| compose(&acc, b))
}

impl Factorization {
    pub fn new(factors: Vec<Bitorsor>, iso: BitorsorMorphism) -> Result<Self, RclassError> {
        if factors.is_empty() {
            return Err(RclassError::InvalidFactorization("no factors".into()));
        }
        let wedge = wedge_all(&factors)?;
        if iso.src() != &wedge {
            return Err(RclassError::InvalidFactorization(
                "isomorphism does not start at the wedge".into(),
            ));
        }
        if !iso.is_isomorphism() {
            return Err(RclassError::InvalidFactorization(
                "not an isomorphism".into(),
            ));
        }
        Ok(Factorization {
            factors,
            wedge,
            iso,
        })
    }

    pub fn factors(&self) -> &[Bitorsor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn wedge(&self) -> &Bitorsor {
        &self.wedge
    }

    /// `X₁ ∧ ⋯ ∧ Xₙ → target`.
    pub fn iso(&self) -> &BitorsorMorphism {
        &self.iso
    }

    pub fn target(&self) -> &Bitorsor {
        self.iso.dst()
    }

    /// Recomputes the wedge, re-checks the isomorphism exhaustively and
    /// re-checks membership of every factor.
    pub fn verify(&self, registry: &ElementaryClassRegistry) -> Result<(), RclassError> {
        let bad = |m: String| Err(RclassError::InvalidFactorization(m));
        let wedge = wedge_all(&self.factors)?;
        if wedge != *self.iso.src() {
            return bad("recomputed wedge differs".into());
        }
        self.iso.check_exhaustive()?;
        if !self.iso.is_isomorphism() {
            return bad("not an isomorphism".into());
        }
        for (i, f) in self.factors.iter().enumerate() {
            if !registry.is_member(f)? {
                return bad(format!("factor {i} is not elementary"));
            }
        }
        Ok(())
    }
}

/// One candidate elementary bitorsor: the class `class` of `H¹(Π, G)` for
/// `G = universe[group]`, or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassRef {
    pub group: usize,
    pub class: usize,
    pub inverted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegistryViolation {
    #[error("the trivial class of {group} is missing")]
    MissingTrivial { group: String },
    #[error("class {class} of {group} is elementary but its inverse is not")]
    NotInverseStable { group: String, class: usize },
    #[error("a morphism leads from elementary {from} to non-elementary {to}")]
    NotMorphismStable { from: String, to: String },
}

#[derive(Clone, Debug)]
pub struct ElementaryClassRegistry {
    pi: FiniteGroup,
    universe: Vec<FiniteGroup>,
    classes: Vec<Vec<ThetaBitorsor>>,
    elementary: Vec<BTreeSet<usize>>,
}

impl ElementaryClassRegistry {
    /// The empty registry over `universe`.
    pub fn new(pi: &FiniteGroup, universe: &[FiniteGroup]) -> Self {
        let mut r = ElementaryClassRegistry {
            pi: pi.clone(),
            universe: Vec::new(),
            classes: Vec::new(),
            elementary: Vec::new(),
        };
        for g in universe {
            r.add_group(g);
        }
        r
    }

    /// Only the trivial class of each group.
    pub fn trivials(pi: &FiniteGroup, universe: &[FiniteGroup]) -> Self {
        let mut r = Self::new(pi, universe);
        for gi in 0..r.universe.len() {
            let t = r.trivial_class(gi);
            r.elementary[gi].insert(t);
        }
        r
    }

    /// Every class of every group.
    pub fn everything(pi: &FiniteGroup, universe: &[FiniteGroup]) -> Self {
        let mut r = Self::new(pi, universe);
        for gi in 0..r.universe.len() {
            r.elementary[gi] = (0..r.classes[gi].len()).collect();
        }
        r
    }

    /// Adds `g` to the universe with no elementary classes; returns its index.
    pub fn add_group(&mut self, g: &FiniteGroup) -> usize {
        if let Some(i) = self.group_index(g) {
            return i;
        }
        self.universe.push(g.clone());
        self.classes.push(h1(&self.pi, g));
        self.elementary.push(BTreeSet::new());
        self.universe.len() - 1
    }

    pub fn insert(&mut self, g: &FiniteGroup, class: usize) -> Result<(), RclassError> {
        let gi = self.add_group(g);
        if class >= self.classes[gi].len() {
            return Err(RclassError::UnknownClass {
                group: g.label().to_string(),
                class,
            });
        }
        self.elementary[gi].insert(class);
        Ok(())
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn universe(&self) -> &[FiniteGroup] {
        &self.universe
    }

    pub fn group_index(&self, g: &FiniteGroup) -> Option<usize> {
        self.universe.iter().position(|u| u == g)
    }

    /// `H¹(Π, G)` representatives for `universe[group]`.
    pub fn classes(&self, group: usize) -> &[ThetaBitorsor] {
        &self.classes[group]
    }

    pub fn elementary_classes(&self, group: usize) -> &BTreeSet<usize> {
        &self.elementary[group]
    }

    pub fn trivial_class(&self, group: usize) -> usize {
        let g = &self.universe[group];
        let t = ThetaBitorsor::on_trivial(GroupHom::trivial(&self.pi, g));
        classify(&t, &self.classes[group]).expect("the trivial class is listed")
    }

    pub fn bitorsor(&self, r: &ClassRef) -> Bitorsor {
        let b = from_theta(&self.classes[r.group][r.class]);
        if r.inverted {
            inverse(&b)
        } else {
            b
        }
    }

    pub fn describe(&self, r: &ClassRef) -> String {
        let inv = if r.inverted { "⁻¹" } else { "" };
        format!("{}#{}{inv}", self.universe[r.group].label(), r.class)
    }

    /// Every class over the universe and every inverse, in a fixed order.
    pub fn candidates(&self) -> Vec<ClassRef> {
        let mut out = Vec::new();
        for (gi, cs) in self.classes.iter().enumerate() {
            for class in 0..cs.len() {
                for inverted in [false, true] {
                    out.push(ClassRef {
                        group: gi,
                        class,
                        inverted,
                    });
                }
            }
        }
        out
    }

    /// Whether `b` is elementary. Decided through whichever of its groups is
    /// constant.
    pub fn is_member(&self, b: &Bitorsor) -> Result<bool, RclassError> {
        if b.pi() != &self.pi {
            return Err(RclassError::SignatureMismatch(
                "bitorsor is over a different Π".into(),
            ));
        }
        if b.right_is_constant() {
            let Some(gi) = self.group_index(b.right()) else {
                return Ok(false);
            };
            let c = classify_pi(b, &self.classes[gi])?;
            return Ok(self.elementary[gi].contains(&c));
        }
        if b.left_is_constant() {
            return self.is_member(&inverse(b));
        }
        Err(RclassError::Undecidable(
            "Π acts nontrivially on both groups".into(),
        ))
    }

    /// Members among [`candidates`](Self::candidates).
    pub fn members(&self) -> Vec<(ClassRef, Bitorsor)> {
        self.candidates()
            .into_iter()
            .map(|r| {
                let b = self.bitorsor(&r);
                (r, b)
            })
            .filter(|(_, b)| self.is_member(b).unwrap_or(false))
            .collect()
    }

    /// Checks containment of trivials, inverse-stability and
    /// morphism-stability over the candidates of the universe.
    pub fn validate(&self) -> Result<(), RegistryViolation> {
        for gi in 0..self.universe.len() {
            if !self.elementary[gi].contains(&self.trivial_class(gi)) {
                return Err(RegistryViolation::MissingTrivial {
                    group: self.universe[gi].label().to_string(),
                });
            }
        }
        for (gi, set) in self.elementary.iter().enumerate() {
            for &class in set {
                let b = self.bitorsor(&ClassRef {
                    group: gi,
                    class,
                    inverted: true,
                });
                if let Ok(false) = self.is_member(&b) {
                    return Err(RegistryViolation::NotInverseStable {
                        group: self.universe[gi].label().to_string(),
                        class,
                    });
                }
            }
        }
        let candidates: Vec<(ClassRef, Bitorsor)> = self
            .candidates()
            .into_iter()
            .map(|r| (r.clone(), self.bitorsor(&r)))
            .collect();
        for (fr, from) in self.members() {
            for (tr, to) in &candidates {
                if self.is_member(to).unwrap_or(true) {
                    continue;
                }
                if !enumerate_morphisms(&from, to).is_empty() {
                    return Err(RegistryViolation::NotMorphismStable {
                        from: self.describe(&fr),
                        to: self.describe(tr),
                    });
                }
            }
        }
        Ok(())
    }
}

/// [`ElementaryClassRegistry::validate`] after adding `universe` to the
/// registry's own groups.
pub fn validate_registry(
    r: &ElementaryClassRegistry,
    universe: &[FiniteGroup],
) -> Result<(), RegistryViolation> {
    let mut r = r.clone();
    for g in universe {
        r.add_group(g);
    }
    r.validate()
}

/// Reads `elementary <group-name> <class-index>` lines.
pub fn parse_registry(
    input: &str,
    pi: &FiniteGroup,
) -> Result<ElementaryClassRegistry, RclassError> {
    let mut r = ElementaryClassRegistry::new(pi, &[]);
    for (line, col, text) in content_lines(input) {
        let toks = tokens(text, col);
        if toks.len() != 3 || toks[0].1 != "elementary" {
            return Err(ParseError::new(
                line,
                col,
                "expected `elementary <group-name> <class-index>`",
            )
            .into());
        }
        let g = builtin::by_name(toks[1].1)
            .map_err(|e| ParseError::new(line, toks[1].0, e.to_string()))?;
        let class = parse_index(line, toks[2])?;
        r.insert(&g, class)
            .map_err(|e| ParseError::new(line, toks[2].0, e.to_string()))?;
    }
    Ok(r)
}

/// A state of the breadth-first search: a chain of members and its wedge.
#[derive(Clone, Debug)]
pub struct Chain {
    pub refs: Vec<ClassRef>,
    pub wedge: Bitorsor,
}

fn isomorphic_right(a: &Bitorsor, b: &Bitorsor) -> Option<BitorsorMorphism> {
    if a.right_pi_group() != b.right_pi_group() || a.left().order() != b.left().order() {
        return None;
    }
    are_isomorphic(a, b, IsoMode::FixRight)
}

/// Breadth-first enumeration of chains up to `(∗, id)`-isomorphism, level by
/// level. `visit` sees each new chain once and may stop the search by
/// returning `true`.
fn search<F>(
    r: &ElementaryClassRegistry,
    max_n: usize,
    exec: Exec,
    mut visit: F,
) -> Result<(), RclassError>
where
    F: FnMut(&Chain) -> bool,
{
    if max_n == 0 {
        return Err(RclassError::ZeroBound);
    }
    let members = r.members();
    let mut seen: Vec<Bitorsor> = Vec::new();
    let mut admit = |c: Chain, seen: &mut Vec<Bitorsor>, out: &mut Vec<Chain>| {
        if seen.iter().any(|s| isomorphic_right(s, &c.wedge).is_some()) {
            return false;
        }
        seen.push(c.wedge.clone());
        let stop = visit(&c);
        out.push(c);
        stop
    };
    let mut frontier = Vec::new();
    for (cr, b) in &members {
        let c = Chain {
            refs: vec![cr.clone()],
            wedge: b.clone(),
        };
        if admit(c, &mut seen, &mut frontier) {
            return Ok(());
        }
    }
    for _ in 1..max_n {
        let extended = exec.flat_map(&frontier, |c| {
            let rp = c.wedge.right_pi_group();
            members
                .iter()
                .filter(|(_, m)| m.left_pi_group() == rp)
                .map(|(cr, m)| {
                    let mut refs = c.refs.clone();
                    refs.push(cr.clone());
                    Chain {
                        refs,
                        wedge: compose(&c.wedge, m).expect("middle groups agree"),
                    }
                })
                .collect()
        });
        let mut next = Vec::new();
        for c in extended {
            if admit(c, &mut seen, &mut next) {
                return Ok(());
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(())
}

/// Every wedge of at most `max_n` members, one per `(∗, id)`-isomorphism
/// class, shortest chains first.
pub fn closure(r: &ElementaryClassRegistry, max_n: usize) -> Result<Vec<Chain>, RclassError> {
    let mut out = Vec::new();
    search(r, max_n, Exec::default(), |c| {
        out.push(c.clone());
        false
    })?;
    Ok(out)
}

/// Shortest factorization of `target` into at most `max_n` members.
pub fn in_closure_pi(
    target: &Bitorsor,
    r: &ElementaryClassRegistry,
    max_n: usize,
) -> Result<Option<Factorization>, RclassError> {
    in_closure_with(target, r, max_n, Exec::default())
}

pub fn in_closure_with(
    target: &Bitorsor,
    r: &ElementaryClassRegistry,
    max_n: usize,
    exec: Exec,
) -> Result<Option<Factorization>, RclassError> {
    if target.pi() != r.pi() {
        return Err(RclassError::SignatureMismatch(
            "target is over a different Π".into(),
        ));
    }
    let mut found = None;
    search(r, max_n, exec, |c| {
        match isomorphic_right(&c.wedge, target) {
            Some(iso) => {
                found = Some((c.refs.clone(), iso));
                true
            }
            None => false,
        }
    })?;
    let Some((refs, iso)) = found else {
        return Ok(None);
    };
    let factors = refs.iter().map(|cr| r.bitorsor(cr)).collect();
    Factorization::new(factors, iso).map(Some)
}

pub fn in_closure(
    t: &ThetaBitorsor,
    r: &ElementaryClassRegistry,
    max_n: usize,
) -> Result<Option<Factorization>, RclassError> {
    in_closure_pi(&from_theta(t), r, max_n)
}

/// `Z` in the closure with `Z ∧ X ≅ Y`.
#[derive(Clone, Debug)]
pub struct RelatedWitness {
    /// Factorization of `Y ∧ X⁻¹`.
    pub z: Factorization,
    /// `Z ∧ X → Y`.
    pub iso: BitorsorMorphism,
}

pub fn requiv_related(
    x: &ThetaBitorsor,
    y: &ThetaBitorsor,
    r: &ElementaryClassRegistry,
    max_n: usize,
) -> Result<Option<RelatedWitness>, RclassError> {
    if x.right() != y.right() || x.pi() != y.pi() {
        return Err(RclassError::SignatureMismatch(
            "X and Y need the same Π and right group".into(),
        ));
    }
    let (px, py) = (from_theta(x), from_theta(y));
    let z0 = compose(&py, &inverse(&px))?;
    let Some(z) = in_closure_pi(&z0, r, max_n)? else {
        return Ok(None);
    };
    let zx = compose(z.wedge(), &px)?;
    let iso = isomorphic_right(&zx, &py)
        .ok_or_else(|| RclassError::InvalidFactorization("Z ∧ X is not isomorphic to Y".into()))?;
    Ok(Some(RelatedWitness { z, iso }))
}
