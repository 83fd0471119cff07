//! Bitorsors over `Π`-sets whose right group is constant, and their
//! description as plain bitorsors with a homomorphism `θ: Π → G′`.

use crate::bitorsor::{
    are_isomorphic, sub_bitorsor, trivial_bitorsor, Bitorsor, BitorsorError, BitorsorMorphism,
    IsoMode,
};
use crate::group::{
    conjugacy_classes_of_homs, enumerate_homs_with, image, FiniteGroup, GroupError, GroupHom,
};
use crate::par::Exec;

pub use crate::bitorsor::PiGroup;

/// A bitorsor carrying a `Π`-action on its points.
pub type PiBitorsor = Bitorsor;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantError {
    #[error("Π acts nontrivially on the right group")]
    RightGroupNotConstant,
    #[error("no class matches (invariant breach)")]
    NoMatch,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("connectivity characterizations disagree: {0:?}")]
    Inconsistent([bool; 3]),
    #[error(transparent)]
    Bitorsor(#[from] BitorsorError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A plain bitorsor `(G′, X, G)` with `θ: Π → G′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBitorsor {
    pub bitorsor: Bitorsor,
    pub theta: GroupHom,
}

impl ThetaBitorsor {
    pub fn new(bitorsor: Bitorsor, theta: GroupHom) -> Result<Self, EquivariantError> {
        if theta.dst() != bitorsor.left() {
            return Err(EquivariantError::SignatureMismatch(
                "θ must land in the left group".into(),
            ));
        }
        Ok(ThetaBitorsor {
            bitorsor: bitorsor.underlying(),
            theta,
        })
    }

    /// `Triv(G)` with `θ: Π → G`.
    pub fn on_trivial(theta: GroupHom) -> Self {
        ThetaBitorsor {
            bitorsor: trivial_bitorsor(theta.dst()),
            theta,
        }
    }

    pub fn pi(&self) -> &FiniteGroup {
        self.theta.src()
    }

    pub fn right(&self) -> &FiniteGroup {
        self.bitorsor.right()
    }
}

/// `Ψ`: `Π` acts on points through `θ` and the left action.
pub fn from_theta(t: &ThetaBitorsor) -> PiBitorsor {
    let b = &t.bitorsor;
    let pi = t.pi();
    let n = b.size();
    let pi_points = (0..pi.order() * n)
        .map(|i| b.act_left(t.theta.apply(i / n), i % n))
        .collect();
    let p = b
        .equip(pi, pi_points)
        .expect("θ acts through left translations");
    debug_assert!(p.right_is_constant());
    p
}

/// `Φ`: reads `θ(σ)` off the action on the base point.
pub fn to_theta(p: &PiBitorsor) -> Result<ThetaBitorsor, EquivariantError> {
    if !p.right_is_constant() {
        return Err(EquivariantError::RightGroupNotConstant);
    }
    let map = p
        .pi()
        .elements()
        .map(|s| p.left_between(0, p.act_pi(s, 0)))
        .collect();
    let theta = GroupHom::new(p.pi().clone(), p.left().clone(), map)?;
    Ok(ThetaBitorsor {
        bitorsor: p.underlying(),
        theta,
    })
}

/// The three characterizations of connectedness: `θ` surjective, the orbit
/// of point 0 is everything, there is exactly one orbit.
pub fn connectivity(t: &ThetaBitorsor) -> [bool; 3] {
    let p = from_theta(t);
    [
        t.theta.is_surjective(),
        p.pi_orbit(0).len() == p.size(),
        p.pi_orbit_count() == 1,
    ]
}

pub fn is_connected(t: &ThetaBitorsor) -> Result<bool, EquivariantError> {
    let c = connectivity(t);
    if c[0] == c[1] && c[1] == c[2] {
        Ok(c[0])
    } else {
        Err(EquivariantError::Inconsistent(c))
    }
}

/// The connected sub-object through `basepoint`: `H′ = θ(Π)`, `Y = H′·x`,
/// with its injective morphism of `Π`-bitorsors.
pub fn connected_component(
    t: &ThetaBitorsor,
    basepoint: usize,
) -> Result<(ThetaBitorsor, BitorsorMorphism), EquivariantError> {
    let p = from_theta(t);
    let h_left = image(&t.theta);
    let (sub, inclusion) = sub_bitorsor(&p, &h_left, basepoint)?;
    let component = to_theta(&sub)?;
    Ok((component, inclusion))
}

/// One representative per class of `H¹(Π, G)`: `Triv(G)` with `θ` the
/// smallest member of each conjugacy class of `Hom(Π, G)`.
pub fn h1(pi: &FiniteGroup, g: &FiniteGroup) -> Vec<ThetaBitorsor> {
    h1_with(pi, g, Exec::default())
}

pub fn h1_with(pi: &FiniteGroup, g: &FiniteGroup, exec: Exec) -> Vec<ThetaBitorsor> {
    let homs = enumerate_homs_with(pi, g, exec);
    let classes = conjugacy_classes_of_homs(&homs).expect("common signature");
    let triv = trivial_bitorsor(g);
    classes
        .into_iter()
        .map(|c| ThetaBitorsor {
            bitorsor: triv.clone(),
            theta: c.representative,
        })
        .collect()
}

/// `Π`-equivariant `(∗, id)`-isomorphism between the associated
/// `Π`-bitorsors.
pub fn equivariant_isomorphism(a: &ThetaBitorsor, b: &ThetaBitorsor) -> Option<BitorsorMorphism> {
    if a.pi() != b.pi() || a.right() != b.right() {
        return None;
    }
    are_isomorphic(&from_theta(a), &from_theta(b), IsoMode::FixRight)
}

/// Index of the class of `t` among `classes`.
pub fn classify(t: &ThetaBitorsor, classes: &[ThetaBitorsor]) -> Result<usize, EquivariantError> {
    let p = from_theta(t);
    for (i, c) in classes.iter().enumerate() {
        if c.pi() != t.pi() || c.right() != t.right() {
            return Err(EquivariantError::SignatureMismatch(
                "classes are for a different Π or right group".into(),
            ));
        }
        if are_isomorphic(&p, &from_theta(c), IsoMode::FixRight).is_some() {
            return Ok(i);
        }
    }
    Err(EquivariantError::NoMatch)
}

/// Like [`classify`] for a `Π`-bitorsor with constant right group.
pub fn classify_pi(p: &PiBitorsor, classes: &[ThetaBitorsor]) -> Result<usize, EquivariantError> {
    classify(&to_theta(p)?, classes)
}
