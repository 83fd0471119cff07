//! Bitorsors under finite groups and their calculus: morphisms,
//! trivializations, change of structural group, quotients, contracted
//! products, inverses and `Isom` bitorsors.

mod carrier;
mod morphism;
mod pigroup;
mod products;

pub use carrier::{from_right_torsor, inverse, trivial_bitorsor, trivial_pi_bitorsor, Bitorsor};
pub use morphism::{
    are_isomorphic, enumerate_morphisms, factor_morphism, sub_bitorsor, trivialize,
    BitorsorMorphism, ImageFactorization, IsoMode, Trivialization,
};
pub use pigroup::PiGroup;
pub use products::{
    compose, corresponding_normal_subgroup, factor_through_pushforwards, induction_conditions,
    is_induced_from, is_induced_from_left, isom_bitorsor, isom_to_wedge, pushforward,
    pushforward_factor, pushforward_into, pushforward_left, pushforward_left_into,
    quotient_bitorsor, wedge_morphisms, wedge_point, InducedWitness, PushforwardFactorization,
};

use crate::group::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BitorsorError {
    #[error("{side} action is not free")]
    NotFree { side: String },
    #[error("{side} action is not transitive")]
    NotTransitive { side: String },
    #[error("not an action: {detail}")]
    NotAnAction { detail: String },
    #[error("actions do not commute: ({left}·{point})·{right} ≠ {left}·({point}·{right})")]
    NotCommuting {
        left: usize,
        point: usize,
        right: usize,
    },
    #[error("Π-action is incompatible: {detail}")]
    NotEquivariant { detail: String },
    #[error("subgroup is not stable under Π")]
    NotPiStable,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("signature mismatch: {detail}")]
    SignatureMismatch { detail: String },
    #[error("bitorsors are not composable: {detail}")]
    NotComposable { detail: String },
    #[error("invalid morphism: {detail}")]
    InvalidMorphism { detail: String },
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
