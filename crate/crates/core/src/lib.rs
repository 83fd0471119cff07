//! Finite bitorsor calculus.

pub mod bitorsor;
pub mod devissage;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod local_model;
pub mod par;
pub mod rclass;

pub use bitorsor::{Bitorsor, BitorsorMorphism, PiGroup};
pub use error::Error;
pub use group::{FiniteGroup, GroupError, GroupHom, Subgroup};
pub use par::Exec;
