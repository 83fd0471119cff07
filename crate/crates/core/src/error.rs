//! Crate-wide error carrying the originating module.

use thiserror::Error;

use crate::bitorsor::BitorsorError;
use crate::devissage::DevissageError;
use crate::equivariant::EquivariantError;
use crate::group::{GroupError, ParseError};
use crate::local_model::LocalModelError;
use crate::rclass::RclassError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group_core: {0}")]
    Group(#[from] GroupError),
    #[error("group_core: {0}")]
    Parse(#[from] ParseError),
    #[error("bitorsor_core: {0}")]
    Bitorsor(#[from] BitorsorError),
    #[error("equivariant: {0}")]
    Equivariant(#[from] EquivariantError),
    #[error("devissage: {0}")]
    Devissage(#[from] DevissageError),
    #[error("rclass: {0}")]
    Rclass(#[from] RclassError),
    #[error("local_model: {0}")]
    LocalModel(#[from] LocalModelError),
}

impl Error {
    /// Name of the module the error comes from.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Group(_) | Error::Parse(_) => "group_core",
            Error::Bitorsor(_) => "bitorsor_core",
            Error::Equivariant(_) => "equivariant",
            Error::Devissage(_) => "devissage",
            Error::Rclass(_) => "rclass",
            Error::LocalModel(_) => "local_model",
        }
    }
}
