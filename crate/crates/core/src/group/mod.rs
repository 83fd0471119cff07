//! Finite groups as validated multiplication tables, with homomorphisms,
//! subgroups, quotients, semidirect products and hom enumeration.

pub mod builtin;
mod enumerate;
mod finite;
mod hom;
mod ops;
mod subgroup;
mod text;

pub use enumerate::{
    conjugacy_classes_of_homs, enumerate_homs, enumerate_homs_filtered, enumerate_homs_with,
    sections_of, HomClass,
};
pub use finite::{make_group, FiniteGroup};
pub use hom::GroupHom;
pub use ops::{
    find_group_isomorphism, image, kernel, quotient, semidirect_product, SemidirectProduct,
};
pub use subgroup::{all_subgroups, Subgroup};
pub use text::{format_group, parse_group_text, GroupText, ParseError};

pub use text::{content_lines, parse_index, tokens};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("empty multiplication table")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) = {value} is out of range")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generators span a subgroup of order {generated}, group has order {order}")]
    GeneratorsDoNotGenerate { generated: usize, order: usize },
    #[error("not a homomorphism: {detail}")]
    NotAHomomorphism { detail: String },
    #[error("homomorphisms or subgroups do not share source/target")]
    MixedSignatures,
    #[error("not a subgroup: {detail}")]
    NotASubgroup { detail: String },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not an action by automorphisms: {detail}")]
    NotAnAction { detail: String },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("map is not surjective")]
    NotSurjective,
}
