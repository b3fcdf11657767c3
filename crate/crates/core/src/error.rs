//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("segment endpoints must satisfy b - a in Z_{{>=0}}, got a = {a}, b = {b}")]
    InvalidSegment { a: String, b: String },

    #[error("truncation by {amount} exceeds relative length {rel}")]
    OverTruncation { amount: u32, rel: u32 },

    #[error("segments are not linked")]
    NotLinked,

    #[error("expected a generic multisegment (no linked pair)")]
    NonGeneric,

    #[error("Steinberg datum must be generic to designate an irreducible")]
    NonGenericSteinberg,

    #[error("derivative order {order} exceeds degree {degree}")]
    OrderTooLarge { order: u32, degree: u32 },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("theorem mode requires a degenerate Zelevinsky datum (some segment of relative length >= 2)")]
    DegenerateExpected,

    #[error("line '{id}' redeclared with conflicting degree or dual")]
    LineConflict { id: String },

    #[error("line degree must be >= 1")]
    ZeroDegree,

    #[error("hecke ranks must match: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {rank} exceeds the desk-scale cap m <= 3")]
    RankTooLarge { rank: usize },

    #[error("character coordinates must be nonzero")]
    ZeroCharacter,

    #[error("parameter q must be nonzero for this computation")]
    ZeroQ,

    #[error("universe specification rejected: {0}")]
    BadUniverse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
