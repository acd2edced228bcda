//! Braid words, tangles with top and bottom endpoints, and plat
//! presentations of a wedge of circles together with the boundary of the
//! banded surface they span.

mod braid;
mod plat;
mod tangle;

use thiserror::Error;

pub use braid::{braid_parse, BraidWord};
pub use plat::{PlatMode, PlatPresentation, PlatRecord};
pub use tangle::{BoxSite, Tangle};

pub(crate) use tangle::{double_crossing, left_copy, right_copy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i32, strands: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("tangle does not fit the box: {0}")]
    InterfaceMismatch(String),
    #[error("closure has {components} components, expected a connected wedge")]
    ExtraComponents { components: usize },
    #[error("presentation is not in standard form")]
    NotStandardized,
    #[error("banded boundary has {components} components")]
    DisconnectedBoundary { components: usize },
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

/// Braid-to-tangle conversion.
pub fn braid_to_tangle(b: &BraidWord) -> Tangle {
    Tangle::from_braid(b)
}
