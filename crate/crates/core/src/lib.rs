//! Exact knot and link invariants on planar diagrams: Kauffman bracket and
//! Jones polynomial, Kauffman two-variable polynomial, Conway and Alexander
//! polynomials, Seifert matrices, and 2-cables.

pub mod cable;
pub mod diagram;
pub mod poly;
pub mod presentations;
pub mod seifert;
pub mod skein;
pub mod stevedore;
pub mod table;

pub use poly::{GaussInt, GaussRational, LaurentPoly, PolyError, TwoVarPoly};

use thiserror::Error;

/// Any error the library reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Presentation(#[from] presentations::PresentationError),
    #[error(transparent)]
    Skein(#[from] skein::SkeinError),
    #[error(transparent)]
    Seifert(#[from] seifert::SeifertError),
    #[error(transparent)]
    Cable(#[from] cable::CableError),
    #[error("knot table: {0}")]
    Table(String),
}
