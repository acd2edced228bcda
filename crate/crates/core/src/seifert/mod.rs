//! Seifert circles, Seifert matrices, and the invariants read off them.

mod matrix;
mod vogel;

use thiserror::Error;

pub use matrix::{
    alexander_from_seifert, braid_seifert_matrix, determinant, elementary_enlarge, int_det, is_monic,
    normalize_alexander, signature, BasisCurve, EnlargeMode, SeifertMatrix,
};
pub use vogel::{braid_from_diagram, braided_form, seifert_circles, seifert_surface_genus};

use crate::diagram::Diagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("expected a knot, got {0} components")]
    MultiComponent(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("braiding failed: {0}")]
    Braiding(String),
}

/// A Seifert matrix of the knot in `d`, from a braided form of the diagram.
pub fn seifert_matrix(d: &Diagram) -> Result<SeifertMatrix, SeifertError> {
    let comps = d.component_count();
    if comps != 1 {
        return Err(SeifertError::MultiComponent(comps));
    }
    if d.crossing_count() == 0 {
        return Ok(SeifertMatrix::empty());
    }
    Ok(braid_seifert_matrix(&braid_from_diagram(d)?))
}
