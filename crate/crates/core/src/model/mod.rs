//! Domain types shared by every other module.
//!
//! Vertices are 1-indexed `(row, col)` pairs. Every type here is an immutable
//! value once constructed.

mod degree;
mod graph;
mod latin;
mod lists;
mod orientation;

pub use degree::OutDegreeTarget;
pub use graph::{canonical_edges, Edge, Line, RectangularGraph, Vertex, VertexOrdering};
pub use latin::{validate_latin_rectangle, LatinRectangle, LatinReport, LatinViolation};
pub(crate) use latin::check_rectangular as latin_shape;
pub use lists::{ListAssignment, Symbol};
pub use orientation::Orientation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected a {expected_rows}x{expected_cols} array, got {rows}x{cols}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("not a latin rectangle: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotLatin(Vec<LatinViolation>),
    #[error("cell ({row},{col}) has an empty list")]
    EmptyList { row: usize, col: usize },
    #[error("out-degree {value} at ({row},{col}) exceeds the vertex degree {degree}")]
    DegreeTooLarge {
        row: usize,
        col: usize,
        value: usize,
        degree: usize,
    },
    #[error("vertex ranking is not a permutation of 0..{0}")]
    InvalidRanking(usize),
    #[error("orientation bit vector has {found} bits, graph has {expected} edges")]
    BitLength { expected: usize, found: usize },
}
