//! Orientation parity machinery for rectangular graphs and a list-constrained
//! latin rectangle solver.
//!
//! The rectangular graph of size `r x n` has vertices `(i, j)` with
//! `1 <= i <= r`, `1 <= j <= n`; two vertices are adjacent when they share a
//! row or a column. An [`Orientation`] directs every edge, and its parity is
//! the parity of the number of edges pointing at their order-smaller endpoint.
//!
//! * [`model`] holds the shared domain types.
//! * [`ops`] computes per-orientation quantities: parity, out-degrees, the
//!   matrix/orientation correspondence with latin rectangles and cyclic
//!   triangle detection.
//! * [`parity`] builds the out-degree target and circulant rectangle, the
//!   parity-flipping involution, and counts even/odd realizations.
//! * [`solver`] finds partial latin rectangles whose cells are drawn from
//!   prescribed lists.
//! * [`cli`] is the command-line front end.

pub mod cli;
pub mod model;
pub mod ops;
pub mod parity;
pub mod solver;

pub use model::{
    canonical_edges, validate_latin_rectangle, Edge, LatinRectangle, Line, ListAssignment,
    ModelError, Orientation, OutDegreeTarget, RectangularGraph, Symbol, Vertex, VertexOrdering,
};
pub use ops::{
    associated_matrix, associated_orientation, degree_profile, has_cyclic_triangle,
    line_out_degrees, parity, DegreeProfile, Parity, Triangle,
};
pub use parity::{
    circulant, delta_map, involution_phi, parity_census, triangle_free_realizations,
    CensusOptions, InvolutionTrace, ParityCensus, ParityError, SizeGuard,
};
pub use solver::{
    solve_rectangle, solve_square_plus_one, validate_solution, SolveError, SolveOptions,
    SolveResult,
};
