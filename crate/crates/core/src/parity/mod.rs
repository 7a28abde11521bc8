//! Out-degree target, circulant rectangles, the parity-flipping involution
//! and the even/odd census of orientations realizing a target.

mod census;
mod construct;
mod involution;

pub use census::{
    census_breakdown, for_each_realization, parity_census, parity_census_on,
    triangle_free_realizations, CensusBreakdown, CensusOptions, ParityCensus, SizeGuard,
    DEFAULT_MAX_EDGES,
};
pub use construct::{circulant, delta_map};
pub use involution::{
    involution_check, involution_phi, involution_selfcheck, pivot_pair, CheckTally, InvolutionReport,
    InvolutionTrace, Pivot,
};

use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("requires rows < cols, got {rows}x{cols}")]
    RowsNotBelowCols { rows: usize, cols: usize },
    #[error("requires rows <= cols, got {rows}x{cols}")]
    RowsExceedCols { rows: usize, cols: usize },
    #[error("graph has {edges} edges, above the size guard of {limit}")]
    GuardExceeded { edges: usize, limit: usize },
    #[error("orientation contains no cyclic triangle")]
    TriangleFree,
    #[error("orientation count overflowed 64 bits")]
    CountOverflow,
    #[error("target is {target_rows}x{target_cols} but graph is {rows}x{cols}")]
    DimensionMismatch {
        target_rows: usize,
        target_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}
