//! The instance file: `{"r":R,"n":N,"lists":[[[...],...],...]}`, row-major,
//! with integer or string symbols (one kind per file).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ListAssignment, ModelError, Symbol};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance declares {r}x{n} but lists are {rows}x{cols}")]
    Shape {
        r: usize,
        n: usize,
        rows: usize,
        cols: usize,
    },
    #[error("instance mixes integer and string symbols")]
    MixedSymbols,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub r: usize,
    pub n: usize,
    pub lists: Vec<Vec<Vec<Symbol>>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.check()?;
        Ok(file)
    }

    fn check(&self) -> Result<(), InstanceError> {
        let rows = self.lists.len();
        let shape_err = |cols| InstanceError::Shape {
            r: self.r,
            n: self.n,
            rows,
            cols,
        };
        if rows != self.r {
            return Err(shape_err(self.lists.first().map_or(0, Vec::len)));
        }
        if let Some(row) = self.lists.iter().find(|row| row.len() != self.n) {
            return Err(shape_err(row.len()));
        }
        let mut symbols = self.lists.iter().flatten().flatten();
        if let Some(first) = symbols.next() {
            let is_int = matches!(first, Symbol::Int(_));
            if symbols.any(|s| matches!(s, Symbol::Int(_)) != is_int) {
                return Err(InstanceError::MixedSymbols);
            }
        }
        Ok(())
    }

    pub fn to_assignment(&self) -> Result<ListAssignment, InstanceError> {
        self.check()?;
        Ok(ListAssignment::new(self.lists.clone())?)
    }

    pub fn from_assignment(lists: &ListAssignment) -> Self {
        InstanceFile {
            r: lists.rows(),
            n: lists.cols(),
            lists: lists.to_external(),
        }
    }

    /// Same instance with every list sorted and deduplicated.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        for cell in out.lists.iter_mut().flatten() {
            cell.sort();
            cell.dedup();
        }
        out
    }

    /// Single-line JSON of the canonical form, keys in `r, n, lists` order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.canonical()).expect("instance serializes")
    }
}
