use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// An external symbol: an integer or a string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    Int(i64),
    Str(String),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(x) => write!(f, "{x}"),
            Symbol::Str(s) => write!(f, "{s:?}"),
        }
    }
}

impl From<i64> for Symbol {
    fn from(x: i64) -> Self {
        Symbol::Int(x)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::Str(s.to_owned())
    }
}

/// Per-cell symbol lists for an `r x n` array.
///
/// Symbols are interned: internal ids are dense `0..symbol_count()` and
/// follow the sorted order of the distinct external symbols. Each list is
/// stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    rows: usize,
    cols: usize,
    lists: Vec<Vec<u32>>,
    table: Vec<Symbol>,
}

impl ListAssignment {
    /// `lists[i][j]` is the list for cell `(i+1, j+1)`.
    pub fn new(lists: Vec<Vec<Vec<Symbol>>>) -> Result<Self, ModelError> {
        let (rows, cols) = super::latin::check_rectangular(&lists)?;
        for (i, row) in lists.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if cell.is_empty() {
                    return Err(ModelError::EmptyList { row: i + 1, col: j + 1 });
                }
            }
        }
        let mut table: Vec<Symbol> = lists.iter().flatten().flatten().cloned().collect();
        table.sort();
        table.dedup();
        let interned = lists
            .iter()
            .flatten()
            .map(|cell| {
                let mut ids: Vec<u32> = cell
                    .iter()
                    .map(|s| table.binary_search(s).expect("interned") as u32)
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();
        Ok(ListAssignment {
            rows,
            cols,
            lists: interned,
            table,
        })
    }

    /// Integer lists, convenient for tests and generators.
    pub fn from_ints(lists: Vec<Vec<Vec<i64>>>) -> Result<Self, ModelError> {
        Self::new(
            lists
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|cell| cell.into_iter().map(Symbol::Int).collect())
                        .collect()
                })
                .collect(),
        )
    }

    /// Every cell gets the same list.
    pub fn uniform(rows: usize, cols: usize, list: &[Symbol]) -> Result<Self, ModelError> {
        Self::new(vec![vec![list.to_vec(); cols]; rows])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn symbol_count(&self) -> usize {
        self.table.len()
    }

    /// Interned list of the 1-indexed cell `(row, col)`.
    pub fn list(&self, row: usize, col: usize) -> &[u32] {
        &self.lists[(row - 1) * self.cols + (col - 1)]
    }

    pub fn symbol(&self, id: u32) -> &Symbol {
        &self.table[id as usize]
    }

    pub fn id_of(&self, symbol: &Symbol) -> Option<u32> {
        self.table.binary_search(symbol).ok().map(|i| i as u32)
    }

    pub fn contains(&self, row: usize, col: usize, symbol: &Symbol) -> bool {
        self.id_of(symbol)
            .is_some_and(|id| self.list(row, col).binary_search(&id).is_ok())
    }

    pub fn min_list_len(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// External lists, each sorted and deduplicated.
    pub fn to_external(&self) -> Vec<Vec<Vec<Symbol>>> {
        self.lists
            .chunks(self.cols)
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|&id| self.symbol(id).clone()).collect())
                    .collect()
            })
            .collect()
    }
}
