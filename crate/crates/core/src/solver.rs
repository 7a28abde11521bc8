//! Partial latin rectangles drawn from per-cell lists.
//!
//! With `r < n` and every list of size at least `n`, such a rectangle always
//! exists; for squares, lists of size `n + 1` suffice by extending the
//! instance with a copy of the last column. Existence is not constructive,
//! so the solver is a complete backtracking search: most-constrained cell
//! first, seeded random value order, forward checking on the row and column
//! of every assignment.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::{ListAssignment, ModelError, Symbol};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub seed: u64,
    /// Abandon a search attempt after this many nodes.
    pub node_limit: Option<u64>,
    /// Reseeded attempts allowed after hitting `node_limit`.
    pub restarts: u32,
}

impl SolveOptions {
    pub fn seeded(seed: u64) -> Self {
        SolveOptions {
            seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub restarts: u32,
    #[serde(rename = "wall_time_us", serialize_with = "micros")]
    pub wall_time: Duration,
}

fn micros<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros() as u64)
}

/// Instance properties that void the existence guarantee.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    UndersizedList {
        row: usize,
        col: usize,
        len: usize,
        required: usize,
    },
    RowsExceedCols { rows: usize, cols: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::UndersizedList { row, col, len, required } => write!(
                f,
                "cell ({row},{col}) has {len} symbols, fewer than the {required} needed for a guaranteed solution"
            ),
            Warning::RowsExceedCols { rows, cols } => {
                write!(f, "{rows} rows exceed {cols} columns; no solution is guaranteed")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub rectangle: Vec<Vec<Symbol>>,
    pub stats: SolveStats,
    pub warnings: Vec<Warning>,
    /// For the square reduction, the full `n x (n+1)` rectangle that was
    /// solved before dropping its last column.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<Vec<Vec<Symbol>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search exhausted after {} nodes: no partial latin rectangle fits these lists", .stats.nodes)]
    Unsatisfiable { stats: SolveStats, warnings: Vec<Warning> },
    #[error("node limit reached after {} restarts", .stats.restarts)]
    NodeLimit { stats: SolveStats },
    #[error("square reduction needs rows == cols, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn regime_warnings(lists: &ListAssignment, required: usize) -> Vec<Warning> {
    let mut warnings = Vec::new();
    if lists.rows() > lists.cols() {
        warnings.push(Warning::RowsExceedCols {
            rows: lists.rows(),
            cols: lists.cols(),
        });
    }
    for i in 1..=lists.rows() {
        for j in 1..=lists.cols() {
            let len = lists.list(i, j).len();
            if len < required {
                warnings.push(Warning::UndersizedList {
                    row: i,
                    col: j,
                    len,
                    required,
                });
            }
        }
    }
    warnings
}

/// Finds an `r x n` array with distinct rows and columns and every entry
/// drawn from its cell's list.
///
/// Lists shorter than `n` (or `n + 1` for squares) produce warnings and a
/// best-effort search, which may end in [`SolveError::Unsatisfiable`].
pub fn solve_rectangle(lists: &ListAssignment, options: &SolveOptions) -> Result<SolveResult, SolveError> {
    let required = if lists.rows() < lists.cols() {
        lists.cols()
    } else {
        lists.cols() + 1
    };
    let warnings = regime_warnings(lists, required);
    let start = Instant::now();
    let mut search = Search::new(lists, options);
    let outcome = search.run();
    search.stats.wall_time = start.elapsed();
    match outcome {
        Outcome::Solved => Ok(SolveResult {
            rectangle: search.rectangle(),
            stats: search.stats,
            warnings,
            extended: None,
        }),
        Outcome::Exhausted => Err(SolveError::Unsatisfiable {
            stats: search.stats,
            warnings,
        }),
        Outcome::Limit => Err(SolveError::NodeLimit { stats: search.stats }),
    }
}

/// Copies the lists of the last column into a new column `n + 1`.
pub fn extend_with_last_column(lists: &ListAssignment) -> Result<ListAssignment, ModelError> {
    let mut external = lists.to_external();
    for row in &mut external {
        let last = row.last().expect("non-empty row").clone();
        row.push(last);
    }
    ListAssignment::new(external)
}

/// Square case with lists of size `n + 1`: solve the `n x (n+1)` instance
/// whose last column repeats column `n`, then drop that column.
pub fn solve_square_plus_one(
    lists: &ListAssignment,
    options: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let n = lists.rows();
    if lists.cols() != n {
        return Err(SolveError::NotSquare {
            rows: lists.rows(),
            cols: lists.cols(),
        });
    }
    let warnings = regime_warnings(lists, n + 1);
    let extended_lists = extend_with_last_column(lists)?;
    let mut solved = match solve_rectangle(&extended_lists, options) {
        Ok(s) => s,
        Err(SolveError::Unsatisfiable { stats, .. }) => {
            return Err(SolveError::Unsatisfiable { stats, warnings })
        }
        Err(e) => return Err(e),
    };
    let full = solved.rectangle.clone();
    for row in &mut solved.rectangle {
        row.pop();
    }
    solved.extended = Some(full);
    solved.warnings = warnings;
    Ok(solved)
}

enum Outcome {
    Solved,
    Exhausted,
    Limit,
}

/// Fixed-width bitset over interned symbol ids.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn has(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: u32) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: u32) {
        self.0[i as usize / 64] &= !(1 << (i % 64));
    }
}

struct Search<'a> {
    lists: &'a ListAssignment,
    rows: usize,
    cols: usize,
    assigned: Vec<Option<u32>>,
    row_used: Vec<Bits>,
    col_used: Vec<Bits>,
    rng: ChaCha8Rng,
    node_limit: Option<u64>,
    restarts_left: u32,
    attempt_nodes: u64,
    stats: SolveStats,
}

impl<'a> Search<'a> {
    fn new(lists: &'a ListAssignment, options: &SolveOptions) -> Self {
        let (rows, cols) = (lists.rows(), lists.cols());
        Search {
            lists,
            rows,
            cols,
            assigned: vec![None; rows * cols],
            row_used: vec![Bits::new(lists.symbol_count()); rows],
            col_used: vec![Bits::new(lists.symbol_count()); cols],
            rng: ChaCha8Rng::seed_from_u64(options.seed),
            node_limit: options.node_limit,
            restarts_left: options.restarts,
            attempt_nodes: 0,
            stats: SolveStats::default(),
        }
    }

    fn list(&self, cell: usize) -> &'a [u32] {
        self.lists.list(cell / self.cols + 1, cell % self.cols + 1)
    }

    fn allowed(&self, cell: usize, s: u32) -> bool {
        !self.row_used[cell / self.cols].has(s) && !self.col_used[cell % self.cols].has(s)
    }

    fn remaining(&self, cell: usize) -> usize {
        self.list(cell).iter().filter(|&&s| self.allowed(cell, s)).count()
    }

    fn place(&mut self, cell: usize, s: u32) {
        self.assigned[cell] = Some(s);
        self.row_used[cell / self.cols].set(s);
        self.col_used[cell % self.cols].set(s);
    }

    fn unplace(&mut self, cell: usize, s: u32) {
        self.assigned[cell] = None;
        self.row_used[cell / self.cols].clear(s);
        self.col_used[cell % self.cols].clear(s);
    }

    /// Unassigned cell with the fewest remaining candidates, lowest index on
    /// ties.
    fn most_constrained(&self) -> Option<(usize, usize)> {
        (0..self.assigned.len())
            .filter(|&c| self.assigned[c].is_none())
            .map(|c| (self.remaining(c), c))
            .min()
            .map(|(k, c)| (c, k))
    }

    /// Some unassigned cell sharing a line with `cell` has no candidate left.
    fn wipes_out_peer(&self, cell: usize) -> bool {
        let (i, j) = (cell / self.cols, cell % self.cols);
        let row_peers = (0..self.cols).map(|jj| i * self.cols + jj);
        let col_peers = (0..self.rows).map(|ii| ii * self.cols + j);
        row_peers
            .chain(col_peers)
            .filter(|&c| c != cell && self.assigned[c].is_none())
            .any(|c| self.remaining(c) == 0)
    }

    fn run(&mut self) -> Outcome {
        loop {
            match self.descend() {
                Outcome::Limit if self.restarts_left > 0 => {
                    self.restarts_left -= 1;
                    self.stats.restarts += 1;
                    self.attempt_nodes = 0;
                    for c in 0..self.assigned.len() {
                        if let Some(s) = self.assigned[c] {
                            self.unplace(c, s);
                        }
                    }
                }
                other => return other,
            }
        }
    }

    fn descend(&mut self) -> Outcome {
        let Some((cell, count)) = self.most_constrained() else {
            return Outcome::Solved;
        };
        if count == 0 {
            return Outcome::Exhausted;
        }
        let mut values: Vec<u32> = self
            .list(cell)
            .iter()
            .copied()
            .filter(|&s| self.allowed(cell, s))
            .collect();
        values.shuffle(&mut self.rng);

        for s in values {
            if self.node_limit.is_some_and(|limit| self.attempt_nodes >= limit) {
                return Outcome::Limit;
            }
            self.stats.nodes += 1;
            self.attempt_nodes += 1;
            self.place(cell, s);
            if !self.wipes_out_peer(cell) {
                match self.descend() {
                    Outcome::Exhausted => {}
                    done => return done,
                }
            }
            self.unplace(cell, s);
            self.stats.backtracks += 1;
        }
        Outcome::Exhausted
    }

    fn rectangle(&self) -> Vec<Vec<Symbol>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let s = self.assigned[i * self.cols + j].expect("complete assignment");
                        self.lists.symbol(s).clone()
                    })
                    .collect()
            })
            .collect()
    }
}

/// One reason a candidate fails to fit a list assignment. Indices are
/// 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionViolation {
    RowRepeat { row: usize, symbol: Symbol },
    ColumnRepeat { col: usize, symbol: Symbol },
    NotInList { row: usize, col: usize, symbol: Symbol },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionViolation::RowRepeat { row, symbol } => write!(f, "{symbol} repeated in row {row}"),
            SolutionViolation::ColumnRepeat { col, symbol } => {
                write!(f, "{symbol} repeated in column {col}")
            }
            SolutionViolation::NotInList { row, col, symbol } => {
                write!(f, "{symbol} at ({row},{col}) is not in that cell's list")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub violations: Vec<SolutionViolation>,
}

impl SolutionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn repeats<'s>(values: impl Iterator<Item = &'s Symbol>) -> Vec<Symbol> {
    let mut seen: Vec<&Symbol> = Vec::new();
    let mut dup: Vec<Symbol> = Vec::new();
    for s in values {
        if seen.contains(&s) {
            if !dup.contains(s) {
                dup.push(s.clone());
            }
        } else {
            seen.push(s);
        }
    }
    dup
}

/// Checks row and column distinctness and list membership of every entry.
pub fn validate_solution(
    rectangle: &[Vec<Symbol>],
    lists: &ListAssignment,
) -> Result<SolutionReport, ModelError> {
    let (r, n) = crate::model::latin_shape(rectangle)?;
    if (r, n) != (lists.rows(), lists.cols()) {
        return Err(ModelError::DimensionMismatch {
            expected_rows: lists.rows(),
            expected_cols: lists.cols(),
            rows: r,
            cols: n,
        });
    }
    let mut violations = Vec::new();
    for (i, row) in rectangle.iter().enumerate() {
        for (j, symbol) in row.iter().enumerate() {
            if !lists.contains(i + 1, j + 1, symbol) {
                violations.push(SolutionViolation::NotInList {
                    row: i + 1,
                    col: j + 1,
                    symbol: symbol.clone(),
                });
            }
        }
    }
    for (i, row) in rectangle.iter().enumerate() {
        for symbol in repeats(row.iter()) {
            violations.push(SolutionViolation::RowRepeat { row: i + 1, symbol });
        }
    }
    for j in 0..n {
        for symbol in repeats(rectangle.iter().map(|row| &row[j])) {
            violations.push(SolutionViolation::ColumnRepeat { col: j + 1, symbol });
        }
    }
    Ok(SolutionReport { violations })
}
