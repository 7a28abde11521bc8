use std::fmt;

use serde::Serialize;

use super::ModelError;

/// One reason a candidate array fails to be a latin rectangle. Indices are
/// 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatinViolation {
    RowRepeat { row: usize, symbol: i64 },
    ColumnRepeat { col: usize, symbol: i64 },
    OutOfRange { row: usize, col: usize, value: i64 },
}

impl fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinViolation::RowRepeat { row, symbol } => {
                write!(f, "symbol {symbol} repeated in row {row}")
            }
            LatinViolation::ColumnRepeat { col, symbol } => {
                write!(f, "symbol {symbol} repeated in column {col}")
            }
            LatinViolation::OutOfRange { row, col, value } => {
                write!(f, "entry {value} at ({row},{col}) outside 0..n")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatinReport {
    pub violations: Vec<LatinViolation>,
}

impl LatinReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub(crate) fn check_rectangular<T>(rows: &[Vec<T>]) -> Result<(usize, usize), ModelError> {
    let r = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if r == 0 || n == 0 {
        return Err(ModelError::EmptyDimension { rows: r, cols: n });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ModelError::Ragged {
                row: i + 1,
                expected: n,
                found: row.len(),
            });
        }
    }
    Ok((r, n))
}

/// Checks that `rows` is an `r x n` array over `0..n` with no repeat in any
/// row or column, reporting every violation. A ragged or empty array is a
/// structural error.
pub fn validate_latin_rectangle(rows: &[Vec<i64>]) -> Result<LatinReport, ModelError> {
    let (_, n) = check_rectangular(rows)?;
    let mut violations = Vec::new();

    for (i, row) in rows.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            if value < 0 || value >= n as i64 {
                violations.push(LatinViolation::OutOfRange {
                    row: i + 1,
                    col: j + 1,
                    value,
                });
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        for symbol in repeated(row.iter().copied()) {
            violations.push(LatinViolation::RowRepeat { row: i + 1, symbol });
        }
    }
    for j in 0..n {
        for symbol in repeated(rows.iter().map(|row| row[j])) {
            violations.push(LatinViolation::ColumnRepeat { col: j + 1, symbol });
        }
    }
    Ok(LatinReport { violations })
}

/// Symbols occurring more than once, each reported once, in order of first
/// repetition.
fn repeated(values: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut seen = Vec::new();
    let mut dup = Vec::new();
    for v in values {
        if seen.contains(&v) {
            if !dup.contains(&v) {
                dup.push(v);
            }
        } else {
            seen.push(v);
        }
    }
    dup
}

/// An `r x n` array over `0..n` with distinct entries in every row and
/// column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl LatinRectangle {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let signed: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| x as i64).collect())
            .collect();
        let report = validate_latin_rectangle(&signed)?;
        if !report.is_valid() {
            return Err(ModelError::NotLatin(report.violations));
        }
        let (r, n) = (rows.len(), rows[0].len());
        Ok(LatinRectangle {
            rows: r,
            cols: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-indexed `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> usize {
        assert!((1..=self.rows).contains(&row) && (1..=self.cols).contains(&col));
        self.entries[(row - 1) * self.cols + (col - 1)]
    }

    pub fn row(&self, row: usize) -> &[usize] {
        &self.entries[(row - 1) * self.cols..row * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.cols).map(<[usize]>::to_vec).collect()
    }
}
