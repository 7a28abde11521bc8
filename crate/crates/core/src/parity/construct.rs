use crate::model::{LatinRectangle, OutDegreeTarget};

use super::ParityError;

/// The out-degree target for an `r x n` graph, `r < n`:
///
/// ```text
/// δ(i,j) = r − 2 + j   if j ≤ n − r + 1
///        = n − 1       if n − r + 1 < j ≤ n − i + 1
///        = r − 1       if j > n − i + 1
/// ```
pub fn delta_map(rows: usize, cols: usize) -> Result<OutDegreeTarget, ParityError> {
    if rows == 0 || rows >= cols {
        return Err(ParityError::RowsNotBelowCols { rows, cols });
    }
    let (r, n) = (rows, cols);
    let target = OutDegreeTarget::from_fn(r, n, |v| {
        let (i, j) = (v.row, v.col);
        if j + r <= n + 1 {
            r + j - 2
        } else if j + i <= n + 1 {
            n - 1
        } else {
            r - 1
        }
    })?;
    Ok(target)
}

/// The `r x n` circulant rectangle with entry `(i + j − 2) mod n`.
pub fn circulant(rows: usize, cols: usize) -> Result<LatinRectangle, ParityError> {
    if rows == 0 || rows > cols {
        return Err(ParityError::RowsExceedCols { rows, cols });
    }
    let entries = (1..=rows)
        .map(|i| (1..=cols).map(|j| (i + j - 2) % cols).collect())
        .collect();
    Ok(LatinRectangle::new(entries)?)
}
