use super::{ModelError, Vertex};

/// Required out-degree per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutDegreeTarget {
    rows: usize,
    cols: usize,
    values: Vec<usize>,
}

impl OutDegreeTarget {
    /// Builds a target from row-major values. Each value must be below the
    /// vertex degree plus one (`rows + cols - 1`).
    pub fn new(values: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let rows = values.len();
        let cols = values.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(ModelError::EmptyDimension { rows, cols });
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != cols {
                return Err(ModelError::Ragged {
                    row: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        let degree = rows + cols - 2;
        for (i, row) in values.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value > degree {
                    return Err(ModelError::DegreeTooLarge {
                        row: i + 1,
                        col: j + 1,
                        value,
                        degree,
                    });
                }
            }
        }
        Ok(OutDegreeTarget {
            rows,
            cols,
            values: values.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Result<Self, ModelError>
    where
        F: FnMut(Vertex) -> usize,
    {
        let values = (1..=rows)
            .map(|i| (1..=cols).map(|j| f(Vertex::new(i, j))).collect())
            .collect();
        Self::new(values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, v: Vertex) -> usize {
        self.values[(v.row - 1) * self.cols + (v.col - 1)]
    }

    /// Row-major values.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.values.chunks(self.cols).map(<[usize]>::to_vec).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_value_above_degree() {
        // 1x3: degree 2
        assert!(OutDegreeTarget::new(vec![vec![0, 1, 2]]).is_ok());
        assert!(matches!(
            OutDegreeTarget::new(vec![vec![0, 3, 0]]),
            Err(ModelError::DegreeTooLarge { col: 2, .. })
        ));
    }

    #[test]
    fn rejects_ragged() {
        assert!(matches!(
            OutDegreeTarget::new(vec![vec![0, 1], vec![1]]),
            Err(ModelError::Ragged { row: 2, .. })
        ));
    }

    #[test]
    fn zero_is_a_permitted_value() {
        let t = OutDegreeTarget::new(vec![vec![0]]).unwrap();
        assert_eq!(t.get(Vertex::new(1, 1)), 0);
        assert_eq!(t.sum(), 0);
    }
}
