use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ModelError;

/// A cell `(row, col)`, both 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((row, col): (usize, usize)) -> Self {
        Vertex { row, col }
    }
}

/// A row or a column. The vertices of a line form a clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Column(j) => write!(f, "column {j}"),
        }
    }
}

/// Total order on the vertex set, used to decide which edges are inverted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub enum VertexOrdering {
    /// `(i,j) < (i',j')` iff `i < i'`, or `i = i'` and `j < j'`.
    #[default]
    Lex,
    /// `(i,j) < (i',j')` iff `i < i'`, or `i = i'` and `j > j'`.
    RowsAscColsDesc,
    /// Explicit rank per vertex, indexed row-major. Must be a permutation.
    Ranked(Arc<[usize]>),
}

impl VertexOrdering {
    /// A uniformly random relabeling of the `rows x cols` vertex set.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut ranks: Vec<usize> = (0..rows * cols).collect();
        ranks.shuffle(rng);
        VertexOrdering::Ranked(ranks.into())
    }

    fn ranks(&self, rows: usize, cols: usize) -> Result<Vec<usize>, ModelError> {
        let count = rows * cols;
        match self {
            VertexOrdering::Lex => Ok((0..count).collect()),
            VertexOrdering::RowsAscColsDesc => Ok((0..count)
                .map(|idx| (idx / cols) * cols + (cols - 1 - idx % cols))
                .collect()),
            VertexOrdering::Ranked(ranks) => {
                let mut seen = vec![false; count];
                if ranks.len() != count {
                    return Err(ModelError::InvalidRanking(count));
                }
                for &r in ranks.iter() {
                    if r >= count || seen[r] {
                        return Err(ModelError::InvalidRanking(count));
                    }
                    seen[r] = true;
                }
                Ok(ranks.to_vec())
            }
        }
    }
}

/// An edge stored with its order-smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    pub fn line(&self) -> Line {
        if self.lo.row == self.hi.row {
            Line::Row(self.lo.row)
        } else {
            Line::Column(self.lo.col)
        }
    }
}

const NO_EDGE: u32 = u32::MAX;

/// The rectangular graph of size `rows x cols` together with a vertex
/// ordering and the canonical edge list that ordering induces.
#[derive(Debug, Clone)]
pub struct RectangularGraph {
    rows: usize,
    cols: usize,
    ordering: VertexOrdering,
    ranks: Vec<usize>,
    edges: Vec<Edge>,
    lookup: Vec<u32>,
}

impl PartialEq for RectangularGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.ranks == other.ranks
    }
}

impl Eq for RectangularGraph {}

impl RectangularGraph {
    pub fn new(rows: usize, cols: usize, ordering: VertexOrdering) -> Result<Self, ModelError> {
        if rows == 0 || cols == 0 {
            return Err(ModelError::EmptyDimension { rows, cols });
        }
        let ranks = ordering.ranks(rows, cols)?;
        let count = rows * cols;
        let vertex = |idx: usize| Vertex::new(idx / cols + 1, idx % cols + 1);

        let mut pairs = Vec::with_capacity(Self::edge_count_for(rows, cols));
        for a in 0..count {
            for b in a + 1..count {
                let (va, vb) = (vertex(a), vertex(b));
                if va.row == vb.row || va.col == vb.col {
                    if ranks[a] < ranks[b] {
                        pairs.push((a, b));
                    } else {
                        pairs.push((b, a));
                    }
                }
            }
        }
        pairs.sort_by_key(|&(a, b)| (ranks[a], ranks[b]));

        let mut lookup = vec![NO_EDGE; count * count];
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                lookup[a * count + b] = e as u32;
                lookup[b * count + a] = e as u32;
                Edge {
                    lo: vertex(a),
                    hi: vertex(b),
                }
            })
            .collect();

        Ok(RectangularGraph {
            rows,
            cols,
            ordering,
            ranks,
            edges,
            lookup,
        })
    }

    pub fn shared(rows: usize, cols: usize, ordering: VertexOrdering) -> Result<Arc<Self>, ModelError> {
        Self::new(rows, cols, ordering).map(Arc::new)
    }

    /// `r·n(n−1)/2 + n·r(r−1)/2`.
    pub const fn edge_count_for(rows: usize, cols: usize) -> usize {
        rows * cols * (cols - 1) / 2 + cols * rows * (rows.saturating_sub(1)) / 2
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ordering(&self) -> &VertexOrdering {
        &self.ordering
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.rows).contains(&v.row) && (1..=self.cols).contains(&v.col)
    }

    pub fn contains_line(&self, line: Line) -> bool {
        match line {
            Line::Row(i) => (1..=self.rows).contains(&i),
            Line::Column(j) => (1..=self.cols).contains(&j),
        }
    }

    /// Row-major dense index of `v`. Panics if `v` is outside the graph.
    pub fn index(&self, v: Vertex) -> usize {
        assert!(self.contains(v), "vertex {v} outside {}x{} graph", self.rows, self.cols);
        (v.row - 1) * self.cols + (v.col - 1)
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex::new(index / self.cols + 1, index % self.cols + 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|idx| self.vertex(idx))
    }

    /// Position of `v` in the vertex ordering.
    pub fn rank(&self, v: Vertex) -> usize {
        self.ranks[self.index(v)]
    }

    pub fn compare(&self, a: Vertex, b: Vertex) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    pub fn precedes(&self, a: Vertex, b: Vertex) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// Canonical index of the edge joining `a` and `b`, if they are adjacent.
    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<usize> {
        if !self.contains(a) || !self.contains(b) {
            return None;
        }
        match self.lookup[self.index(a) * self.vertex_count() + self.index(b)] {
            NO_EDGE => None,
            e => Some(e as usize),
        }
    }

    /// Vertices of `line` in position order (by column for rows, by row for
    /// columns).
    pub fn line_vertices(&self, line: Line) -> Vec<Vertex> {
        match line {
            Line::Row(i) => (1..=self.cols).map(|j| Vertex::new(i, j)).collect(),
            Line::Column(j) => (1..=self.rows).map(|i| Vertex::new(i, j)).collect(),
        }
    }

    /// All rows followed by all columns.
    pub fn lines(&self) -> impl Iterator<Item = Line> {
        (1..=self.rows)
            .map(Line::Row)
            .chain((1..=self.cols).map(Line::Column))
    }
}

/// All adjacent pairs `(u, v)` with `u` preceding `v` under `ordering`,
/// sorted by the ordering.
pub fn canonical_edges(
    rows: usize,
    cols: usize,
    ordering: VertexOrdering,
) -> Result<Vec<(Vertex, Vertex)>, ModelError> {
    let graph = RectangularGraph::new(rows, cols, ordering)?;
    Ok(graph.edges().iter().map(|e| (e.lo, e.hi)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    #[test]
    fn single_edge() {
        let edges = canonical_edges(1, 2, VertexOrdering::Lex).unwrap();
        assert_eq!(edges, vec![(v(1, 1), v(1, 2))]);
    }

    #[test]
    fn two_by_two_has_two_row_and_two_column_edges() {
        let edges = canonical_edges(2, 2, VertexOrdering::Lex).unwrap();
        assert_eq!(
            edges,
            vec![
                (v(1, 1), v(1, 2)),
                (v(1, 1), v(2, 1)),
                (v(1, 2), v(2, 2)),
                (v(2, 1), v(2, 2)),
            ]
        );
    }

    #[test]
    fn two_by_three_count() {
        // 2·3·2/2 + 3·2·1/2
        assert_eq!(canonical_edges(2, 3, VertexOrdering::Lex).unwrap().len(), 9);
    }

    #[test]
    fn column_descending_order_puts_high_columns_first() {
        let edges = canonical_edges(1, 3, VertexOrdering::RowsAscColsDesc).unwrap();
        assert_eq!(
            edges,
            vec![(v(1, 3), v(1, 2)), (v(1, 3), v(1, 1)), (v(1, 2), v(1, 1))]
        );
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(
            RectangularGraph::new(0, 3, VertexOrdering::Lex),
            Err(ModelError::EmptyDimension { .. })
        ));
    }

    #[test]
    fn bad_ranking_rejected() {
        let ord = VertexOrdering::Ranked(vec![0, 0, 1].into());
        assert!(RectangularGraph::new(1, 3, ord).is_err());
    }

    #[test]
    fn edge_enumeration_is_complete_for_small_sizes() {
        let mut rng = rand::thread_rng();
        for rows in 1..=20 {
            for cols in 1..=20 {
                if rows * cols > 20 {
                    continue;
                }
                for ord in [
                    VertexOrdering::Lex,
                    VertexOrdering::RowsAscColsDesc,
                    VertexOrdering::random(rows, cols, &mut rng),
                ] {
                    let g = RectangularGraph::new(rows, cols, ord.clone()).unwrap();
                    let edges = g.edges();
                    assert_eq!(edges.len(), RectangularGraph::edge_count_for(rows, cols));
                    let mut seen = HashSet::new();
                    for e in edges {
                        assert_ne!(e.lo, e.hi);
                        assert!(e.lo.row == e.hi.row || e.lo.col == e.hi.col);
                        assert!(g.precedes(e.lo, e.hi));
                        assert!(seen.insert((e.lo.min(e.hi), e.lo.max(e.hi))));
                    }
                    for w in edges.windows(2) {
                        let key = |e: &Edge| (g.rank(e.lo), g.rank(e.hi));
                        assert!(key(&w[0]) < key(&w[1]));
                    }
                    let again = RectangularGraph::new(rows, cols, ord).unwrap();
                    assert_eq!(again.edges(), edges);
                }
            }
        }
    }

    #[test]
    fn lookup_matches_edge_list() {
        let g = RectangularGraph::new(3, 4, VertexOrdering::RowsAscColsDesc).unwrap();
        for (idx, e) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_between(e.lo, e.hi), Some(idx));
            assert_eq!(g.edge_between(e.hi, e.lo), Some(idx));
        }
        assert_eq!(g.edge_between(v(1, 1), v(2, 2)), None);
        assert_eq!(g.edge_between(v(1, 1), v(9, 1)), None);
    }
}
