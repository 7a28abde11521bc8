//! Per-orientation computations.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::model::{LatinRectangle, Line, Orientation, RectangularGraph, Vertex, VertexOrdering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpsError {
    #[error("{line} is outside the {rows}x{cols} graph")]
    LineOutOfRange { line: Line, rows: usize, cols: usize },
    #[error("rectangle is {rect_rows}x{rect_cols} but graph is {rows}x{cols}")]
    DimensionMismatch {
        rect_rows: usize,
        rect_cols: usize,
        rows: usize,
        cols: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

pub fn parity(d: &Orientation) -> Parity {
    Parity::of(d.inverted_count())
}

/// Total and horizontal (same-row) out-degree of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    rows: usize,
    cols: usize,
    total: Vec<usize>,
    horizontal: Vec<usize>,
}

impl DegreeProfile {
    fn at(&self, v: Vertex) -> usize {
        (v.row - 1) * self.cols + (v.col - 1)
    }

    pub fn total(&self, v: Vertex) -> usize {
        self.total[self.at(v)]
    }

    pub fn horizontal(&self, v: Vertex) -> usize {
        self.horizontal[self.at(v)]
    }

    pub fn total_rows(&self) -> Vec<Vec<usize>> {
        self.total.chunks(self.cols).map(<[usize]>::to_vec).collect()
    }

    pub fn horizontal_rows(&self) -> Vec<Vec<usize>> {
        self.horizontal.chunks(self.cols).map(<[usize]>::to_vec).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

pub fn degree_profile(d: &Orientation) -> DegreeProfile {
    let g = d.graph();
    let mut total = vec![0; g.vertex_count()];
    let mut horizontal = vec![0; g.vertex_count()];
    for e in 0..d.edge_count() {
        let (tail, head) = d.direction(e);
        let t = g.index(tail);
        total[t] += 1;
        if tail.row == head.row {
            horizontal[t] += 1;
        }
    }
    DegreeProfile {
        rows: g.rows(),
        cols: g.cols(),
        total,
        horizontal,
    }
}

/// Out-degree of each vertex of `line` inside the line's clique, in
/// position order.
pub fn line_out_degrees(d: &Orientation, line: Line) -> Result<Vec<usize>, OpsError> {
    let g = d.graph();
    if !g.contains_line(line) {
        return Err(OpsError::LineOutOfRange {
            line,
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    Ok(line_degrees(d, &g.line_vertices(line)))
}

fn line_degrees(d: &Orientation, verts: &[Vertex]) -> Vec<usize> {
    let mut degs = vec![0; verts.len()];
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            if d.points(verts[a], verts[b]).expect("line vertices are adjacent") {
                degs[a] += 1;
            } else {
                degs[b] += 1;
            }
        }
    }
    degs
}

/// The matrix of horizontal out-degrees. Defined for any orientation; it is
/// a latin rectangle only for orientations that come from one.
pub fn associated_matrix(d: &Orientation) -> Vec<Vec<usize>> {
    degree_profile(d).horizontal_rows()
}

/// Orientation induced by a latin rectangle under the lexicographic order:
/// within a row the larger entry points at the smaller one, within a column
/// the smaller entry points at the larger one.
pub fn associated_orientation(l: &LatinRectangle) -> Orientation {
    let graph = RectangularGraph::shared(l.rows(), l.cols(), VertexOrdering::Lex)
        .expect("latin rectangles have positive dimensions");
    associated_orientation_on(l, graph).expect("dimensions agree")
}

/// [`associated_orientation`] on a caller-supplied graph, so the result
/// carries that graph's ordering.
pub fn associated_orientation_on(
    l: &LatinRectangle,
    graph: Arc<RectangularGraph>,
) -> Result<Orientation, OpsError> {
    if graph.rows() != l.rows() || graph.cols() != l.cols() {
        return Err(OpsError::DimensionMismatch {
            rect_rows: l.rows(),
            rect_cols: l.cols(),
            rows: graph.rows(),
            cols: graph.cols(),
        });
    }
    Ok(Orientation::from_fn(graph, |a, b| {
        let (x, y) = (l.get(a.row, a.col), l.get(b.row, b.col));
        if a.row == b.row {
            x > y
        } else {
            x < y
        }
    }))
}

/// A directed 3-cycle `cycle[0] -> cycle[1] -> cycle[2] -> cycle[0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub line: Line,
    pub cycle: [Vertex; 3],
}

/// First pair of positions `(p, q)`, `p < q`, with equal degree.
pub(crate) fn first_duplicate(degs: &[usize]) -> Option<(usize, usize)> {
    (0..degs.len())
        .flat_map(|p| (p + 1..degs.len()).map(move |q| (p, q)))
        .find(|&(p, q)| degs[p] == degs[q])
}

/// Finds a cyclic triangle if one exists.
///
/// Cyclic triangles only live inside a line, and a line's tournament has one
/// exactly when two of its vertices share an out-degree. For the first such
/// line and the first such pair, orient the pair as `u -> v`; then `u` has
/// more in-neighbours plus `v` more out-neighbours than there are other
/// vertices, so some `w` has `w -> u` and `v -> w`.
pub fn has_cyclic_triangle(d: &Orientation) -> Option<Triangle> {
    let g = d.graph();
    for line in g.lines() {
        let verts = g.line_vertices(line);
        let degs = line_degrees(d, &verts);
        let Some((p, q)) = first_duplicate(&degs) else {
            continue;
        };
        let (u, v) = if d.points(verts[p], verts[q]) == Some(true) {
            (verts[p], verts[q])
        } else {
            (verts[q], verts[p])
        };
        let w = verts
            .iter()
            .copied()
            .find(|&w| w != u && w != v && d.points(w, u) == Some(true) && d.points(v, w) == Some(true))
            .expect("a duplicated out-degree forces a cyclic triangle");
        return Some(Triangle {
            line,
            cycle: [u, v, w],
        });
    }
    None
}
