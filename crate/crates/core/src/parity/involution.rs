use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::model::{Line, Orientation, OutDegreeTarget, RectangularGraph, Vertex, VertexOrdering};
use crate::ops::{degree_profile, has_cyclic_triangle, line_out_degrees, parity, Parity};

use super::census::{for_each_realization, SizeGuard};
use super::{delta_map, ParityError};

/// The least pair of same-line vertices sharing a line out-degree. `v`
/// precedes `w` in the graph's vertex ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pivot {
    pub v: Vertex,
    pub w: Vertex,
    pub line: Line,
}

/// What one application of [`involution_phi`] did.
///
/// `tail -> head` is the pivot edge before the flip (the pivot pair in
/// edge-direction order). The four sets partition the rest of the pivot
/// line by the directions of their edges to `tail` and `head`:
/// `v_oo`: `tail -> u <- head`, `v_oi`: `tail -> u -> head`,
/// `v_io`: `tail <- u <- head`, `v_ii`: `tail <- u -> head`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionTrace {
    pub pivot: Pivot,
    pub tail: Vertex,
    pub head: Vertex,
    pub v_oo: Vec<Vertex>,
    pub v_oi: Vec<Vertex>,
    pub v_io: Vec<Vertex>,
    pub v_ii: Vec<Vertex>,
    pub flipped: usize,
}

impl InvolutionTrace {
    /// `v_oi ∪ v_io`, sorted.
    pub fn moved(&self) -> BTreeSet<Vertex> {
        self.v_oi.iter().chain(&self.v_io).copied().collect()
    }
}

/// Finds the pivot pair: over all lines, pairs `(v, w)` with `v` before `w`
/// and equal out-degree inside their line, compared lexicographically by
/// vertex rank. Rows and columns compete in one pool.
pub fn pivot_pair(d: &Orientation) -> Option<Pivot> {
    let g = d.graph();
    let mut best: Option<((usize, usize), Pivot)> = None;
    for line in g.lines() {
        let verts = g.line_vertices(line);
        let degs = line_out_degrees(d, line).expect("line of own graph");
        for p in 0..verts.len() {
            for q in p + 1..verts.len() {
                if degs[p] != degs[q] {
                    continue;
                }
                let (v, w) = if g.precedes(verts[p], verts[q]) {
                    (verts[p], verts[q])
                } else {
                    (verts[q], verts[p])
                };
                let key = (g.rank(v), g.rank(w));
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, Pivot { v, w, line }));
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// The parity-flipping involution on orientations that contain a cyclic
/// triangle.
///
/// With the pivot edge `tail -> head`, reverses that edge and both edges from
/// `tail` and `head` to every vertex of `v_oi ∪ v_io`. Every out-degree is
/// kept, `2|v_oi ∪ v_io| + 1` edges flip, and the pivot pair is unchanged.
pub fn involution_phi(d: &Orientation) -> Result<(Orientation, InvolutionTrace), ParityError> {
    let pivot = pivot_pair(d).ok_or(ParityError::TriangleFree)?;
    let g = d.graph();
    let (tail, head) = if d.points(pivot.v, pivot.w) == Some(true) {
        (pivot.v, pivot.w)
    } else {
        (pivot.w, pivot.v)
    };

    let (mut v_oo, mut v_oi, mut v_io, mut v_ii) = (vec![], vec![], vec![], vec![]);
    for u in g.line_vertices(pivot.line) {
        if u == tail || u == head {
            continue;
        }
        let from_tail = d.points(tail, u) == Some(true);
        let to_head = d.points(u, head) == Some(true);
        match (from_tail, to_head) {
            (true, false) => v_oo.push(u),
            (true, true) => v_oi.push(u),
            (false, false) => v_io.push(u),
            (false, true) => v_ii.push(u),
        }
    }

    let mut image = d.clone();
    image.reverse_between(tail, head);
    for &u in v_oi.iter().chain(&v_io) {
        image.reverse_between(tail, u);
        image.reverse_between(head, u);
    }
    let flipped = 2 * (v_oi.len() + v_io.len()) + 1;

    Ok((
        image,
        InvolutionTrace {
            pivot,
            tail,
            head,
            v_oo,
            v_oi,
            v_io,
            v_ii,
            flipped,
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
}

/// Outcome of running the involution over every triangle-containing
/// realization of the standard target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub rows: usize,
    pub cols: usize,
    pub realizations: u64,
    pub triangle_containing: u64,
    pub even: u64,
    pub odd: u64,
    pub checks: Vec<CheckTally>,
}

impl InvolutionReport {
    pub fn all_passed(&self) -> bool {
        self.even == self.odd && self.checks.iter().all(|c| c.failed == 0)
    }
}

const CHECKS: [&str; 9] = [
    "self_inverse",
    "parity_flips",
    "degrees_preserved",
    "triangle_retained",
    "pivot_stable",
    "moved_set_stable",
    "flip_count_odd",
    "flip_count_formula",
    "io_exceeds_oi_by_one",
];

/// Applies the involution to every triangle-containing realization of
/// `delta_map(rows, cols)` and tallies each property.
pub fn involution_selfcheck(
    rows: usize,
    cols: usize,
    ordering: &VertexOrdering,
    guard: SizeGuard,
) -> Result<InvolutionReport, ParityError> {
    let target = delta_map(rows, cols)?;
    let graph = RectangularGraph::shared(rows, cols, ordering.clone())?;
    involution_check(&graph, &target, guard)
}

/// [`involution_selfcheck`] for an arbitrary target.
pub fn involution_check(
    graph: &Arc<RectangularGraph>,
    target: &OutDegreeTarget,
    guard: SizeGuard,
) -> Result<InvolutionReport, ParityError> {
    let (rows, cols) = (graph.rows(), graph.cols());
    let mut tallies: Vec<CheckTally> = CHECKS
        .iter()
        .map(|&name| CheckTally {
            name,
            passed: 0,
            failed: 0,
        })
        .collect();
    let mut report = InvolutionReport {
        rows,
        cols,
        realizations: 0,
        triangle_containing: 0,
        even: 0,
        odd: 0,
        checks: Vec::new(),
    };
    let mut failure: Option<ParityError> = None;

    for_each_realization(graph, target, guard, |d| {
        report.realizations += 1;
        if has_cyclic_triangle(&d).is_none() {
            return;
        }
        report.triangle_containing += 1;
        match parity(&d) {
            Parity::Even => report.even += 1,
            Parity::Odd => report.odd += 1,
        }
        let outcome = (|| -> Result<[bool; 9], ParityError> {
            let (image, trace) = involution_phi(&d)?;
            let (back, back_trace) = involution_phi(&image)?;
            let moved = trace.moved();
            Ok([
                back == d,
                parity(&image) != parity(&d),
                degree_profile(&image).total_rows() == target.to_rows(),
                has_cyclic_triangle(&image).is_some(),
                back_trace.pivot == trace.pivot,
                back_trace.moved() == moved,
                trace.flipped % 2 == 1,
                trace.flipped == 2 * moved.len() + 1
                    && image.bits().zip(d.bits()).filter(|(x, y)| x != y).count() == trace.flipped,
                trace.v_io.len() == trace.v_oi.len() + 1,
            ])
        })();
        match outcome {
            Ok(results) => {
                for (tally, ok) in tallies.iter_mut().zip(results) {
                    if ok {
                        tally.passed += 1;
                    } else {
                        tally.failed += 1;
                    }
                }
            }
            Err(e) => failure = Some(e),
        }
    })?;

    if let Some(e) = failure {
        return Err(e);
    }
    report.checks = tallies;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    fn row3() -> Arc<RectangularGraph> {
        RectangularGraph::shared(1, 3, VertexOrdering::Lex).unwrap()
    }

    /// Builds a 1x3 orientation from a list of arcs.
    fn with_arcs(arcs: &[(Vertex, Vertex)]) -> Orientation {
        Orientation::from_fn(row3(), |a, b| arcs.contains(&(a, b)))
    }

    #[test]
    fn three_cycle_maps_to_reverse_cycle() {
        let cycle = with_arcs(&[(v(1, 1), v(1, 2)), (v(1, 2), v(1, 3)), (v(1, 3), v(1, 1))]);
        let reverse = with_arcs(&[(v(1, 1), v(1, 3)), (v(1, 3), v(1, 2)), (v(1, 2), v(1, 1))]);
        let (image, trace) = involution_phi(&cycle).unwrap();
        assert_eq!(image, reverse);
        assert_eq!(trace.pivot, Pivot { v: v(1, 1), w: v(1, 2), line: Line::Row(1) });
        assert_eq!(trace.v_io, vec![v(1, 3)]);
        assert!(trace.v_oi.is_empty() && trace.v_oo.is_empty() && trace.v_ii.is_empty());
        assert_eq!(trace.flipped, 3);

        let (again, back) = involution_phi(&reverse).unwrap();
        assert_eq!(again, cycle);
        // pivot edge now runs (1,2) -> (1,1)
        assert_eq!((back.tail, back.head), (v(1, 2), v(1, 1)));
    }

    #[test]
    fn transitive_tournament_is_rejected() {
        let d = with_arcs(&[(v(1, 3), v(1, 2)), (v(1, 3), v(1, 1)), (v(1, 2), v(1, 1))]);
        assert_eq!(involution_phi(&d).unwrap_err(), ParityError::TriangleFree);
    }

    #[test]
    fn pivot_uses_vertex_order_across_lines() {
        // Every edge lo -> hi: every line is transitive, so there is no pivot.
        let g = RectangularGraph::shared(2, 3, VertexOrdering::Lex).unwrap();
        assert!(pivot_pair(&Orientation::uninverted(g)).is_none());

        let g = RectangularGraph::shared(3, 3, VertexOrdering::RowsAscColsDesc).unwrap();
        let d = Orientation::from_fn(g.clone(), |a, b| !(a.row == b.row && a.col == 3 && b.col == 1));
        // Row 1 under this ordering: (1,3)->(1,2), (1,2)->(1,1), (1,1)->(1,3): a cycle.
        let p = pivot_pair(&d).unwrap();
        assert_eq!(p.line, Line::Row(1));
        assert_eq!((p.v, p.w), (v(1, 3), v(1, 2)));
        assert!(g.precedes(p.v, p.w));
    }

    #[test]
    fn selfcheck_on_small_sizes() {
        for (r, n) in [(1, 3), (1, 4), (2, 3)] {
            for ordering in [VertexOrdering::Lex, VertexOrdering::RowsAscColsDesc] {
                let report = involution_selfcheck(r, n, &ordering, SizeGuard::default()).unwrap();
                assert!(report.all_passed(), "{r}x{n}: {report:?}");
                assert_eq!(report.realizations, report.triangle_containing + 1);
            }
        }
    }
}
