use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{ModelError, RectangularGraph, Vertex};

/// A direction for every edge of a rectangular graph.
///
/// One bit per canonical edge; a set bit means the edge points at its
/// order-smaller endpoint (`lo <- hi`), i.e. the edge is inverted.
#[derive(Clone)]
pub struct Orientation {
    graph: Arc<RectangularGraph>,
    words: Vec<u64>,
}

impl Orientation {
    /// Every edge directed `lo -> hi`: no inverted edges.
    pub fn uninverted(graph: Arc<RectangularGraph>) -> Self {
        let words = vec![0; graph.edge_count().div_ceil(64)];
        Orientation { graph, words }
    }

    pub fn from_bits<I>(graph: Arc<RectangularGraph>, bits: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = bool>,
    {
        let mut out = Self::uninverted(graph);
        let mut count = 0;
        for (e, bit) in bits.into_iter().enumerate() {
            if e < out.edge_count() && bit {
                out.words[e / 64] |= 1 << (e % 64);
            }
            count += 1;
        }
        if count != out.edge_count() {
            return Err(ModelError::BitLength {
                expected: out.edge_count(),
                found: count,
            });
        }
        Ok(out)
    }

    /// Builds an orientation from a predicate telling whether `a -> b` for
    /// each adjacent pair, queried once per edge with `a` the smaller endpoint.
    pub fn from_fn<F>(graph: Arc<RectangularGraph>, mut points: F) -> Self
    where
        F: FnMut(Vertex, Vertex) -> bool,
    {
        let mut out = Self::uninverted(graph);
        for e in 0..out.edge_count() {
            let edge = out.graph.edges()[e];
            if !points(edge.lo, edge.hi) {
                out.words[e / 64] |= 1 << (e % 64);
            }
        }
        out
    }

    pub(crate) fn from_words(graph: Arc<RectangularGraph>, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), graph.edge_count().div_ceil(64));
        Orientation { graph, words }
    }

    pub fn graph(&self) -> &Arc<RectangularGraph> {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_inverted(&self, edge: usize) -> bool {
        assert!(edge < self.edge_count());
        self.words[edge / 64] >> (edge % 64) & 1 == 1
    }

    pub fn inverted_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.edge_count()).map(|e| self.is_inverted(e))
    }

    /// `(tail, head)` of canonical edge `edge`.
    pub fn direction(&self, edge: usize) -> (Vertex, Vertex) {
        let e = self.graph.edges()[edge];
        if self.is_inverted(edge) {
            (e.hi, e.lo)
        } else {
            (e.lo, e.hi)
        }
    }

    /// `Some(true)` if `a -> b`, `Some(false)` if `b -> a`, `None` if the two
    /// vertices are not adjacent.
    pub fn points(&self, a: Vertex, b: Vertex) -> Option<bool> {
        let e = self.graph.edge_between(a, b)?;
        Some(self.direction(e).0 == a)
    }

    pub fn reverse_edge(&mut self, edge: usize) {
        assert!(edge < self.edge_count());
        self.words[edge / 64] ^= 1 << (edge % 64);
    }

    /// Reverses the edge joining `a` and `b`. Panics if they are not adjacent.
    pub fn reverse_between(&mut self, a: Vertex, b: Vertex) {
        let e = self
            .graph
            .edge_between(a, b)
            .unwrap_or_else(|| panic!("{a} and {b} are not adjacent"));
        self.reverse_edge(e);
    }
}

impl PartialEq for Orientation {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph)
            && self.words == other.words
    }
}

impl Eq for Orientation {}

impl Hash for Orientation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.graph.rows().hash(state);
        self.graph.cols().hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = (0..self.edge_count())
            .map(|e| {
                let (t, h) = self.direction(e);
                format!("{t}->{h}")
            })
            .collect();
        f.debug_struct("Orientation")
            .field("rows", &self.graph.rows())
            .field("cols", &self.graph.cols())
            .field("arcs", &arcs)
            .finish()
    }
}
