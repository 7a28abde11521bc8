use std::sync::Arc;

use rayon::prelude::*;

use crate::model::{Orientation, OutDegreeTarget, RectangularGraph, VertexOrdering};

use super::ParityError;

pub const DEFAULT_MAX_EDGES: usize = 36;

/// Refuses enumeration on graphs with more than `max_edges` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_edges: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl SizeGuard {
    pub fn new(max_edges: usize) -> Self {
        SizeGuard { max_edges }
    }

    pub fn unlimited() -> Self {
        SizeGuard {
            max_edges: usize::MAX,
        }
    }

    pub fn check(&self, edges: usize) -> Result<(), ParityError> {
        if edges > self.max_edges {
            Err(ParityError::GuardExceeded {
                edges,
                limit: self.max_edges,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    pub guard: SizeGuard,
    /// Worker threads for counting. `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            guard: SizeGuard::default(),
            jobs: 1,
        }
    }
}

/// Even and odd orientation counts for one out-degree target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCensus {
    pub de: u64,
    pub do_: u64,
    pub ordering: VertexOrdering,
}

impl ParityCensus {
    /// `de − do_`.
    pub fn gap(&self) -> i128 {
        self.de as i128 - self.do_ as i128
    }

    pub fn total(&self) -> u64 {
        self.de + self.do_
    }
}

/// A census split by whether the orientation contains a cyclic triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusBreakdown {
    pub all: ParityCensus,
    pub triangle_free: ParityCensus,
    pub with_triangle: ParityCensus,
}

/// Even/odd counts of orientations realizing `target`, with vertices
/// ordered by `ordering`.
pub fn parity_census(
    target: &OutDegreeTarget,
    ordering: &VertexOrdering,
    options: &CensusOptions,
) -> Result<ParityCensus, ParityError> {
    let graph = RectangularGraph::shared(target.rows(), target.cols(), ordering.clone())?;
    parity_census_on(&graph, target, options)
}

pub fn parity_census_on(
    graph: &Arc<RectangularGraph>,
    target: &OutDegreeTarget,
    options: &CensusOptions,
) -> Result<ParityCensus, ParityError> {
    census_breakdown(graph, target, options).map(|b| b.all)
}

pub fn census_breakdown(
    graph: &Arc<RectangularGraph>,
    target: &OutDegreeTarget,
    options: &CensusOptions,
) -> Result<CensusBreakdown, ParityError> {
    let plan = Plan::new(graph, target, options.guard)?;
    let tally = if options.jobs <= 1 {
        let mut sink = Tally::default();
        if plan.feasible() {
            plan.search(&mut plan.initial_state(), 0, &mut sink)?;
        }
        sink
    } else {
        plan.parallel_tally(options.jobs)?
    };
    let census = |de, do_| ParityCensus {
        de,
        do_,
        ordering: graph.ordering().clone(),
    };
    let overflow = |x: Option<u64>| x.ok_or(ParityError::CountOverflow);
    Ok(CensusBreakdown {
        all: census(
            overflow(tally.free_even.checked_add(tally.tri_even))?,
            overflow(tally.free_odd.checked_add(tally.tri_odd))?,
        ),
        triangle_free: census(tally.free_even, tally.free_odd),
        with_triangle: census(tally.tri_even, tally.tri_odd),
    })
}

/// Calls `visit` on every orientation realizing `target`.
pub fn for_each_realization<F>(
    graph: &Arc<RectangularGraph>,
    target: &OutDegreeTarget,
    guard: SizeGuard,
    visit: F,
) -> Result<(), ParityError>
where
    F: FnMut(Orientation),
{
    let plan = Plan::new(graph, target, guard)?;
    let mut sink = Visitor {
        graph: graph.clone(),
        visit,
    };
    if plan.feasible() {
        plan.search(&mut plan.initial_state(), 0, &mut sink)?;
    }
    Ok(())
}

/// Every realization of `target` without a cyclic triangle, in enumeration
/// order.
pub fn triangle_free_realizations(
    target: &OutDegreeTarget,
    ordering: &VertexOrdering,
    options: &CensusOptions,
) -> Result<Vec<Orientation>, ParityError> {
    let graph = RectangularGraph::shared(target.rows(), target.cols(), ordering.clone())?;
    let plan = Plan::new(&graph, target, options.guard)?;
    let mut sink = FreeCollector {
        graph: graph.clone(),
        found: Vec::new(),
    };
    if plan.feasible() {
        plan.search(&mut plan.initial_state(), 0, &mut sink)?;
    }
    Ok(sink.found)
}

/// One edge decision. `a` precedes `b` in dense (row-major) index order.
#[derive(Debug, Clone, Copy)]
struct Step {
    edge: usize,
    a: usize,
    b: usize,
    /// `a -> b` makes this edge inverted under the graph's ordering.
    a_to_b_inverted: bool,
    /// Flat slots of `a` and `b` in the per-line degree table.
    slot_a: usize,
    slot_b: usize,
}

/// The search skeleton for one graph and target.
///
/// Edges are decided vertex by vertex in row-major order, so a vertex is
/// complete as soon as its own turn ends; within a vertex, row edges come
/// before its column edges. A branch survives only while every vertex can
/// still land exactly on its target.
struct Plan {
    steps: Vec<Step>,
    target: Vec<usize>,
    degree: Vec<usize>,
    /// `(start, len)` of each line in the slot table.
    lines: Vec<(usize, usize)>,
    slots: usize,
    words: usize,
    sum_matches: bool,
}

#[derive(Clone)]
struct State {
    out: Vec<usize>,
    remaining: Vec<usize>,
    line_deg: Vec<usize>,
    words: Vec<u64>,
    odd: bool,
    stamp: u64,
    seen: Vec<u64>,
}

trait Sink {
    fn leaf(&mut self, plan: &Plan, state: &mut State) -> Result<(), ParityError>;
}

#[derive(Default, Clone, Copy)]
struct Tally {
    free_even: u64,
    free_odd: u64,
    tri_even: u64,
    tri_odd: u64,
}

impl Tally {
    fn merge(self, other: Tally) -> Result<Tally, ParityError> {
        let add = |x: u64, y: u64| x.checked_add(y).ok_or(ParityError::CountOverflow);
        Ok(Tally {
            free_even: add(self.free_even, other.free_even)?,
            free_odd: add(self.free_odd, other.free_odd)?,
            tri_even: add(self.tri_even, other.tri_even)?,
            tri_odd: add(self.tri_odd, other.tri_odd)?,
        })
    }
}

impl Sink for Tally {
    fn leaf(&mut self, plan: &Plan, state: &mut State) -> Result<(), ParityError> {
        let counter = match (plan.triangle_free(state), state.odd) {
            (true, false) => &mut self.free_even,
            (true, true) => &mut self.free_odd,
            (false, false) => &mut self.tri_even,
            (false, true) => &mut self.tri_odd,
        };
        *counter = counter.checked_add(1).ok_or(ParityError::CountOverflow)?;
        Ok(())
    }
}

struct Visitor<F> {
    graph: Arc<RectangularGraph>,
    visit: F,
}

impl<F: FnMut(Orientation)> Sink for Visitor<F> {
    fn leaf(&mut self, _plan: &Plan, state: &mut State) -> Result<(), ParityError> {
        (self.visit)(Orientation::from_words(self.graph.clone(), state.words.clone()));
        Ok(())
    }
}

struct FreeCollector {
    graph: Arc<RectangularGraph>,
    found: Vec<Orientation>,
}

impl Sink for FreeCollector {
    fn leaf(&mut self, plan: &Plan, state: &mut State) -> Result<(), ParityError> {
        if plan.triangle_free(state) {
            self.found
                .push(Orientation::from_words(self.graph.clone(), state.words.clone()));
        }
        Ok(())
    }
}

/// Partial search states below which work is handed to workers.
struct Frontier(Vec<State>);

impl Sink for Frontier {
    fn leaf(&mut self, _plan: &Plan, state: &mut State) -> Result<(), ParityError> {
        self.0.push(state.clone());
        Ok(())
    }
}

impl Plan {
    fn new(
        graph: &Arc<RectangularGraph>,
        target: &OutDegreeTarget,
        guard: SizeGuard,
    ) -> Result<Self, ParityError> {
        let (r, n) = (graph.rows(), graph.cols());
        if target.rows() != r || target.cols() != n {
            return Err(ParityError::DimensionMismatch {
                target_rows: target.rows(),
                target_cols: target.cols(),
                rows: r,
                cols: n,
            });
        }
        guard.check(graph.edge_count())?;

        // Rows occupy slots 0..r*n, columns r*n..2*r*n.
        let row_slot = |idx: usize| idx;
        let col_slot = |idx: usize| r * n + (idx % n) * r + idx / n;
        let mut lines: Vec<(usize, usize)> = (0..r).map(|i| (i * n, n)).collect();
        lines.extend((0..n).map(|j| (r * n + j * r, r)));

        let mut steps = Vec::with_capacity(graph.edge_count());
        for a in 0..r * n {
            let (ia, ja) = (a / n, a % n);
            let row_nbrs = (ja + 1..n).map(|j| ia * n + j);
            let col_nbrs = (ia + 1..r).map(|i| i * n + ja);
            for b in row_nbrs.chain(col_nbrs) {
                let (va, vb) = (graph.vertex(a), graph.vertex(b));
                let edge = graph.edge_between(va, vb).expect("adjacent");
                let same_row = va.row == vb.row;
                let slot = |x| if same_row { row_slot(x) } else { col_slot(x) };
                steps.push(Step {
                    edge,
                    a,
                    b,
                    a_to_b_inverted: graph.precedes(vb, va),
                    slot_a: slot(a),
                    slot_b: slot(b),
                });
            }
        }
        debug_assert_eq!(steps.len(), graph.edge_count());

        Ok(Plan {
            steps,
            target: target.values().to_vec(),
            degree: vec![r + n - 2; r * n],
            lines,
            slots: 2 * r * n,
            words: graph.edge_count().div_ceil(64),
            sum_matches: target.sum() == graph.edge_count(),
        })
    }

    fn feasible(&self) -> bool {
        self.sum_matches && self.target.iter().zip(&self.degree).all(|(t, d)| t <= d)
    }

    fn initial_state(&self) -> State {
        State {
            out: vec![0; self.target.len()],
            remaining: self.degree.clone(),
            line_deg: vec![0; self.slots],
            words: vec![0; self.words],
            odd: false,
            stamp: 0,
            seen: vec![0; self.target.len()],
        }
    }

    fn triangle_free(&self, state: &mut State) -> bool {
        for &(start, len) in &self.lines {
            state.stamp += 1;
            for &deg in &state.line_deg[start..start + len] {
                if state.seen[deg] == state.stamp {
                    return false;
                }
                state.seen[deg] = state.stamp;
            }
        }
        true
    }

    fn search<S: Sink>(&self, st: &mut State, depth: usize, sink: &mut S) -> Result<(), ParityError> {
        self.search_until(st, depth, self.steps.len(), sink)
    }

    fn search_until<S: Sink>(
        &self,
        st: &mut State,
        depth: usize,
        stop: usize,
        sink: &mut S,
    ) -> Result<(), ParityError> {
        if depth == stop {
            return sink.leaf(self, st);
        }
        let s = self.steps[depth];
        let (a, b) = (s.a, s.b);
        st.remaining[a] -= 1;
        st.remaining[b] -= 1;

        for (tail, head, inverted, slot) in [
            (a, b, s.a_to_b_inverted, s.slot_a),
            (b, a, !s.a_to_b_inverted, s.slot_b),
        ] {
            let tail_ok = st.out[tail] < self.target[tail];
            let head_ok = st.out[head] + st.remaining[head] >= self.target[head];
            if !(tail_ok && head_ok) {
                continue;
            }
            st.out[tail] += 1;
            st.line_deg[slot] += 1;
            if inverted {
                st.words[s.edge / 64] |= 1 << (s.edge % 64);
                st.odd = !st.odd;
            }
            let result = self.search_until(st, depth + 1, stop, sink);
            if inverted {
                st.words[s.edge / 64] &= !(1 << (s.edge % 64));
                st.odd = !st.odd;
            }
            st.line_deg[slot] -= 1;
            st.out[tail] -= 1;
            result?;
        }

        st.remaining[a] += 1;
        st.remaining[b] += 1;
        Ok(())
    }

    fn parallel_tally(&self, jobs: usize) -> Result<Tally, ParityError> {
        if !self.feasible() {
            return Ok(Tally::default());
        }
        // Aim for several subtrees per worker.
        let wanted = (jobs * 8).next_power_of_two().trailing_zeros() as usize;
        let split = wanted.min(self.steps.len());
        let mut frontier = Frontier(Vec::new());
        self.search_until(&mut self.initial_state(), 0, split, &mut frontier)?;

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            frontier
                .0
                .into_par_iter()
                .map(|mut st| {
                    let mut tally = Tally::default();
                    self.search(&mut st, split, &mut tally).map(|_| tally)
                })
                .try_reduce(Tally::default, Tally::merge)
        })
    }
}
