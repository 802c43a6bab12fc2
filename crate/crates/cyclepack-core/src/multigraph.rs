//! Undirected multigraphs with self-loops, plus the cycle/packing vocabulary
//! and the transformation trace shared by every graph-rewriting pass.
//!
//! Conventions used across the crate:
//!
//! * Vertices are dense `u32` identifiers.  Identifiers are never reused: a
//!   deleted vertex leaves a dead slot behind, and fresh vertices are
//!   allocated past the high-water mark.  This is what makes provenance
//!   traces unambiguous — a vertex id means the same thing in every graph of
//!   a pipeline run.
//! * A self-loop contributes **2** to the degree of its vertex and **1** to
//!   the edge count.
//! * A cycle is a sequence of *distinct* vertices; its length is the number
//!   of vertices.  Length 1 requires a self-loop, length 2 a pair of parallel
//!   edges, length ≥ 3 an edge between each consecutive pair and one closing
//!   the sequence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Dense vertex identifier. Dead slots are never reused within a pipeline run.
pub type VertexId = u32;

/// A set of pairwise vertex-disjoint cycles.
pub type Packing = Vec<Cycle>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not present in this graph")]
    DeadVertex(VertexId),
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(VertexId, VertexId),
    #[error("cannot contract the self-loop at {0}")]
    LoopContraction(VertexId),
}

/// An undirected multigraph.
///
/// Parallel edges are stored as per-pair multiplicities, self-loops as a
/// per-vertex count.  All iteration orders are sorted by vertex id so that
/// every algorithm built on top is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiGraph {
    /// `adj[v][u]` = number of parallel `{v,u}` edges (`u != v`), mirrored.
    adj: Vec<BTreeMap<VertexId, u32>>,
    /// `loops[v]` = number of self-loops at `v`.
    loops: Vec<u32>,
    /// Dead slots stay allocated but are skipped everywhere.
    alive: Vec<bool>,
}

impl MultiGraph {
    /// Creates a graph with vertices `0..n` and no edges.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            adj: vec![BTreeMap::new(); n],
            loops: vec![0; n],
            alive: vec![true; n],
        }
    }

    /// Convenience constructor: `n` vertices plus one edge per listed pair
    /// (repeats accumulate multiplicity, `u == v` adds a loop).
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Number of live vertices.
    pub fn num_vertices(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    /// Total number of edges: parallel copies each count once, loops once.
    pub fn num_edges(&self) -> u64 {
        let pairs: u64 = self
            .live_ids()
            .map(|v| {
                self.adj[v as usize]
                    .iter()
                    .filter(|&(&u, _)| u >= v)
                    .map(|(_, &m)| m as u64)
                    .sum::<u64>()
            })
            .sum();
        pairs + self.live_ids().map(|v| self.loops[v as usize] as u64).sum::<u64>()
    }

    /// Upper bound (exclusive) on vertex ids ever allocated, dead or alive.
    pub fn id_bound(&self) -> VertexId {
        self.adj.len() as VertexId
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        (v as usize) < self.alive.len() && self.alive[v as usize]
    }

    /// Live vertex ids in ascending order.
    pub fn live_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, a)| **a)
            .map(|(i, _)| i as VertexId)
    }

    /// Set of live vertex ids.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.live_ids().collect()
    }

    /// Allocates a fresh vertex past the high-water mark.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(BTreeMap::new());
        self.loops.push(0);
        self.alive.push(true);
        (self.adj.len() - 1) as VertexId
    }

    /// Neighbors of `v` (excluding `v` itself) with multiplicities, ascending.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj[v as usize].iter().map(|(&u, &m)| (u, m))
    }

    /// Distinct neighbors of `v`, ascending, loops excluded.
    pub fn neighbor_ids(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v as usize].keys().copied()
    }

    /// Multiplicity of the pair `{u,v}`; `0` when not adjacent. For `u == v`
    /// this is the loop count.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        if u == v {
            self.loops[u as usize]
        } else {
            self.adj[u as usize].get(&v).copied().unwrap_or(0)
        }
    }

    pub fn loops_at(&self, v: VertexId) -> u32 {
        self.loops[v as usize]
    }

    /// Degree of `v`: each incident parallel copy counts 1, each loop 2.
    pub fn degree(&self, v: VertexId) -> u32 {
        self.adj[v as usize].values().sum::<u32>() + 2 * self.loops[v as usize]
    }

    /// Adds one copy of `{u,v}` (a loop when `u == v`).
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(self.is_alive(u) && self.is_alive(v));
        if u == v {
            self.loops[u as usize] += 1;
        } else {
            *self.adj[u as usize].entry(v).or_insert(0) += 1;
            *self.adj[v as usize].entry(u).or_insert(0) += 1;
        }
    }

    /// Sets the multiplicity of `{u,v}` (loop count when `u == v`).
    pub fn set_multiplicity(&mut self, u: VertexId, v: VertexId, m: u32) {
        if u == v {
            self.loops[u as usize] = m;
        } else if m == 0 {
            self.adj[u as usize].remove(&v);
            self.adj[v as usize].remove(&u);
        } else {
            self.adj[u as usize].insert(v, m);
            self.adj[v as usize].insert(u, m);
        }
    }

    /// Removes one copy of `{u,v}`; panics if none exists.
    pub fn remove_one_edge(&mut self, u: VertexId, v: VertexId) {
        let m = self.multiplicity(u, v);
        assert!(m > 0, "no {{{u},{v}}} edge to remove");
        self.set_multiplicity(u, v, m - 1);
    }

    /// Deletes `v` together with all incident edges (slot stays dead).
    pub fn delete_vertex(&mut self, v: VertexId) {
        let nbrs: Vec<VertexId> = self.adj[v as usize].keys().copied().collect();
        for u in nbrs {
            self.adj[u as usize].remove(&v);
        }
        self.adj[v as usize].clear();
        self.loops[v as usize] = 0;
        self.alive[v as usize] = false;
    }

    /// Removes every edge incident to `v` but keeps the vertex alive.
    pub fn isolate_vertex(&mut self, v: VertexId) {
        let nbrs: Vec<VertexId> = self.adj[v as usize].keys().copied().collect();
        for u in nbrs {
            self.adj[u as usize].remove(&v);
        }
        self.adj[v as usize].clear();
        self.loops[v as usize] = 0;
    }

    /// Copy of the graph with every vertex of `vs` deleted.
    pub fn without_vertices(&self, vs: &BTreeSet<VertexId>) -> MultiGraph {
        let mut g = self.clone();
        for &v in vs {
            if g.is_alive(v) {
                g.delete_vertex(v);
            }
        }
        g
    }

    /// Copy of the graph induced on `keep`: all other vertices deleted.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        let drop: BTreeSet<VertexId> = self.live_ids().filter(|v| !keep.contains(v)).collect();
        self.without_vertices(&drop)
    }

    /// All live unordered pairs with positive multiplicity, `(u, v)` with
    /// `u < v`, ascending; loops are *not* included.
    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId, u32)> {
        let mut out = Vec::new();
        for v in self.live_ids() {
            for (u, m) in self.neighbors(v) {
                if u > v {
                    out.push((v, u, m));
                }
            }
        }
        out
    }

    /// Vertices carrying at least one self-loop, ascending.
    pub fn loop_vertices(&self) -> Vec<VertexId> {
        self.live_ids().filter(|&v| self.loops[v as usize] > 0).collect()
    }

    /// Connected components (vertex sets, each sorted, ordered by minimum
    /// vertex).  Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.live_ids() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.neighbor_ids(v) {
                    if seen.insert(u) {
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when the graph has no cycle of any kind (no loops, no parallel
    /// pairs, and the simple skeleton is a forest).
    pub fn is_acyclic(&self) -> bool {
        is_fvs(self, &BTreeSet::new())
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph({} vertices", self.num_vertices())?;
        for v in self.live_ids() {
            if self.loops[v as usize] > 0 {
                write!(f, "; loop {v}x{}", self.loops[v as usize])?;
            }
        }
        for (u, v, m) in self.edge_pairs() {
            write!(f, "; {u}-{v}x{m}")?;
        }
        write!(f, ")")
    }
}

/// A cycle: distinct vertices in traversal order, stored in canonical form
/// (minimum vertex first, then the direction with the smaller successor).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<VertexId>,
}

impl Cycle {
    /// Canonicalizes a traversal order into a cycle. Panics on an empty
    /// sequence or repeated vertices — callers construct these from verified
    /// traversals.
    pub fn new(vertices: Vec<VertexId>) -> Cycle {
        assert!(!vertices.is_empty(), "a cycle has at least one vertex");
        let distinct: BTreeSet<_> = vertices.iter().collect();
        assert_eq!(distinct.len(), vertices.len(), "cycle vertices must be distinct");
        let n = vertices.len();
        let pos = (0..n).min_by_key(|&i| vertices[i]).unwrap();
        let fwd: Vec<VertexId> = (0..n).map(|i| vertices[(pos + i) % n]).collect();
        let bwd: Vec<VertexId> = (0..n).map(|i| vertices[(pos + n - i) % n]).collect();
        Cycle { vertices: if fwd <= bwd { fwd } else { bwd } }
    }

    /// Number of vertices (equivalently edges) on the cycle.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Consecutive traversal steps `(v_i, v_{i+1})` including the closing
    /// step.  A length-1 cycle yields `(v, v)`; a length-2 cycle yields both
    /// parallel traversals `(u, v)` and `(v, u)`.
    pub fn steps(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.vertices.len();
        if n == 1 {
            return vec![(self.vertices[0], self.vertices[0])];
        }
        (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect()
    }

    /// Checks that the cycle is realizable in `g`: the loop exists, the
    /// parallel pair has multiplicity ≥ 2, or every consecutive pair of the
    /// sequence is adjacent.
    pub fn is_valid_in(&self, g: &MultiGraph) -> bool {
        if self.vertices.iter().any(|&v| !g.is_alive(v)) {
            return false;
        }
        match self.vertices.as_slice() {
            [v] => g.loops_at(*v) >= 1,
            [u, v] => g.multiplicity(*u, *v) >= 2,
            _ => self.steps().iter().all(|&(a, b)| g.multiplicity(a, b) >= 1),
        }
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{:?}", self.vertices)
    }
}

/// One rewriting step in a graph transformation.
///
/// Events carry enough information to replay the transformation start to
/// finish; `PathCollapsed` is pure provenance (a no-op under replay) recording
/// that an edge copy stands for a longer path of the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// `v` and all incident edges removed.
    VertexDeleted { v: VertexId },
    /// One copy of `edge_used` consumed; `removed` merged into `survivor`
    /// (remaining parallels between them become loops at `survivor`).
    EdgeContracted { survivor: VertexId, removed: VertexId, edge_used: (VertexId, VertexId) },
    /// One copy of `{u,v}` added (loop when `u == v`), with a provenance label.
    EdgeAdded { u: VertexId, v: VertexId, label: &'static str },
    /// Multiplicity of `{u,v}` (loop count when `u == v`) set from `old` to `new`.
    MultiplicityClamped { u: VertexId, v: VertexId, old: u32, new: u32 },
    /// One copy of `{u,v}` replaced by the path `u, via…, v` over fresh
    /// vertices (for `u == v`, the loop becomes the cycle `u, via…`).
    EdgeSubdivided { u: VertexId, v: VertexId, via: Vec<VertexId> },
    /// Provenance: a copy of `{u,v}` stands for `path` (endpoints included).
    PathCollapsed { u: VertexId, v: VertexId, path: Vec<VertexId> },
}

/// Ordered log of [`TraceEvent`]s describing one transformation pass.
///
/// Replaying the log on the pass's input graph reproduces its output graph
/// exactly (fresh vertices are allocated in log order, so ids line up).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformTrace {
    pub events: Vec<TraceEvent>,
}

impl TransformTrace {
    pub fn push(&mut self, ev: TraceEvent) {
        self.events.push(ev);
    }

    pub fn extend(&mut self, other: TransformTrace) {
        self.events.extend(other.events);
    }

    /// Mechanically re-applies the log to `g0`.  Used by tests to certify
    /// that a trace is a faithful record of its transformation.
    pub fn replay(&self, g0: &MultiGraph) -> MultiGraph {
        let mut g = g0.clone();
        for ev in &self.events {
            match ev {
                TraceEvent::VertexDeleted { v } => g.delete_vertex(*v),
                TraceEvent::EdgeContracted { survivor, removed, edge_used } => {
                    contract_edge_in_place(&mut g, *survivor, *removed, *edge_used);
                }
                TraceEvent::EdgeAdded { u, v, .. } => g.add_edge(*u, *v),
                TraceEvent::MultiplicityClamped { u, v, new, .. } => {
                    g.set_multiplicity(*u, *v, *new);
                }
                TraceEvent::EdgeSubdivided { u, v, via } => {
                    g.remove_one_edge(*u, *v);
                    while g.id_bound() <= *via.iter().max().unwrap() {
                        g.add_vertex();
                    }
                    let mut prev = *u;
                    for &w in via {
                        g.add_edge(prev, w);
                        prev = w;
                    }
                    g.add_edge(prev, *v);
                }
                TraceEvent::PathCollapsed { .. } => {}
            }
        }
        g
    }
}

fn contract_edge_in_place(
    g: &mut MultiGraph,
    survivor: VertexId,
    removed: VertexId,
    edge_used: (VertexId, VertexId),
) {
    debug_assert_eq!(
        {
            let mut e = [edge_used.0, edge_used.1];
            e.sort_unstable();
            e
        },
        {
            let mut e = [survivor, removed];
            e.sort_unstable();
            e
        },
        "contraction consumes a copy of the merged pair"
    );
    g.remove_one_edge(survivor, removed);
    let between = g.multiplicity(survivor, removed);
    if between > 0 {
        g.set_multiplicity(survivor, removed, 0);
        g.set_multiplicity(survivor, survivor, g.loops_at(survivor) + between);
    }
    let extra_loops = g.loops_at(removed);
    if extra_loops > 0 {
        g.set_multiplicity(survivor, survivor, g.loops_at(survivor) + extra_loops);
    }
    let nbrs: Vec<(VertexId, u32)> = g.neighbors(removed).collect();
    for (x, m) in nbrs {
        g.set_multiplicity(survivor, x, g.multiplicity(survivor, x) + m);
    }
    g.delete_vertex(removed);
}

/// Contracts one copy of `{u,v}`, merging `v` into `u`.
///
/// Remaining parallel `{u,v}` copies become self-loops at `u` (each was a
/// length-2 cycle and stays a cycle), and `v`'s other edges transfer to `u`.
/// The edge count `Σ multiplicities + Σ loops` drops by exactly one.
pub fn contract_edge(
    g: &MultiGraph,
    u: VertexId,
    v: VertexId,
) -> Result<(MultiGraph, TransformTrace), GraphError> {
    if !g.is_alive(u) {
        return Err(GraphError::DeadVertex(u));
    }
    if !g.is_alive(v) {
        return Err(GraphError::DeadVertex(v));
    }
    if u == v {
        return Err(GraphError::LoopContraction(u));
    }
    if g.multiplicity(u, v) == 0 {
        return Err(GraphError::NoSuchEdge(u, v));
    }
    let mut out = g.clone();
    contract_edge_in_place(&mut out, u, v, (u, v));
    let mut trace = TransformTrace::default();
    trace.push(TraceEvent::EdgeContracted { survivor: u, removed: v, edge_used: (u, v) });
    Ok((out, trace))
}

/// Rewrites a cycle of the contracted graph (where `removed` was merged into
/// `survivor`) into a cycle of the pre-contraction graph `pre`.
///
/// A cycle avoiding `survivor` is untouched.  A cycle through `survivor`
/// keeps it, swaps it for `removed`, or — when its two incident traversal
/// steps come from different sides of the merge — re-inserts the contracted
/// edge and visits both endpoints.
pub fn lift_cycle_through_contraction(
    pre: &MultiGraph,
    survivor: VertexId,
    removed: VertexId,
    cycle: &Cycle,
) -> Cycle {
    let s = survivor;
    let r = removed;
    if !cycle.contains(s) {
        return cycle.clone();
    }
    let vs = cycle.vertices();
    match vs.len() {
        1 => {
            // A loop at s: either a genuine loop of `pre` or a parallel
            // {s,r} copy that became a loop under contraction.
            if pre.loops_at(s) >= 1 {
                cycle.clone()
            } else {
                debug_assert!(pre.multiplicity(s, r) >= 2);
                Cycle::new(vec![s, r])
            }
        }
        2 => {
            // Cycle [s, x]: two copies of {s,x} are needed; draw them from
            // s's own copies first, then r's, inserting the contracted edge
            // when the copies straddle the merge.
            let x = if vs[0] == s { vs[1] } else { vs[0] };
            let at_s = pre.multiplicity(s, x);
            let at_r = pre.multiplicity(r, x);
            if at_s >= 2 {
                cycle.clone()
            } else if at_s == 1 && at_r >= 1 {
                Cycle::new(vec![s, x, r])
            } else {
                debug_assert!(at_r >= 2);
                Cycle::new(vec![r, x])
            }
        }
        _ => {
            let i = vs.iter().position(|&v| v == s).unwrap();
            let n = vs.len();
            let x = vs[(i + n - 1) % n];
            let y = vs[(i + 1) % n];
            // The rebuilt traversal runs <mid>, y, …, x and closes back to
            // mid's first vertex, so mid must read x-side → y-side.
            let rebuild = |mid: &[VertexId]| {
                let mut seq: Vec<VertexId> = Vec::with_capacity(n + 1);
                let mut j = (i + 1) % n;
                seq.extend_from_slice(mid);
                while j != i {
                    seq.push(vs[j]);
                    j = (j + 1) % n;
                }
                Cycle::new(seq)
            };
            let sx = pre.multiplicity(s, x) >= 1;
            let sy = pre.multiplicity(s, y) >= 1;
            let rx = pre.multiplicity(r, x) >= 1;
            let ry = pre.multiplicity(r, y) >= 1;
            if sx && sy {
                cycle.clone()
            } else if rx && ry {
                rebuild(&[r])
            } else if sx && ry {
                // enter s from x, cross the contracted edge, leave r to y
                rebuild(&[s, r])
            } else {
                debug_assert!(sy && rx, "cycle step has no pre-image across the contraction");
                rebuild(&[r, s])
            }
        }
    }
}

/// Rewrites a packing of `trace.replay(g_before)` into a packing of
/// `g_before` by undoing the trace newest event first.
///
/// Deletions need no rewriting: a pre-deletion graph carries every cycle of
/// its post-deletion graph verbatim.  Contractions are undone one at a time
/// with [`lift_cycle_through_contraction`] against the replayed intermediate
/// graph; only the (unique, by disjointness) cycle through the survivor can
/// change, so the packing stays vertex-disjoint.  Traces with events other
/// than deletions and contractions are rejected: additions and subdivisions
/// can carry cycles with no pre-image.
pub fn lift_packing_through_trace(
    g_before: &MultiGraph,
    trace: &TransformTrace,
    packing: Packing,
) -> Packing {
    let mut pres: Vec<(MultiGraph, VertexId, VertexId)> = Vec::new();
    let mut cur = g_before.clone();
    for ev in &trace.events {
        match ev {
            TraceEvent::EdgeContracted { survivor, removed, .. } => {
                pres.push((cur.clone(), *survivor, *removed));
            }
            TraceEvent::VertexDeleted { .. } | TraceEvent::PathCollapsed { .. } => {}
            other => panic!("trace lifting undoes deletions and contractions only, got {other:?}"),
        }
        let mut one = TransformTrace::default();
        one.push(ev.clone());
        cur = one.replay(&cur);
    }
    let mut packing = packing;
    for (pre, s, r) in pres.iter().rev() {
        packing =
            packing.iter().map(|c| lift_cycle_through_contraction(pre, *s, *r, c)).collect();
    }
    packing
}

/// True when `f` is a feedback vertex set of `g`: deleting `f` leaves a graph
/// with no self-loops, no parallel pairs, and an acyclic skeleton.
pub fn is_fvs(g: &MultiGraph, f: &BTreeSet<VertexId>) -> bool {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let p = parent[&v];
        if p == v {
            v
        } else {
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
    }
    for v in g.live_ids() {
        if f.contains(&v) {
            continue;
        }
        if g.loops_at(v) > 0 {
            return false;
        }
        parent.insert(v, v);
    }
    for (u, v, m) in g.edge_pairs() {
        if f.contains(&u) || f.contains(&v) {
            continue;
        }
        if m >= 2 {
            return false;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent.insert(ru, rv);
    }
    true
}

/// True when `p` contains at least `k` pairwise vertex-disjoint cycles, each
/// realizable in `g`.
pub fn verify_packing(g: &MultiGraph, p: &Packing, k: usize) -> bool {
    if p.len() < k {
        return false;
    }
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for c in p {
        if !c.is_valid_in(g) {
            return false;
        }
        for &v in c.vertices() {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

/// Caps the edge count at `(2·c_ep·k·⌈log₂ max(k,2)⌉ + 1) · |V|` by keeping
/// only edges incident to an id-ascending prefix of the vertices.
///
/// The prefix ends at the last vertex whose scan (its loops plus edges to
/// higher-numbered vertices) completed with the running counter still below
/// the cap, so the kept edge count is strictly below the cap.  Every vertex
/// is retained.  Graphs under the cap pass through untouched with an empty
/// trace.
pub fn discard_excess_edges(
    g: &MultiGraph,
    k: usize,
    c_ep: u64,
) -> (MultiGraph, TransformTrace) {
    let l = ceil_log2_clamped(k);
    let cap = (2 * c_ep * k as u64 * l + 1) * g.num_vertices() as u64;
    if g.num_edges() <= cap {
        return (g.clone(), TransformTrace::default());
    }
    let mut counter: u64 = 0;
    let mut last_ok: Option<VertexId> = None;
    for v in g.live_ids() {
        let fwd: u64 = g.loops_at(v) as u64
            + g.neighbors(v).filter(|&(u, _)| u > v).map(|(_, m)| m as u64).sum::<u64>();
        counter += fwd;
        if counter < cap {
            last_ok = Some(v);
        } else {
            break;
        }
    }
    let mut out = g.clone();
    let mut trace = TransformTrace::default();
    let keep = |x: VertexId| matches!(last_ok, Some(l) if x <= l);
    for v in g.live_ids() {
        if !keep(v) && g.loops_at(v) > 0 {
            trace.push(TraceEvent::MultiplicityClamped { u: v, v, old: g.loops_at(v), new: 0 });
            out.set_multiplicity(v, v, 0);
        }
    }
    for (u, v, m) in g.edge_pairs() {
        if !keep(u) && !keep(v) {
            trace.push(TraceEvent::MultiplicityClamped { u, v, old: m, new: 0 });
            out.set_multiplicity(u, v, 0);
        }
    }
    (out, trace)
}

/// `⌈log₂ max(k, 2)⌉`, the logarithm convention used by every bound in the
/// crate (base 2, rounded up, argument clamped at 2 so the result is ≥ 1).
pub fn ceil_log2_clamped(k: usize) -> u64 {
    let k = k.max(2) as u64;
    64 - (k - 1).leading_zeros() as u64
}
