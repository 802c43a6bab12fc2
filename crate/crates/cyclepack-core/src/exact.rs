//! Exact Cycle Packing by inclusion–exclusion over counted closed walks.
//!
//! The decision procedure runs in `O(2^n · poly(n))` time and polynomial
//! space.  The driving identity is standard inclusion–exclusion: for a
//! universe of easily countable objects and the events "vertex `v` is
//! touched", the alternating sum `Σ_{F ⊆ V} (−1)^{|F|} · #(objects avoiding
//! F)` equals the number of objects touching *every* vertex.
//!
//! The objects counted here are tuples `(C_1, …, C_k, L)` where each `C_i`
//! is a directed closed walk of length at least three carrying a
//! distinguished start, the walks are ordered but in no way disjoint, and
//! `L` is a vertex set sized so that the walk lengths plus `|L|` add up to
//! exactly `n`.  A tuple that touches every vertex has no slot to spare, so
//! each vertex is used exactly once and the walks collapse into
//! vertex-disjoint cycles: the alternating sum is positive if and only if
//! `k` disjoint cycles exist.  For a fixed avoided set `F` the universe
//! factors into independent walk counts: a length-`ℓ` closed walk count
//! per start (a few matrix–vector steps), a convolution over how `ℓ` splits
//! across the `k` walks, and a binomial factor for `L`.  Subsets are
//! processed one at a time, so space stays polynomial while the subset loop
//! contributes the `2^n` factor.
//!
//! Two shape preliminaries keep the walk counts sound:
//!
//! * closed walks of length one or two do not exist in a simple graph, but
//!   a one-vertex walk fragment would close into one if the recurrences
//!   allowed it.  Closure steps therefore draw from a companion count
//!   restricted to fragments of at least two vertices (see
//!   [`WalkCountTable`]).
//! * loops and parallel edges *are* cycles of length one and two, which a
//!   length-≥3 universe cannot see.  [`simplify_for_dp`] rewrites them into
//!   triangles by subdividing, preserving the maximum packing size exactly.
//!
//! [`ie_search`] upgrades the decision to a certificate by edge
//! minimalization: edge copies are deleted one at a time as long as the
//! instance stays a yes-instance, and the minimal graph that survives is
//! precisely `k` vertex-disjoint cycles, read off component by component.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::multigraph::{
    verify_packing, Cycle, MultiGraph, Packing, TraceEvent, TransformTrace, VertexId,
};

/// Hard width limit for the subset enumeration: one bit per live vertex of
/// the simplified graph must fit a `u64` mask.  Runtime is `2^n`, so the
/// practical limit sits far below this one.
pub const SUBSET_VERTEX_CAP: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// A walk-count query outside `2k ≤ ℓ ≤ n`.
    #[error("total walk length {l} outside the valid range {lo}..={hi}")]
    LengthOutOfRange { l: usize, lo: usize, hi: usize },
    /// More live vertices after simplification than subset masks can index.
    #[error("{n} live vertices exceed the subset-enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// Rewrites loops and parallel edges into triangles so that every cycle of
/// the input corresponds to a cycle of length at least three.
///
/// Each loop is replaced by a triangle through two fresh vertices, and every
/// parallel copy beyond the first is subdivided through one fresh vertex.
/// Fresh vertices have degree two and connect nothing new, so the maximum
/// number of vertex-disjoint cycles is preserved exactly, in both
/// directions.  The returned trace replays the rewriting on the input.
pub fn simplify_for_dp(g: &MultiGraph) -> (MultiGraph, TransformTrace) {
    let mut gs = g.clone();
    let mut trace = TransformTrace::default();
    for v in gs.loop_vertices() {
        while gs.loops_at(v) > 0 {
            gs.set_multiplicity(v, v, gs.loops_at(v) - 1);
            let a = gs.add_vertex();
            let b = gs.add_vertex();
            gs.add_edge(v, a);
            gs.add_edge(a, b);
            gs.add_edge(b, v);
            trace.push(TraceEvent::EdgeSubdivided { u: v, v, via: vec![a, b] });
        }
    }
    for (u, v, m) in gs.edge_pairs() {
        for _ in 1..m {
            gs.remove_one_edge(u, v);
            let w = gs.add_vertex();
            gs.add_edge(u, w);
            gs.add_edge(w, v);
            trace.push(TraceEvent::EdgeSubdivided { u, v, via: vec![w] });
        }
    }
    debug_assert!(gs.loop_vertices().is_empty());
    debug_assert!(gs.edge_pairs().iter().all(|&(_, _, m)| m == 1));
    (gs, trace)
}

/// Compact adjacency of a simple graph, indexed `0..n` over live vertices.
struct DpGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl DpGraph {
    fn build(g: &MultiGraph) -> DpGraph {
        let ids: Vec<VertexId> = g.live_ids().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (i, &v) in ids.iter().enumerate() {
            debug_assert_eq!(g.loops_at(v), 0, "subset counting runs on a simplified graph");
            for (u, m) in g.neighbors(v) {
                debug_assert_eq!(m, 1, "subset counting runs on a simplified graph");
                adj[i].push(index[&u]);
            }
        }
        DpGraph { n: ids.len(), adj }
    }
}

/// Binomial coefficients `C(a, b)` for `a ≤ n`, exact in `u128`.
struct Pascal {
    rows: Vec<Vec<u128>>,
}

impl Pascal {
    fn up_to(n: usize) -> Pascal {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let mut row = vec![1u128; a + 1];
            for b in 1..a {
                row[b] = rows[a - 1][b - 1] + rows[a - 1][b];
            }
            rows.push(row);
        }
        Pascal { rows }
    }

    fn choose(&self, a: usize, b: usize) -> u128 {
        if b > a {
            0
        } else {
            self.rows[a][b]
        }
    }
}

/// The nonnegative integers the subset pass accumulates in: either `u128`
/// (when a full-graph probe proves no intermediate can overflow) or
/// arbitrary precision.
trait Counter: Clone + Send + Sync + Zero {
    fn add_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn from_u128(x: u128) -> Self;
    fn into_biguint(self) -> BigUint;
    fn max_in_place(&mut self, rhs: &Self);
}

impl Counter for u128 {
    fn add_ref(&mut self, rhs: &Self) {
        *self = self.checked_add(*rhs).expect("walk count exceeded the proven u128 bound");
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.checked_mul(*rhs).expect("walk count exceeded the proven u128 bound")
    }

    fn from_u128(x: u128) -> Self {
        x
    }

    fn into_biguint(self) -> BigUint {
        BigUint::from(self)
    }

    fn max_in_place(&mut self, rhs: &Self) {
        if rhs > self {
            *self = *rhs;
        }
    }
}

impl Counter for BigUint {
    fn add_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_u128(x: u128) -> Self {
        BigUint::from(x)
    }

    fn into_biguint(self) -> BigUint {
        self
    }

    fn max_in_place(&mut self, rhs: &Self) {
        if rhs > self {
            rhs.clone_into(self);
        }
    }
}

/// Counts rooted directed closed walks avoiding the `dead` vertex mask.
///
/// Layer `t` (0-based `t−1`) maps a total vertex budget `ℓ` to the number of
/// ordered `t`-tuples of closed walks, each of length at least three with a
/// distinguished start, whose lengths sum to `ℓ`.  Layer 1 comes from
/// matrix–vector steps per start vertex; higher layers are convolutions.
/// With `TRACK` set, `peak` records the largest value ever stored, which is
/// what the integer-width probe needs: every count avoiding a nonempty set
/// is dominated entrywise by the same count avoiding nothing.
fn walk_layers<T: Counter, const TRACK: bool>(
    dp: &DpGraph,
    dead: u64,
    kmax: usize,
    peak: &mut T,
) -> Vec<Vec<T>> {
    let n = dp.n;
    let alive = |i: usize| dead & (1u64 << i) == 0;
    let mut cw = vec![T::zero(); n + 1];
    for root in 0..n {
        if !alive(root) {
            continue;
        }
        let mut b = vec![T::zero(); n];
        b[root] = T::from_u128(1);
        #[allow(clippy::needless_range_loop)] // `len` is the walk length, not a mere index
        for len in 2..=n {
            let mut nb = vec![T::zero(); n];
            for (u, slot) in nb.iter_mut().enumerate() {
                if !alive(u) {
                    continue;
                }
                let mut acc = T::zero();
                for &w in &dp.adj[u] {
                    if alive(w) {
                        acc.add_ref(&b[w]);
                    }
                }
                *slot = acc;
            }
            b = nb;
            if TRACK {
                for x in &b {
                    peak.max_in_place(x);
                }
            }
            // Close the walk back to `root`: the fragment reached a
            // neighbor of the root and already has `len ≥ 2` vertices, so
            // the closed walk has length ≥ 3 — shorter closures are never
            // assembled.
            if len >= 3 {
                for &u in &dp.adj[root] {
                    if alive(u) {
                        cw[len].add_ref(&b[u]);
                    }
                }
            }
        }
    }
    if TRACK {
        for x in &cw {
            peak.max_in_place(x);
        }
    }
    let mut layers = Vec::with_capacity(kmax);
    layers.push(cw);
    for _ in 2..=kmax {
        let prev = layers.last().unwrap();
        let single = &layers[0];
        let mut next = vec![T::zero(); n + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            let mut acc = T::zero();
            for a in 0..=total {
                if prev[a].is_zero() || single[total - a].is_zero() {
                    continue;
                }
                acc.add_ref(&prev[a].mul_ref(&single[total - a]));
            }
            *slot = acc;
        }
        if TRACK {
            for x in &next {
                peak.max_in_place(x);
            }
        }
        layers.push(next);
    }
    layers
}

/// One inclusion–exclusion term per `k ∈ 1..=kmax` for a fixed avoided set:
/// `Σ_ℓ (closed-walk tuples of total length ℓ) · C(alive, n − ℓ)`.
fn subset_terms<T: Counter, const TRACK: bool>(
    dp: &DpGraph,
    dead: u64,
    kmax: usize,
    binom: &Pascal,
    peak: &mut T,
) -> Vec<T> {
    let n = dp.n;
    let layers = walk_layers::<T, TRACK>(dp, dead, kmax, peak);
    let alive = n - dead.count_ones() as usize;
    let mut terms = Vec::with_capacity(kmax);
    for (t, q) in layers.iter().enumerate() {
        let k = t + 1;
        let mut term = T::zero();
        #[allow(clippy::needless_range_loop)] // `l` is the total walk length
        for l in (2 * k)..=n {
            if q[l].is_zero() {
                continue;
            }
            let c = binom.choose(alive, n - l);
            if c == 0 {
                continue;
            }
            let prod = q[l].mul_ref(&T::from_u128(c));
            if TRACK {
                peak.max_in_place(&prod);
            }
            term.add_ref(&prod);
        }
        if TRACK {
            peak.max_in_place(&term);
        }
        terms.push(term);
    }
    terms
}

/// The full alternating sums, one per `k ∈ 1..=kmax`, over all vertex
/// subsets of the simplified graph.  Addition commutes exactly, so the
/// parallel reduction is deterministic.
fn masked_sums<T: Counter>(dp: &DpGraph, kmax: usize, binom: &Pascal) -> Vec<BigInt> {
    let n = dp.n;
    (0u64..(1u64 << n))
        .into_par_iter()
        .map(|dead| {
            let mut sink = T::zero();
            let terms = subset_terms::<T, false>(dp, dead, kmax, binom, &mut sink);
            let negate = dead.count_ones() % 2 == 1;
            terms
                .into_iter()
                .map(|t| {
                    let v = BigInt::from(t.into_biguint());
                    if negate {
                        -v
                    } else {
                        v
                    }
                })
                .collect::<Vec<BigInt>>()
        })
        .reduce(
            || vec![BigInt::zero(); kmax],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Signed inclusion–exclusion sums for every packing size `1..=kmax` in a
/// single subset pass (the walk layers for `kmax` contain all smaller
/// layers for free).
///
/// Entry `k−1` is nonnegative, counts the start-rooted traversals of all
/// families of `k` vertex-disjoint cycles, and is positive if and only if
/// the input packs `k` disjoint cycles.
pub fn ie_signed_sums_up_to(g: &MultiGraph, kmax: usize) -> Result<Vec<BigInt>, ExactError> {
    assert!(kmax >= 1, "at least one packing size must be requested");
    let (gs, _trace) = simplify_for_dp(g);
    let dp = DpGraph::build(&gs);
    if dp.n > SUBSET_VERTEX_CAP {
        return Err(ExactError::TooLarge { n: dp.n, cap: SUBSET_VERTEX_CAP });
    }
    let binom = Pascal::up_to(dp.n);
    // Width probe: counts avoiding any subset are dominated entrywise by
    // the counts avoiding nothing, so one arbitrary-precision pass over the
    // full graph bounds every intermediate of every subset.
    let mut peak = BigUint::zero();
    subset_terms::<BigUint, true>(&dp, 0, kmax, &binom, &mut peak);
    let sums = if peak <= BigUint::from(u128::MAX) {
        masked_sums::<u128>(&dp, kmax, &binom)
    } else {
        masked_sums::<BigUint>(&dp, kmax, &binom)
    };
    Ok(sums)
}

/// The signed inclusion–exclusion sum for one packing size.
pub fn ie_signed_sum(g: &MultiGraph, k: usize) -> Result<BigInt, ExactError> {
    Ok(ie_signed_sums_up_to(g, k)?.pop().expect("one sum per requested size"))
}

/// Decides whether `g` packs `k` vertex-disjoint cycles, in `O(2^n·poly n)`
/// time and polynomial space.
pub fn ie_decide(g: &MultiGraph, k: usize) -> Result<bool, ExactError> {
    if k == 0 {
        return Ok(true);
    }
    let sum = ie_signed_sum(g, k)?;
    assert!(sum >= BigInt::zero(), "the alternating sum counts a set and cannot be negative");
    Ok(sum > BigInt::zero())
}

/// Produces a certified packing of `k` disjoint cycles, or `None` when none
/// exists, by self-reduction on the decision procedure.
///
/// Edge copies are deleted in ascending vertex order, each deletion kept
/// only if the instance stays a yes-instance.  At the fixpoint every
/// remaining edge is necessary, which pins the graph down exactly: any
/// packing of `k` disjoint cycles inside the minimal graph accounts for
/// every edge (an unused edge could be deleted), so the cyclic components
/// *are* the `k` cycles and are read off directly.
pub fn ie_search(g: &MultiGraph, k: usize) -> Result<Option<Packing>, ExactError> {
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if !ie_decide(g, k)? {
        return Ok(None);
    }
    let mut h = g.clone();
    loop {
        let mut changed = false;
        for v in h.loop_vertices() {
            while h.loops_at(v) > 0 {
                let mut t = h.clone();
                t.set_multiplicity(v, v, h.loops_at(v) - 1);
                if ie_decide(&t, k)? {
                    h = t;
                    changed = true;
                } else {
                    break;
                }
            }
        }
        for (u, v, _) in h.edge_pairs() {
            while h.multiplicity(u, v) > 0 {
                let mut t = h.clone();
                t.remove_one_edge(u, v);
                if ie_decide(&t, k)? {
                    h = t;
                    changed = true;
                } else {
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let packing = read_disjoint_cycles(&h);
    assert_eq!(packing.len(), k, "an edge-minimal yes-instance is exactly k disjoint cycles");
    assert!(verify_packing(g, &packing, k), "recovered cycles must certify in the input graph");
    Ok(Some(packing))
}

/// Reads the cycles off a graph that is a disjoint union of cycles (plus
/// isolated vertices), ordered by their minimum vertex.
fn read_disjoint_cycles(h: &MultiGraph) -> Packing {
    let mut packing = Vec::new();
    for comp in h.components() {
        let cyclic: Vec<VertexId> = comp.iter().copied().filter(|&v| h.degree(v) > 0).collect();
        if cyclic.is_empty() {
            continue;
        }
        if let [v] = cyclic.as_slice() {
            assert_eq!(h.degree(*v), 2, "a cyclic component must be 2-regular");
            assert_eq!(h.loops_at(*v), 1);
            packing.push(Cycle::new(vec![*v]));
            continue;
        }
        if let [u, v] = cyclic.as_slice() {
            assert_eq!(h.multiplicity(*u, *v), 2, "a 2-vertex cyclic component is a double edge");
            assert!(h.degree(*u) == 2 && h.degree(*v) == 2);
            packing.push(Cycle::new(vec![*u, *v]));
            continue;
        }
        for &v in &cyclic {
            assert_eq!(h.degree(v), 2, "a cyclic component must be 2-regular");
            assert_eq!(h.loops_at(v), 0);
        }
        let start = cyclic[0];
        let mut seq = vec![start];
        let mut prev = start;
        let mut cur = h.neighbor_ids(start).next().expect("2-regular vertices have neighbors");
        while cur != start {
            seq.push(cur);
            let next = h
                .neighbor_ids(cur)
                .find(|&w| w != prev)
                .expect("multiplicity-one 2-regular vertices have two distinct neighbors");
            prev = cur;
            cur = next;
        }
        assert_eq!(seq.len(), cyclic.len(), "a cyclic component must be a single cycle");
        packing.push(Cycle::new(seq));
    }
    packing
}

/// The reference walk-count table, kept verbatim as a checkable mirror of
/// the per-subset counting that [`ie_signed_sums_up_to`] performs with
/// vectors and convolutions.
///
/// `M[i][j][v][u]` counts tuples where walks `1..i−1` are closed (length
/// ≥ 3, distinguished start), walk `i` is a fragment from `v` to `u`, and
/// all walks together use `j` vertices, counted with repetition.  The
/// companion table restricts walk `i` to fragments of at least two
/// vertices; closure steps (finishing walk `i−1` when walk `i` starts, and
/// the final closure in [`count_q`]) draw only from the companion, which is
/// what keeps impossible closed walks of length one or two out of every
/// count.
///
/// Invariant: `M[i][1][v][u]` is 1 exactly when `i == 1 ∧ v == u` (a lone
/// start vertex) and 0 otherwise.
pub struct WalkCountTable {
    k: usize,
    jmax: usize,
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    walks: Vec<BigUint>,
    fragments: Vec<BigUint>,
}

impl WalkCountTable {
    /// Fills the table for walk counts avoiding `f`, with `k` walks and
    /// vertex budgets up to `l − 1` (all a total length of `l` can need).
    pub fn build(g_s: &MultiGraph, f: &BTreeSet<VertexId>, k: usize, l: usize) -> WalkCountTable {
        assert!(k >= 1 && l >= 2, "counting needs a walk and a budget");
        let ids: Vec<VertexId> = g_s.live_ids().filter(|v| !f.contains(v)).collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        for (i, &v) in ids.iter().enumerate() {
            assert_eq!(g_s.loops_at(v), 0, "walk counting requires a loop-free graph");
            for (u, m) in g_s.neighbors(v) {
                if f.contains(&u) {
                    continue;
                }
                assert_eq!(m, 1, "walk counting requires multiplicity-one edges");
                adj[i].push(index[&u]);
            }
        }
        let jmax = l - 1;
        let mut walks = vec![BigUint::zero(); k * jmax * n * n];
        let mut fragments = vec![BigUint::zero(); k * jmax * n * n];
        let at = |i: usize, j: usize, v: usize, u: usize| {
            (((i - 1) * jmax) + (j - 1)) * n * n + v * n + u
        };
        for i in 1..=k {
            for j in 1..=jmax {
                // Tuples where walk `i` just became its lone start vertex:
                // for i = 1 nothing precedes it; otherwise the previous walk
                // closes here — a fragment of ≥ 2 vertices plus one closing
                // vertex adjacent to both its endpoint and its start.
                let fresh_start = if i == 1 {
                    if j == 1 {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    }
                } else if j >= 3 {
                    let mut total = BigUint::zero();
                    for p in 0..n {
                        for &q in &adj[p] {
                            for &w in &adj[q] {
                                total += &fragments[at(i - 1, j - 2, p, w)];
                            }
                        }
                    }
                    total
                } else {
                    BigUint::zero()
                };
                for v in 0..n {
                    for u in 0..n {
                        let mut frag = BigUint::zero();
                        if j >= 2 {
                            for &w in &adj[u] {
                                frag += &walks[at(i, j - 1, v, w)];
                            }
                        }
                        let mut full = frag.clone();
                        if v == u {
                            full += &fresh_start;
                        }
                        fragments[at(i, j, v, u)] = frag;
                        walks[at(i, j, v, u)] = full;
                    }
                }
            }
        }
        WalkCountTable { k, jmax, ids, adj, walks, fragments }
    }

    fn at(&self, i: usize, j: usize, vi: usize, ui: usize) -> usize {
        let n = self.ids.len();
        (((i - 1) * self.jmax) + (j - 1)) * n * n + vi * n + ui
    }

    /// Table lookup by original vertex ids; `i` and `j` are 1-based.
    pub fn get(&self, i: usize, j: usize, v: VertexId, u: VertexId) -> &BigUint {
        assert!((1..=self.k).contains(&i) && (1..=self.jmax).contains(&j));
        let vi = self.ids.binary_search(&v).expect("start must be live and not avoided");
        let ui = self.ids.binary_search(&u).expect("endpoint must be live and not avoided");
        &self.walks[self.at(i, j, vi, ui)]
    }

    /// Closes the final walk: fragments of `l − 1` total vertices whose
    /// endpoint neighbors a neighbor of the start, summed over the start's
    /// closing edge.
    fn rooted_closed_total(&self) -> BigUint {
        let mut total = BigUint::zero();
        for (v, nbrs) in self.adj.iter().enumerate() {
            for &u in nbrs {
                for &w in &self.adj[u] {
                    total += &self.fragments[self.at(self.k, self.jmax, v, w)];
                }
            }
        }
        total
    }
}

/// Counts the tuples of `k` ordered, start-rooted, directed closed walks of
/// individual length ≥ 3 and total length exactly `l` in `g_s − f`.
///
/// `g_s` must be simple (see [`simplify_for_dp`]); `l` must satisfy
/// `2k ≤ l ≤ |V(g_s)|`.  This is the reference implementation the fast
/// subset pass is tested against.
pub fn count_q(
    g_s: &MultiGraph,
    f: &BTreeSet<VertexId>,
    k: usize,
    l: usize,
) -> Result<BigUint, ExactError> {
    assert!(k >= 1, "counting needs at least one walk");
    let hi = g_s.live_ids().count();
    let lo = 2 * k;
    if l < lo || l > hi {
        return Err(ExactError::LengthOutOfRange { l, lo, hi });
    }
    Ok(WalkCountTable::build(g_s, f, k, l).rooted_closed_total())
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle::{girth_bruteforce, max_cycle_packing_bruteforce};

    fn triangle() -> MultiGraph {
        MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)])
    }

    fn cycle_graph(n: u32) -> MultiGraph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n as usize, &edges)
    }

    fn complete(n: u32) -> MultiGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        MultiGraph::from_edges(n as usize, &edges)
    }

    fn petersen() -> MultiGraph {
        let mut edges: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (i + 5, (i + 2) % 5 + 5)));
        MultiGraph::from_edges(10, &edges)
    }

    fn random_multigraph(rng: &mut ChaCha8Rng, n: u32, m: usize, loops: usize) -> MultiGraph {
        let mut g = MultiGraph::new(n as usize);
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                g.add_edge(u, v);
            }
        }
        for _ in 0..loops {
            let v = rng.gen_range(0..n);
            g.add_edge(v, v);
        }
        g
    }

    fn random_simple(rng: &mut ChaCha8Rng, n: u32, tries: usize) -> MultiGraph {
        let mut g = MultiGraph::new(n as usize);
        for _ in 0..tries {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && g.multiplicity(u, v) == 0 {
                g.add_edge(u, v);
            }
        }
        g
    }

    // Direct enumeration of the counted universe: vertex sequences with
    // consecutive and wrap-around adjacency, composed over ordered walks.
    fn compact_alive_adj(g: &MultiGraph, f: &BTreeSet<VertexId>) -> Vec<Vec<usize>> {
        let ids: Vec<VertexId> = g.live_ids().filter(|v| !f.contains(v)).collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        ids.iter()
            .map(|&v| {
                g.neighbor_ids(v).filter(|u| !f.contains(u)).map(|u| index[&u]).collect()
            })
            .collect()
    }

    fn closed_sequence_count(adj: &[Vec<usize>], len: usize) -> u64 {
        fn extend(adj: &[Vec<usize>], seq: &mut Vec<usize>, len: usize, count: &mut u64) {
            if seq.len() == len {
                if adj[*seq.last().unwrap()].contains(&seq[0]) {
                    *count += 1;
                }
                return;
            }
            let last = *seq.last().unwrap();
            for i in 0..adj[last].len() {
                seq.push(adj[last][i]);
                extend(adj, seq, len, count);
                seq.pop();
            }
        }
        let mut count = 0;
        for start in 0..adj.len() {
            extend(adj, &mut vec![start], len, &mut count);
        }
        count
    }

    fn brute_q(g: &MultiGraph, f: &BTreeSet<VertexId>, k: usize, l: usize) -> BigUint {
        let adj = compact_alive_adj(g, f);
        let per_len: Vec<u64> = (0..=l)
            .map(|len| if len >= 3 { closed_sequence_count(&adj, len) } else { 0 })
            .collect();
        fn across(per_len: &[u64], parts: usize, total: usize) -> BigUint {
            if parts == 0 {
                return if total == 0 { BigUint::one() } else { BigUint::zero() };
            }
            let mut sum = BigUint::zero();
            for first in 3..=total {
                if per_len[first] == 0 {
                    continue;
                }
                sum += BigUint::from(per_len[first]) * across(per_len, parts - 1, total - first);
            }
            sum
        }
        across(&per_len, k, l)
    }

    #[test]
    fn six_rooted_traversals_of_a_triangle() {
        // 3 starts × 2 directions.
        let q = count_q(&triangle(), &BTreeSet::new(), 1, 3).unwrap();
        assert_eq!(q, BigUint::from(6u32));
    }

    #[test]
    fn a_bipartite_path_has_no_odd_closed_walk() {
        let path = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let q = count_q(&path, &BTreeSet::new(), 1, 3).unwrap();
        assert_eq!(q, BigUint::zero());
    }

    #[test]
    fn deleting_one_triangle_vertex_kills_every_closed_walk() {
        let f = BTreeSet::from([0]);
        let q = count_q(&triangle(), &f, 1, 3).unwrap();
        assert_eq!(q, BigUint::zero());
    }

    #[test]
    fn no_length_two_closure_is_ever_counted() {
        // A single edge admits the two-vertex round trip as a walk shape,
        // but not as a closed walk of length ≥ 3; counting it would turn
        // every edge into a phantom cycle.
        let edge = MultiGraph::from_edges(2, &[(0, 1)]);
        let q = count_q(&edge, &BTreeSet::new(), 1, 2).unwrap();
        assert_eq!(q, BigUint::zero());
        assert!(!ie_decide(&edge, 1).unwrap());
    }

    #[test]
    fn walk_table_first_column_is_the_walk_start_indicator() {
        let t = WalkCountTable::build(&complete(4), &BTreeSet::new(), 2, 4);
        for i in 1..=2 {
            for v in 0..4 {
                for u in 0..4 {
                    let expect = u64::from(i == 1 && v == u);
                    assert_eq!(t.get(i, 1, v, u), &BigUint::from(expect));
                }
            }
        }
    }

    #[test]
    fn length_bounds_are_validated() {
        let err = count_q(&triangle(), &BTreeSet::new(), 1, 7).unwrap_err();
        assert_eq!(err, ExactError::LengthOutOfRange { l: 7, lo: 2, hi: 3 });
        let err = count_q(&triangle(), &BTreeSet::new(), 2, 3).unwrap_err();
        assert_eq!(err, ExactError::LengthOutOfRange { l: 3, lo: 4, hi: 3 });
    }

    #[test]
    fn literal_fast_and_brute_walk_counts_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xEAC7);
        for _ in 0..50 {
            let n = rng.gen_range(3..=6u32);
            let tries = rng.gen_range(2..=9);
            let g = random_simple(&mut rng, n, tries);
            let f: BTreeSet<VertexId> =
                (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect();
            let dp = DpGraph::build(&g);
            let dead: u64 = f.iter().map(|&v| 1u64 << v).fold(0, |a, b| a | b);
            for k in 1..=2usize {
                let mut sink = BigUint::zero();
                let layers = walk_layers::<BigUint, false>(&dp, dead, k, &mut sink);
                #[allow(clippy::needless_range_loop)] // `l` is the total walk length
                for l in (2 * k)..=(n as usize) {
                    let brute = brute_q(&g, &f, k, l);
                    let literal = count_q(&g, &f, k, l).unwrap();
                    assert_eq!(literal, brute, "table disagrees with enumeration");
                    assert_eq!(layers[k - 1][l], brute, "convolution disagrees");
                }
            }
        }
    }

    #[test]
    fn signed_sum_counts_the_disjoint_cycle_traversals() {
        assert_eq!(ie_signed_sum(&triangle(), 1).unwrap(), BigInt::from(6));
        // A 4-cycle has 8 rooted traversals and nothing else survives the
        // alternating sum.
        assert_eq!(ie_signed_sum(&cycle_graph(4), 1).unwrap(), BigInt::from(8));
    }

    #[test]
    fn decide_matches_handmade_instances() {
        assert!(ie_decide(&triangle(), 0).unwrap());
        assert!(ie_decide(&triangle(), 1).unwrap());
        assert!(!ie_decide(&triangle(), 2).unwrap());
        assert!(!ie_decide(&cycle_graph(5), 2).unwrap());
        assert!(!ie_decide(&complete(5), 2).unwrap());
        assert!(ie_decide(&complete(6), 2).unwrap());
        assert!(!ie_decide(&MultiGraph::new(0), 1).unwrap());
    }

    #[test]
    fn decide_sees_loop_and_double_edge_cycles() {
        let mut g = MultiGraph::new(1);
        g.add_edge(0, 0);
        assert!(ie_decide(&g, 1).unwrap());

        let mut d = MultiGraph::new(2);
        d.add_edge(0, 1);
        d.add_edge(0, 1);
        assert!(ie_decide(&d, 1).unwrap());
        assert!(!ie_decide(&d, 2).unwrap());

        let mut both = MultiGraph::from_edges(4, &[(1, 2), (2, 3), (3, 1)]);
        both.add_edge(0, 0);
        assert!(ie_decide(&both, 2).unwrap());
        assert!(!ie_decide(&both, 3).unwrap());
    }

    #[test]
    fn simplify_rewrites_loops_into_triangles() {
        let mut g = MultiGraph::new(1);
        g.add_edge(0, 0);
        let (gs, trace) = simplify_for_dp(&g);
        assert_eq!(gs.live_ids().count(), 3);
        assert_eq!(girth_bruteforce(&gs).unwrap(), Some(3));
        assert_eq!(trace.replay(&g), gs);
    }

    #[test]
    fn simplify_subdivides_extra_parallel_copies() {
        let mut g = MultiGraph::new(2);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        let (gs, trace) = simplify_for_dp(&g);
        assert_eq!(gs.live_ids().count(), 4);
        assert!(gs.edge_pairs().iter().all(|&(_, _, m)| m == 1));
        assert_eq!(girth_bruteforce(&gs).unwrap(), Some(3));
        assert_eq!(trace.replay(&g), gs);
    }

    #[test]
    fn simplify_preserves_the_maximum_packing_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x51AF);
        for _ in 0..60 {
            let n = rng.gen_range(2..=6u32);
            let (m, loops) = (rng.gen_range(0..=8), rng.gen_range(0..=2));
            let g = random_multigraph(&mut rng, n, m, loops);
            let (gs, trace) = simplify_for_dp(&g);
            assert_eq!(trace.replay(&g), gs);
            if gs.live_ids().count() > 12 {
                continue;
            }
            let (before, _) = max_cycle_packing_bruteforce(&g).unwrap();
            let (after, _) = max_cycle_packing_bruteforce(&gs).unwrap();
            assert_eq!(before, after, "simplification changed the packing number");
        }
    }

    #[test]
    fn decide_agrees_with_the_oracle_on_random_multigraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xDEC1);
        for _ in 0..120 {
            let n = rng.gen_range(3..=6u32);
            let (m, loops) = (rng.gen_range(0..=9), rng.gen_range(0..=1));
            let g = random_multigraph(&mut rng, n, m, loops);
            let (max, _) = max_cycle_packing_bruteforce(&g).unwrap();
            let sums = ie_signed_sums_up_to(&g, 3).unwrap();
            for k in 1..=3usize {
                assert!(sums[k - 1] >= BigInt::zero());
                assert_eq!(
                    sums[k - 1] > BigInt::zero(),
                    max >= k,
                    "decision disagrees with the oracle at k={k} on {g:?}"
                );
            }
        }
    }

    #[test]
    fn search_returns_certified_packings() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EA2C4);
        for _ in 0..40 {
            let n = rng.gen_range(3..=5u32);
            let (m, loops) = (rng.gen_range(3..=6), rng.gen_range(0..=1));
            let g = random_multigraph(&mut rng, n, m, loops);
            let (max, _) = max_cycle_packing_bruteforce(&g).unwrap();
            for k in 1..=2usize {
                match ie_search(&g, k).unwrap() {
                    Some(p) => {
                        assert!(max >= k);
                        assert!(verify_packing(&g, &p, k));
                    }
                    None => assert!(max < k, "search missed a packing of size {k} in {g:?}"),
                }
            }
        }
    }

    #[test]
    fn search_reads_two_triangles_off_the_complete_graph() {
        let p = ie_search(&complete(6), 2).unwrap().expect("two disjoint triangles exist");
        assert!(verify_packing(&complete(6), &p, 2));
        let lens: Vec<usize> = p.iter().map(Cycle::len).collect();
        assert_eq!(lens, vec![3, 3]);
    }

    #[test]
    fn search_recovers_loop_cycles() {
        let mut g = MultiGraph::new(2);
        g.add_edge(0, 0);
        g.add_edge(1, 1);
        let p = ie_search(&g, 2).unwrap().expect("two loops are two disjoint cycles");
        assert_eq!(p, vec![Cycle::new(vec![0]), Cycle::new(vec![1])]);
    }

    #[test]
    fn search_is_deterministic() {
        let g = petersen();
        let a = ie_search(&g, 1).unwrap();
        let b = ie_search(&g, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.is_some());
    }

    #[test]
    fn relabeling_preserves_the_signed_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0E1A8E);
        for _ in 0..4 {
            let n = 7u32;
            let g = random_simple(&mut rng, n, 10);
            let mut relabeled = MultiGraph::new(n as usize);
            for (u, v, m) in g.edge_pairs() {
                for _ in 0..m {
                    relabeled.add_edge(n - 1 - u, n - 1 - v);
                }
            }
            for k in 1..=2usize {
                assert_eq!(
                    ie_signed_sum(&g, k).unwrap(),
                    ie_signed_sum(&relabeled, k).unwrap(),
                    "the signed sum must be label-invariant"
                );
            }
        }
    }

    #[test]
    fn wide_and_narrow_integer_paths_agree() {
        let dp = DpGraph::build(&petersen());
        let binom = Pascal::up_to(dp.n);
        assert_eq!(
            masked_sums::<u128>(&dp, 2, &binom),
            masked_sums::<BigUint>(&dp, 2, &binom)
        );
    }
}
