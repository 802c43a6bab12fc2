//! The high-girth core decomposition.
//!
//! Given a packing target `k`, the graph is split into three layers:
//!
//! * a small hitting set `S` of short-cycle vertices, found by repeatedly
//!   removing the vertices of a shortest cycle of the kernelized graph until
//!   that graph's girth exceeds a target `g` (or `k` disjoint cycles fall out
//!   of the process, settling the instance outright);
//! * the *core* `R`: the vertices surviving kernelization of `G − S`, whose
//!   count is bounded by a function of `k` alone once the girth target is met
//!   (checked here as [`check_core_size_bound`]);
//! * the *forest* `T = G − S − R`, which can be arbitrarily large but — after
//!   a solution-preserving pruning of its low-degree vertices
//!   ([`prune_low_degree`]) — has only boundedly many leaves, branch
//!   vertices, and maximal degree-two paths.
//!
//! [`core_decomposition`] packages the three layers plus the path structure
//! of `T` into a [`CoreStructure`], asserting every counting invariant the
//! downstream guessing stage relies on.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::erdos_posa::{cycles_or_fvs, theorem2_constant, EpOutcome};
use crate::girth::{greedy_fvs, shortest_cycle_with_fvs};
use crate::multigraph::{
    ceil_log2_clamped, contract_edge, verify_packing, MultiGraph, Packing, TraceEvent,
    TransformTrace, VertexId,
};
use crate::oracle;
use crate::reduce::{project_fvs, reduce};

/// Girth target as a function of the packing target: 7 for `k ≤ 4`, and
/// `max(7, ⌊48·log₂k / log₂log₂k⌋ + 6)` beyond.
pub fn girth_target(k: usize) -> u64 {
    if k <= 4 {
        return 7;
    }
    let lk = (k as f64).log2();
    let g = (48.0 * lk / lk.log2()).floor() as u64 + 6;
    g.max(7)
}

/// Result of [`find_s_set`]: the search either settles the whole instance
/// with a packing or delivers the hitting set.
#[derive(Clone, Debug)]
pub enum SSetOutcome {
    /// `k` vertex-disjoint cycles, verified against the input.
    Packing(Packing),
    /// `S` with `girth(reduce(G − S)) > g` and `|S| < g·k`.
    SSet(BTreeSet<VertexId>),
}

/// Iterated short-cycle removal: either `k` disjoint cycles of `g`, or a set
/// `S` of fewer than `girth_bound·k` vertices such that the kernelization of
/// `g − S` has girth above `girth_bound` (loops count as length 1, parallel
/// pairs as length 2).
///
/// Each round kernelizes the current graph, finds a shortest cycle there
/// (driven by a feedback vertex set from the cycles-or-feedback dichotomy),
/// and moves that cycle's vertices into `S`. A round that finds no cycle of
/// length ≤ `girth_bound` ends the search; `k` successful rounds yield `k`
/// disjoint cycles instead (each round's cycle lifts into the current graph,
/// and its interior vertices dangle once the kernel vertices are removed, so
/// later rounds cannot reuse them — certified by verification regardless).
pub fn find_s_set(g: &MultiGraph, k: usize, girth_bound: u64) -> SSetOutcome {
    assert!(k >= 1, "packing target must be positive");
    assert!(girth_bound > 6, "girth bound must exceed 6");
    let fvs = match cycles_or_fvs(g, k) {
        EpOutcome::Cycles(p) => {
            assert!(verify_packing(g, &p, k));
            return SSetOutcome::Packing(p);
        }
        EpOutcome::Fvs(f) => f,
    };
    let mut s: BTreeSet<VertexId> = BTreeSet::new();
    let mut found: Packing = Vec::new();
    for _ in 0..k {
        let cur = g.without_vertices(&s);
        let rr = reduce(&cur);
        let f_cur: BTreeSet<VertexId> =
            fvs.iter().copied().filter(|v| !s.contains(v)).collect();
        let f_red = project_fvs(&rr, &f_cur);
        let shortest = shortest_cycle_with_fvs(&rr.reduced, &f_red)
            .expect("projection of a feedback vertex set drives the search");
        match shortest {
            Some(c) if (c.len() as u64) <= girth_bound => {
                found.push(rr.lift_cycle(&c));
                s.extend(c.vertices().iter().copied());
            }
            _ => {
                certify_s_set(g, &s, k, girth_bound);
                return SSetOutcome::SSet(s);
            }
        }
    }
    assert!(verify_packing(g, &found, k), "lifted short cycles must certify");
    SSetOutcome::Packing(found)
}

/// Runtime certification of [`find_s_set`]'s postconditions: the size bound
/// always, the girth claim via the brute-force oracle when the kernel is
/// small enough for it.
fn certify_s_set(g: &MultiGraph, s: &BTreeSet<VertexId>, k: usize, girth_bound: u64) {
    assert!((s.len() as u64) < girth_bound * k as u64, "|S| must stay below g·k");
    let rr = reduce(&g.without_vertices(s));
    if rr.reduced.num_vertices() <= 40 {
        let girth = oracle::girth_bruteforce(&rr.reduced)
            .expect("oracle girth is within its size cap");
        assert!(
            girth.is_none_or(|len| len as u64 > girth_bound),
            "kernel girth must exceed the bound"
        );
    }
}

/// `true` iff the kernel of `G − S` meets the high-girth size bound
/// `(2ckL)^(1 + 6/(g−6)) + 3ckL` (with `L = ⌈log₂ max(k,2)⌉` and `c` the
/// dichotomy constant), and additionally `3ckL + 2ckL^1.5` when `g` is the
/// standard girth target. Used as a runtime assertion, never as control
/// flow.
pub fn check_core_size_bound(
    g: &MultiGraph,
    s: &BTreeSet<VertexId>,
    k: usize,
    girth_bound: u64,
) -> bool {
    check_core_size_bound_with_constant(g, s, k, girth_bound, theorem2_constant())
}

/// [`check_core_size_bound`] with an explicit dichotomy constant (tests use
/// small constants to make the inequality non-vacuous at desk scale).
pub fn check_core_size_bound_with_constant(
    g: &MultiGraph,
    s: &BTreeSet<VertexId>,
    k: usize,
    girth_bound: u64,
    c: u64,
) -> bool {
    let n = reduce(&g.without_vertices(s)).reduced.num_vertices() as f64;
    let ckl = c as f64 * k as f64 * ceil_log2_clamped(k) as f64;
    let l = ceil_log2_clamped(k) as f64;
    let g_f = girth_bound as f64;
    if n > (2.0 * ckl).powf(1.0 + 6.0 / (g_f - 6.0)) + 3.0 * ckl {
        return false;
    }
    if girth_bound == girth_target(k) && n > 3.0 * ckl + 2.0 * ckl * l.sqrt() {
        return false;
    }
    true
}

/// Output of [`prune_low_degree`].
#[derive(Clone, Debug)]
pub struct PruneResult {
    /// The pruned graph `(G / E_X) − V_X`.
    pub pruned: MultiGraph,
    /// Deleted vertices (`V_X`).
    pub deleted: BTreeSet<VertexId>,
    /// Contracted edges as `(survivor, removed)`, in application order
    /// (`E_X`).
    pub contracted: Vec<(VertexId, VertexId)>,
    /// Replayable log of the rewriting steps.
    pub trace: TransformTrace,
}

/// Degree of `v` inside `G − X` (loops at `v` count twice, edges into `X`
/// not at all).
fn degree_outside(g: &MultiGraph, x: &BTreeSet<VertexId>, v: VertexId) -> u32 {
    g.neighbors(v).filter(|(u, _)| !x.contains(u)).map(|(_, m)| m).sum::<u32>()
        + 2 * g.loops_at(v)
}

/// Does `w` qualify for the pair `(u, v)` — adjacent to both when `u ≠ v`,
/// or tied to `u` by a multiplicity-≥2 edge when `u = v`?
fn qualifies(g: &MultiGraph, w: VertexId, (u, v): (VertexId, VertexId)) -> bool {
    if u == v {
        g.multiplicity(w, u) >= 2
    } else {
        g.multiplicity(w, u) >= 1 && g.multiplicity(w, v) >= 1
    }
}

/// Solution-preserving removal of low-degree vertices outside `X`.
///
/// For each unordered pair over `X`, up to `2|X| + 1` low-degree vertices
/// attached to both members (or doubly to one, for the diagonal) are marked
/// and kept; every other vertex of degree ≤ 1 in `G − X` is deleted (if
/// isolated there) or has its unique outside edge contracted. Sweeps repeat,
/// marking newly low-degree vertices against still-unfilled pair budgets,
/// until no unmarked low-degree vertex remains. A maximum cycle packing
/// survives these operations: a packing cycle through an unmarked low-degree
/// vertex can be rerouted through a marked stand-in attached to the same
/// pair, because at most `2|X|` marked vertices can be spent by the packing
/// itself.
///
/// The result keeps the instance's answer for every `k` and leaves at most
/// `|X|²(2|X| + 1)` vertices of degree ≤ 1 in the pruned graph minus `X`.
pub fn prune_low_degree(g: &MultiGraph, x: &BTreeSet<VertexId>, _k: usize) -> PruneResult {
    let cap = 2 * x.len() + 1;
    let mut cur = g.clone();
    let mut marked: BTreeSet<VertexId> = BTreeSet::new();
    let mut deleted: BTreeSet<VertexId> = BTreeSet::new();
    let mut contracted: Vec<(VertexId, VertexId)> = Vec::new();
    let mut trace = TransformTrace::default();

    let pairs: Vec<(VertexId, VertexId)> = {
        let xs: Vec<VertexId> = x.iter().copied().collect();
        let mut ps = Vec::new();
        for (i, &u) in xs.iter().enumerate() {
            for &v in &xs[i..] {
                ps.push((u, v));
            }
        }
        ps
    };
    let low = |g: &MultiGraph, marked: &BTreeSet<VertexId>| -> Vec<VertexId> {
        g.live_ids()
            .filter(|v| !x.contains(v) && !marked.contains(v) && degree_outside(g, x, *v) <= 1)
            .collect()
    };
    // Initial marking: per pair, lowest ids first, counting already-marked
    // members toward the quota, so each pair ends fully marked or with ≥ cap
    // marked members.
    for &p in &pairs {
        let members: Vec<VertexId> = cur
            .live_ids()
            .filter(|&w| {
                !x.contains(&w) && degree_outside(&cur, x, w) <= 1 && qualifies(&cur, w, p)
            })
            .collect();
        let mut have = members.iter().filter(|w| marked.contains(w)).count();
        for &w in &members {
            if have >= cap {
                break;
            }
            if marked.insert(w) {
                have += 1;
            }
        }
    }
    loop {
        let mut changed = false;
        for v in low(&cur, &marked) {
            if degree_outside(&cur, x, v) == 0 {
                cur.delete_vertex(v);
                trace.push(TraceEvent::VertexDeleted { v });
                deleted.insert(v);
                changed = true;
            }
        }
        for v in low(&cur, &marked) {
            // Lazy revalidation: an earlier contraction in this sweep may
            // have dropped v to degree 0; the next sweep's deletion pass
            // picks it up.
            if !cur.is_alive(v) || degree_outside(&cur, x, v) != 1 {
                continue;
            }
            let z = cur
                .neighbor_ids(v)
                .find(|u| !x.contains(u))
                .expect("degree-one vertex has its outside neighbor");
            let (next, t) = contract_edge(&cur, z, v).expect("live endpoints, live edge");
            cur = next;
            trace.extend(t);
            contracted.push((z, v));
            changed = true;
        }
        if !changed {
            break;
        }
        // Mark newly low-degree vertices against unfilled pair budgets. A
        // pair is unfilled while fewer than cap marked vertices qualify for
        // it in the current graph.
        for w in low(&cur, &marked) {
            let qualifying = |p: (VertexId, VertexId)| {
                marked.iter().filter(|&&m| qualifies(&cur, m, p)).count() < cap
                    && qualifies(&cur, w, p)
            };
            if pairs.iter().any(|&p| qualifying(p)) {
                marked.insert(w);
            }
        }
    }
    let low_left = cur
        .live_ids()
        .filter(|v| !x.contains(v) && degree_outside(&cur, x, *v) <= 1)
        .count();
    assert!(
        low_left <= x.len() * x.len() * cap,
        "pruned graph keeps at most |X|²(2|X|+1) low-degree vertices"
    );
    PruneResult { pruned: cur, deleted, contracted, trace }
}

/// The three-layer decomposition plus the path structure of the forest.
#[derive(Clone, Debug)]
pub struct CoreStructure {
    /// The hitting set.
    pub s: BTreeSet<VertexId>,
    /// Core vertices: survivors of the kernelization of the pruned `G − S`.
    pub r: BTreeSet<VertexId>,
    /// Forest vertices of degree ≤ 1 in the forest.
    pub t_leq1: BTreeSet<VertexId>,
    /// Forest vertices of degree exactly 2 in the forest.
    pub t2: BTreeSet<VertexId>,
    /// Forest vertices of degree ≥ 3 in the forest.
    pub t_geq3: BTreeSet<VertexId>,
    /// Maximal degree-two paths of the forest, each listed end to end
    /// starting from its smaller endpoint, ordered by first vertex.
    pub paths: Vec<Vec<VertexId>>,
    /// Path vertices with at least one neighbor in `r`.
    pub z_p: BTreeSet<VertexId>,
    /// The paths after removing `z_p`, split at the removals.
    pub p_star: Vec<Vec<VertexId>>,
}

impl CoreStructure {
    /// All vertices on maximal degree-two paths (= `t2`).
    pub fn path_vertices(&self) -> BTreeSet<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }

    /// All vertices on `p_star` paths.
    pub fn p_star_vertices(&self) -> BTreeSet<VertexId> {
        self.p_star.iter().flatten().copied().collect()
    }
}

/// Errors of [`core_decomposition`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    /// The kernelization of `G − S` contains a cycle of length ≤ 6, so the
    /// forest-structure counting arguments do not apply.
    #[error("kernel of G - S has girth {0} ≤ 6")]
    GirthTooSmall(usize),
}

/// Decomposes `g` around the hitting set `s`: prunes low-degree forest
/// vertices (solution-preserving), recomputes the core on the pruned graph,
/// and returns the pruned graph with the fully-checked [`CoreStructure`]
/// and the pruning trace.
pub fn core_decomposition(
    g: &MultiGraph,
    s: &BTreeSet<VertexId>,
    k: usize,
) -> Result<(MultiGraph, CoreStructure, TransformTrace), DecomposeError> {
    let rr0 = reduce(&g.without_vertices(s));
    let shortest = shortest_cycle_with_fvs(&rr0.reduced, &greedy_fvs(&rr0.reduced))
        .expect("greedy feedback set drives the girth check");
    if let Some(c) = shortest {
        if c.len() <= 6 {
            return Err(DecomposeError::GirthTooSmall(c.len()));
        }
    }
    let x: BTreeSet<VertexId> = s.union(&rr0.pre_image).copied().collect();
    let prune = prune_low_degree(g, &x, k);
    let pruned = prune.pruned;

    let rr = reduce(&pruned.without_vertices(s));
    debug_assert_eq!(
        rr.pre_image, rr0.pre_image,
        "pruning must not disturb the kernel's survivors"
    );
    let r = rr.pre_image.clone();
    let t_vertices: BTreeSet<VertexId> =
        pruned.live_ids().filter(|v| !s.contains(v) && !r.contains(v)).collect();
    let forest = pruned.induced(&t_vertices);
    let mut t_leq1 = BTreeSet::new();
    let mut t2 = BTreeSet::new();
    let mut t_geq3 = BTreeSet::new();
    for &v in &t_vertices {
        match forest.degree(v) {
            0 | 1 => t_leq1.insert(v),
            2 => t2.insert(v),
            _ => t_geq3.insert(v),
        };
    }
    let paths = degree_two_paths(&forest, &t2);
    let mut z_p = BTreeSet::new();
    for p in &paths {
        for &v in p {
            if pruned.neighbor_ids(v).any(|u| r.contains(&u)) {
                z_p.insert(v);
            }
        }
    }
    let mut p_star: Vec<Vec<VertexId>> = Vec::new();
    for p in &paths {
        for piece in p.split(|v| z_p.contains(v)) {
            if !piece.is_empty() {
                p_star.push(piece.to_vec());
            }
        }
    }
    let core = CoreStructure { s: s.clone(), r, t_leq1, t2, t_geq3, paths, z_p, p_star };
    check_core_invariants(&pruned, &core, x.len());
    Ok((pruned, core, prune.trace))
}

/// Maximal degree-two paths: components of the forest restricted to its
/// degree-2 vertices, walked end to end.
fn degree_two_paths(forest: &MultiGraph, t2: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut paths = Vec::new();
    for &v in t2 {
        if seen.contains(&v) {
            continue;
        }
        // Collect the component of v within t2.
        let mut comp = vec![v];
        seen.insert(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in forest.neighbor_ids(u) {
                if t2.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        // Walk it from its smaller end (inside-t2 degree ≤ 1 there).
        let inner_deg = |u: VertexId| {
            forest.neighbor_ids(u).filter(|w| t2.contains(w) && comp.contains(w)).count()
        };
        let &start = comp
            .iter()
            .filter(|&&u| inner_deg(u) <= 1)
            .min()
            .expect("an acyclic component has an end");
        let mut path = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = forest
                .neighbor_ids(cur)
                .find(|&w| t2.contains(&w) && Some(w) != prev && comp.contains(&w));
            match next {
                Some(w) => {
                    path.push(w);
                    prev = Some(cur);
                    cur = w;
                }
                None => break,
            }
        }
        assert_eq!(path.len(), comp.len(), "degree-two component must be a path");
        paths.push(path);
    }
    paths.sort_by_key(|p| p[0]);
    paths
}

/// Asserts every counting invariant of a [`CoreStructure`] against its host
/// graph. `x_size` is the size of the set the pruning ran against.
pub fn check_core_invariants(g: &MultiGraph, core: &CoreStructure, x_size: usize) {
    let t_all: BTreeSet<VertexId> = core
        .t_leq1
        .iter()
        .chain(&core.t2)
        .chain(&core.t_geq3)
        .copied()
        .collect();
    assert!(g.induced(&t_all).is_acyclic(), "forest layer must be acyclic");
    for p in &core.paths {
        let attached = p
            .iter()
            .filter(|&&v| g.neighbor_ids(v).any(|u| core.r.contains(&u)))
            .count();
        assert!(attached <= 2, "a degree-two path touches the core at ≤ 2 vertices");
    }
    assert!(core.z_p.len() <= 2 * core.paths.len());
    assert!(core.p_star.len() <= 3 * core.paths.len());
    // Forest counting; strict except at the empty boundary.
    assert!(
        core.t_geq3.len() < core.t_leq1.len()
            || (core.t_geq3.is_empty() && core.t_leq1.is_empty()),
        "forests have more leaves than branch vertices"
    );
    assert!(
        core.paths.len() < core.t_leq1.len() + core.t_geq3.len()
            || (core.paths.is_empty() && core.t_leq1.is_empty() && core.t_geq3.is_empty()),
        "forests have more ends than degree-two paths"
    );
    // Path vertices outside z_p have no core neighbors (their other
    // neighbors lie in the forest or the hitting set; path *endpoints* may
    // legitimately touch leaf/branch forest vertices).
    for &v in &core.p_star_vertices() {
        assert!(
            !g.neighbor_ids(v).any(|u| core.r.contains(&u)),
            "split paths must not touch the core"
        );
    }
    assert!(
        core.t_leq1.len() <= x_size * x_size * (2 * x_size + 1),
        "pruning bounds the forest's low-degree vertices"
    );
}
