//! Degree and multiplicity kernelization.
//!
//! Three rewriting rules are applied to a fixed point:
//!
//! * **degree ≤ 1** — the vertex lies on no cycle; delete it.
//! * **degree 2, no self-loop** — the vertex merely subdivides a connection;
//!   delete it and join its two (not necessarily distinct) neighbors with a
//!   new edge.  When the two incident copies go to the same neighbor the new
//!   edge is a self-loop there.
//! * **multiplicity > 2** — extra parallel copies beyond two never help a
//!   packing (two copies already realize the length-2 cycle); clamp to 2,
//!   keeping the two lowest-indexed copies.
//!
//! The fixed point has minimum degree ≥ 3 except at loop-carrying vertices,
//! and no pair of multiplicity above 2.  Maximum packing size is preserved
//! exactly, and — crucially — every surviving edge copy remembers the path of
//! input vertices it stands for, so any cycle found in the reduced graph
//! lifts to a cycle of the input on the original vertices.

use std::collections::{BTreeMap, BTreeSet};

use crate::multigraph::{Cycle, MultiGraph, TraceEvent, TransformTrace, VertexId};

/// Per-copy provenance: `origin[(u,v)][i]` is the input-graph path that the
/// `i`-th surviving copy of `{u,v}` stands for, oriented `u → … → v` with
/// `u ≤ v` (a key `(v,v)` describes self-loops; its paths are closed,
/// `v → … → v`).  Interior vertices of these paths are reduced-away input
/// vertices, pairwise disjoint across copies.
pub type EdgeOrigins = BTreeMap<(VertexId, VertexId), Vec<Vec<VertexId>>>;

/// Outcome of [`reduce`]: the kernel plus everything needed to lift results
/// back to the input graph.
#[derive(Clone, Debug)]
pub struct ReduceResult {
    /// The reduced graph (same id space as the input).
    pub reduced: MultiGraph,
    /// Input vertices that survive, i.e. the vertex set of `reduced`.
    pub pre_image: BTreeSet<VertexId>,
    /// Provenance paths for every surviving edge copy.
    pub edge_origin: EdgeOrigins,
    /// For every input vertex: the surviving vertex standing for it —
    /// itself if it survived, an endpoint of the surviving edge it was
    /// dissolved into, or `None` if nothing remembers it.
    pub representative: BTreeMap<VertexId, Option<VertexId>>,
    /// Replayable log of the rewriting steps.
    pub trace: TransformTrace,
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Fetches origin path for one copy of `{a,b}`, oriented `a → b`.
fn oriented(origins: &EdgeOrigins, a: VertexId, b: VertexId, copy: usize) -> Vec<VertexId> {
    let k = key(a, b);
    let p = &origins[&k][copy];
    if k.0 == a {
        p.clone()
    } else {
        p.iter().rev().copied().collect()
    }
}

/// Runs the kernelization to its fixed point.
pub fn reduce(g: &MultiGraph) -> ReduceResult {
    let mut w = g.clone();
    let mut trace = TransformTrace::default();
    let mut origins: EdgeOrigins = BTreeMap::new();
    for (u, v, m) in w.edge_pairs() {
        origins.insert((u, v), (0..m).map(|_| vec![u, v]).collect());
    }
    for v in w.loop_vertices() {
        origins.insert((v, v), (0..w.loops_at(v)).map(|_| vec![v, v]).collect());
    }

    let mut deg_q: BTreeSet<VertexId> = w.live_ids().filter(|&v| w.degree(v) <= 2).collect();
    let mut mult_q: BTreeSet<(VertexId, VertexId)> =
        w.edge_pairs().iter().filter(|&&(_, _, m)| m > 2).map(|&(u, v, _)| (u, v)).collect();

    loop {
        if let Some(&(u, v)) = mult_q.iter().next() {
            mult_q.remove(&(u, v));
            if !w.is_alive(u) || !w.is_alive(v) {
                continue;
            }
            let m = w.multiplicity(u, v);
            if m > 2 {
                trace.push(TraceEvent::MultiplicityClamped { u, v, old: m, new: 2 });
                w.set_multiplicity(u, v, 2);
                origins.get_mut(&(u, v)).unwrap().truncate(2);
                deg_q.insert(u);
                deg_q.insert(v);
            }
            continue;
        }
        let Some(&v) = deg_q.iter().next() else { break };
        deg_q.remove(&v);
        if !w.is_alive(v) {
            continue;
        }
        let d = w.degree(v);
        if d <= 1 {
            let nbrs: Vec<VertexId> = w.neighbor_ids(v).collect();
            for u in &nbrs {
                origins.remove(&key(v, *u));
            }
            origins.remove(&(v, v));
            w.delete_vertex(v);
            trace.push(TraceEvent::VertexDeleted { v });
            for u in nbrs {
                if w.degree(u) <= 2 {
                    deg_q.insert(u);
                }
            }
        } else if d == 2 && w.loops_at(v) == 0 {
            let nbrs: Vec<(VertexId, u32)> = w.neighbors(v).collect();
            if nbrs.len() == 1 {
                // Both copies go to the same neighbor u: the parallel pair
                // through v is a cycle; it becomes a self-loop at u whose
                // origin keeps both strands.
                let u = nbrs[0].0;
                debug_assert_eq!(nbrs[0].1, 2);
                let p0 = oriented(&origins, u, v, 0);
                let p1 = oriented(&origins, u, v, 1);
                let mut path = p0;
                path.extend(p1.iter().rev().skip(1));
                origins.remove(&key(u, v));
                w.delete_vertex(v);
                w.add_edge(u, u);
                trace.push(TraceEvent::VertexDeleted { v });
                trace.push(TraceEvent::EdgeAdded { u, v: u, label: "pair-collapse-loop" });
                trace.push(TraceEvent::PathCollapsed { u, v: u, path: path.clone() });
                origins.entry((u, u)).or_default().push(path);
                deg_q.insert(u);
            } else {
                // Two distinct neighbors a, b, one copy each: splice their
                // origin paths through v into a bypass edge {a,b}.
                let (a, b) = (nbrs[0].0, nbrs[1].0);
                debug_assert_eq!(nbrs[0].1, 1);
                debug_assert_eq!(nbrs[1].1, 1);
                let pa = oriented(&origins, a, v, 0);
                let pb = oriented(&origins, v, b, 0);
                let mut path = pa;
                path.extend(pb.iter().skip(1));
                origins.remove(&key(a, v));
                origins.remove(&key(b, v));
                w.delete_vertex(v);
                w.add_edge(a, b);
                trace.push(TraceEvent::VertexDeleted { v });
                trace.push(TraceEvent::EdgeAdded { u: a, v: b, label: "degree-two-bypass" });
                let k = key(a, b);
                let stored =
                    if k.0 == a { path.clone() } else { path.iter().rev().copied().collect() };
                trace.push(TraceEvent::PathCollapsed { u: k.0, v: k.1, path: stored.clone() });
                origins.entry(k).or_default().push(stored);
                let m = w.multiplicity(a, b);
                if m > 2 {
                    mult_q.insert(k);
                }
                if w.degree(a) <= 2 {
                    deg_q.insert(a);
                }
                if w.degree(b) <= 2 {
                    deg_q.insert(b);
                }
            }
        }
    }

    let pre_image = w.vertex_set();
    let mut representative: BTreeMap<VertexId, Option<VertexId>> =
        g.live_ids().map(|v| (v, None)).collect();
    for &v in &pre_image {
        representative.insert(v, Some(v));
    }
    for (&(u, v), paths) in &origins {
        for p in paths {
            for &x in &p[1..p.len() - 1] {
                representative.insert(x, Some(u.min(v)));
            }
        }
    }
    ReduceResult { reduced: w, pre_image, edge_origin: origins, representative, trace }
}

impl ReduceResult {
    /// Lifts a cycle of the reduced graph to a cycle of the input graph by
    /// expanding each traversed edge copy into its origin path.
    ///
    /// Interior vertices of distinct copies are disjoint from each other and
    /// from surviving vertices, so disjoint cycles lift to disjoint cycles.
    pub fn lift_cycle(&self, c: &Cycle) -> Cycle {
        assert!(c.is_valid_in(&self.reduced), "cycle must be valid in the reduced graph");
        expand_cycle(&self.edge_origin, c)
    }
}

/// Expands a cycle along per-copy origin paths: each traversed edge copy is
/// replaced by the path it stands for (a length-2 cycle draws on copies 0 and
/// 1, everything else on copy 0 of each traversed pair).  Shared by the
/// kernelization and the chain-contraction machinery.
pub fn expand_cycle(origins: &EdgeOrigins, c: &Cycle) -> Cycle {
    let vs = c.vertices();
    match vs {
        [v] => {
            let p = &origins[&(*v, *v)][0];
            Cycle::new(p[..p.len() - 1].to_vec())
        }
        [u, v] => {
            let p0 = oriented(origins, *u, *v, 0);
            let p1 = oriented(origins, *u, *v, 1);
            let mut seq = p0;
            seq.extend(p1.iter().rev().skip(1).take(p1.len() - 2));
            Cycle::new(seq)
        }
        _ => {
            let mut seq = Vec::new();
            for (a, b) in c.steps() {
                let p = oriented(origins, a, b, 0);
                seq.extend_from_slice(&p[..p.len() - 1]);
            }
            Cycle::new(seq)
        }
    }
}

/// Projects a feedback vertex set of the reduction's input onto the reduced
/// graph: survivors map to themselves, dissolved vertices to an endpoint of
/// the surviving edge copy holding them, and vertices nothing remembers are
/// dropped.  Every reduced-graph cycle avoiding the projection lifts to an
/// input cycle avoiding `f`, so the projection is again a feedback vertex
/// set (asserted).
pub fn project_fvs(res: &ReduceResult, f: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let out: BTreeSet<VertexId> =
        f.iter().filter_map(|v| res.representative.get(v).copied().flatten()).collect();
    assert!(
        crate::multigraph::is_fvs(&res.reduced, &out),
        "projected set must remain a feedback vertex set"
    );
    out
}

/// Structural audit of a [`ReduceResult`] against its input, used by tests:
/// degree/multiplicity fixed point, origin bookkeeping, trace replay.
pub fn check_reduce_invariants(g: &MultiGraph, res: &ReduceResult) {
    let w = &res.reduced;
    for v in w.live_ids() {
        assert!(
            w.degree(v) >= 3 || w.loops_at(v) > 0,
            "vertex {v} has degree {} yet carries no loop",
            w.degree(v)
        );
    }
    for (u, v, m) in w.edge_pairs() {
        assert!(m <= 2, "pair {{{u},{v}}} has multiplicity {m} > 2");
        assert_eq!(res.edge_origin[&(u, v)].len(), m as usize);
    }
    for v in w.loop_vertices() {
        assert_eq!(res.edge_origin[&(v, v)].len(), w.loops_at(v) as usize);
    }
    assert_eq!(res.pre_image, w.vertex_set());
    let mut interior_seen: BTreeSet<VertexId> = BTreeSet::new();
    for (&(u, v), paths) in &res.edge_origin {
        for p in paths {
            assert_eq!(p[0], u);
            assert_eq!(p[p.len() - 1], v);
            for &x in &p[1..p.len() - 1] {
                assert!(!res.pre_image.contains(&x), "origin interior {x} survived");
                assert!(interior_seen.insert(x), "origin interior {x} appears twice");
                assert!(g.is_alive(x), "origin interior {x} is not an input vertex");
            }
        }
    }
    for v in g.live_ids() {
        match res.representative[&v] {
            Some(t) if v == t => assert!(res.pre_image.contains(&v)),
            Some(t) => assert!(res.pre_image.contains(&t)),
            None => assert!(!res.pre_image.contains(&v)),
        }
    }
    assert_eq!(&res.trace.replay(g), w, "trace replay must reproduce the reduced graph");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::verify_packing;
    use crate::oracle::max_cycle_packing_bruteforce;

    #[test]
    fn parallel_bundle_collapses_to_a_loop() {
        let g = MultiGraph::from_edges(2, &[(0, 1); 5]);
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        assert_eq!(res.reduced.num_vertices(), 1);
        let v = res.reduced.live_ids().next().unwrap();
        assert_eq!(res.reduced.loops_at(v), 1);
        let lifted = res.lift_cycle(&Cycle::new(vec![v]));
        assert!(lifted.is_valid_in(&g));
    }

    #[test]
    fn triangle_collapses_to_a_loop_that_lifts_back() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        assert_eq!(res.reduced.num_vertices(), 1);
        let v = res.reduced.live_ids().next().unwrap();
        let lifted = res.lift_cycle(&Cycle::new(vec![v]));
        assert_eq!(lifted, Cycle::new(vec![0, 1, 2]));
    }

    #[test]
    fn path_disappears_entirely() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        assert_eq!(res.reduced.num_vertices(), 0);
        assert!(res.representative.values().all(|r| r.is_none()));
    }

    #[test]
    fn k4_is_already_reduced() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        assert_eq!(res.reduced, g);
        assert!(res.trace.events.is_empty());
    }

    #[test]
    fn reduce_is_idempotent() {
        let g = MultiGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 2), (6, 7)],
        );
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        let again = reduce(&res.reduced);
        assert_eq!(again.reduced, res.reduced);
        assert!(again.trace.events.is_empty());
    }

    #[test]
    fn reduction_preserves_max_packing_on_figure_eight() {
        // Two triangles sharing vertex 2, plus a pendant path.
        let g = MultiGraph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (5, 6)],
        );
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        let (k_in, _) = max_cycle_packing_bruteforce(&g).unwrap();
        let (k_out, p) = max_cycle_packing_bruteforce(&res.reduced).unwrap();
        assert_eq!(k_in, k_out);
        let lifted: Vec<Cycle> = p.iter().map(|c| res.lift_cycle(c)).collect();
        assert!(verify_packing(&g, &lifted, k_out));
    }

    #[test]
    fn two_cycle_lift_uses_both_strands() {
        // Square 0-1-2-3: reduces to a double edge or a loop; whichever form,
        // lifting the short cycle must recover all four vertices.
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        assert_eq!(res.reduced.num_vertices(), 1);
        let v = res.reduced.live_ids().next().unwrap();
        let lifted = res.lift_cycle(&Cycle::new(vec![v]));
        assert_eq!(lifted.len(), 4);
        assert!(lifted.is_valid_in(&g));
    }

    #[test]
    fn project_fvs_examples() {
        // Theta graph: 0-1 via three internally disjoint paths.
        let g = MultiGraph::from_edges(
            5,
            &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)],
        );
        let res = reduce(&g);
        check_reduce_invariants(&g, &res);
        // {2} is an FVS of g? No: 0-3-1-4-0 remains. {0} is.
        let f = BTreeSet::from([0]);
        let proj = project_fvs(&res, &f);
        assert!(crate::multigraph::is_fvs(&res.reduced, &proj));
        assert!(proj.len() <= f.len());
        // A dissolved path vertex projects to an endpoint of its edge.
        let f2 = BTreeSet::from([0, 2]);
        let proj2 = project_fvs(&res, &f2);
        assert!(proj2.iter().all(|v| res.pre_image.contains(v)));
    }

    #[test]
    fn observation_adding_edges_grows_reduction_boundedly() {
        // |reduce(G + E')| ≤ |reduce(G)| + 2|E'| on a fixed example.
        let g = MultiGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
        );
        let base = reduce(&g).reduced.num_vertices();
        let mut g2 = g.clone();
        g2.add_edge(0, 7); // one extra edge closes the path into a cycle
        let grown = reduce(&g2).reduced.num_vertices();
        assert!(grown <= base + 2);
    }
}
