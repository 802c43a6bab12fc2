//! The cycles-or-feedback dichotomy: either `k` pairwise vertex-disjoint
//! cycles, or a feedback vertex set of size at most `c·k·⌈log₂ max(k,2)⌉`.
//!
//! The route goes through a maximal subgraph `H` of degrees two and three.
//! Its degree-3 vertices `V₃`, the degree-2 vertices with two edges into a
//! single outside component (`V₂*`), one piercing vertex per bare-cycle
//! component of `H`, and the degree-2 vertices carrying an unabsorbed
//! self-loop together hit every cycle of the graph.  When that hitting set is
//! small it is the answer; when it is large, `V₃` is large, and contracting
//! `H`'s degree-2 chains yields a cubic multigraph big enough that repeatedly
//! deleting two vertices (with degree-preserving repairs) still leaves room
//! to greedily extract `k` short disjoint cycles, each of which survives the
//! reverse replacements back into the original graph.
//!
//! Every compression step records exactly which paths its repair edges stand
//! for, so the extraction is fully certifiable: lifted cycles are validated
//! against the input graph before being returned.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::girth::{find_any_cycle, greedy_fvs, shortest_cycle_with_fvs};
use crate::multigraph::{
    ceil_log2_clamped, is_fvs, verify_packing, Cycle, MultiGraph, Packing, VertexId,
};
use crate::reduce::{expand_cycle, EdgeOrigins};

/// Smallest constant `c` (beyond the trivial regime) with `c ≥ 150·log₂ c`,
/// found by upward scan: the inequality fails on `2..=1596` and holds from
/// `1597` on.
pub fn theorem2_constant() -> u64 {
    let mut c = 2u64;
    loop {
        if c as f64 >= 150.0 * (c as f64).log2() {
            return c;
        }
        c += 1;
    }
}

/// A maximal subgraph in which every vertex has degree 2 or 3.
#[derive(Clone, Debug)]
pub struct Deg23Subgraph {
    /// The subgraph itself (only member vertices are alive).
    pub graph: MultiGraph,
    /// Its vertex set.
    pub vertices: BTreeSet<VertexId>,
}

/// Grows a maximal degree-{2,3} subgraph, or `None` when `g` is acyclic.
///
/// Starting from any cycle, three absorptions are applied to a fixed point:
///
/// 1. an unused edge between two distinct degree-2 members (both go to 3);
/// 2. a path through a component of `g − V(H)` joining two distinct degree-2
///    members (ends go to 3, interior joins at degree 2);
/// 3. a cycle inside a component of `g − V(H)` (a new component of `H`).
///
/// At the fixed point every component of `g − V(H)` is acyclic and is
/// adjacent to at most one degree-2 member — the properties the dichotomy's
/// counting lives on.
pub fn maximal_deg23_subgraph(g: &MultiGraph) -> Option<Deg23Subgraph> {
    let seed = find_any_cycle(g)?;
    let mut h = MultiGraph::new(g.id_bound() as usize);
    for v in 0..h.id_bound() {
        if !g.is_alive(v) {
            h.delete_vertex(v);
        }
    }
    let mut members: BTreeSet<VertexId> = BTreeSet::new();
    let absorb_cycle = |h: &mut MultiGraph, members: &mut BTreeSet<VertexId>, c: &Cycle| {
        members.extend(c.vertices().iter().copied());
        match c.vertices() {
            [v] => h.add_edge(*v, *v),
            [u, v] => {
                h.add_edge(*u, *v);
                h.add_edge(*u, *v);
            }
            _ => {
                for (a, b) in c.steps() {
                    h.add_edge(a, b);
                }
            }
        }
    };
    absorb_cycle(&mut h, &mut members, &seed);

    loop {
        // Rule 1: a spare g-edge between two distinct degree-2 members.
        let mut applied = false;
        'chord: for &u in &members {
            if h.degree(u) != 2 {
                continue;
            }
            for (x, gm) in g.neighbors(u) {
                if x > u
                    && members.contains(&x)
                    && h.degree(x) == 2
                    && gm > h.multiplicity(u, x)
                {
                    h.add_edge(u, x);
                    applied = true;
                    break 'chord;
                }
            }
        }
        if applied {
            continue;
        }
        // Rules 2 and 3 look at the components outside H.
        let outside = g.without_vertices(&members);
        for comp in outside.components() {
            let comp_set: BTreeSet<VertexId> = comp.iter().copied().collect();
            let mut attach2: BTreeSet<VertexId> = BTreeSet::new();
            for &s in &comp {
                for nb in g.neighbor_ids(s) {
                    if members.contains(&nb) && h.degree(nb) == 2 {
                        attach2.insert(nb);
                    }
                }
            }
            if attach2.len() >= 2 {
                let mut it = attach2.iter();
                let (&u, &v) = (it.next().unwrap(), it.next().unwrap());
                let path = path_through_component(g, &comp_set, u, v);
                let mut prev = u;
                for &s in &path {
                    h.add_edge(prev, s);
                    members.insert(s);
                    prev = s;
                }
                h.add_edge(prev, v);
                applied = true;
                break;
            }
            if let Some(c) = find_any_cycle(&g.induced(&comp_set)) {
                absorb_cycle(&mut h, &mut members, &c);
                applied = true;
                break;
            }
        }
        if !applied {
            break;
        }
    }
    Some(Deg23Subgraph { graph: h.induced(&members), vertices: members })
}

/// Shortest path of component vertices from a neighbor of `u` to a neighbor
/// of `v`, both inside `comp` (which is connected and touches both).
fn path_through_component(
    g: &MultiGraph,
    comp: &BTreeSet<VertexId>,
    u: VertexId,
    v: VertexId,
) -> Vec<VertexId> {
    let starts: BTreeSet<VertexId> =
        g.neighbor_ids(u).filter(|s| comp.contains(s)).collect();
    let targets: BTreeSet<VertexId> =
        g.neighbor_ids(v).filter(|s| comp.contains(s)).collect();
    let mut dist: BTreeMap<VertexId, usize> = starts.iter().map(|&s| (s, 0)).collect();
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut q: VecDeque<VertexId> = starts.iter().copied().collect();
    while let Some(x) = q.pop_front() {
        for y in g.neighbor_ids(x) {
            if comp.contains(&y) && !dist.contains_key(&y) {
                dist.insert(y, dist[&x] + 1);
                parent.insert(y, x);
                q.push_back(y);
            }
        }
    }
    let &goal = targets
        .iter()
        .filter(|t| dist.contains_key(t))
        .min_by_key(|&&t| (dist[&t], t))
        .expect("component connects the two attachment vertices");
    let mut path = vec![goal];
    let mut cur = goal;
    while let Some(&p) = parent.get(&cur) {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

/// Structural audit of a [`Deg23Subgraph`] against its host, used by tests.
pub fn check_deg23_invariants(g: &MultiGraph, h: &Deg23Subgraph) {
    for &v in &h.vertices {
        let d = h.graph.degree(v);
        assert!(d == 2 || d == 3, "member {v} has degree {d}");
        assert!(h.graph.loops_at(v) <= g.loops_at(v));
    }
    for (u, v, m) in h.graph.edge_pairs() {
        assert!(m <= g.multiplicity(u, v), "H multiplicity exceeds host at {{{u},{v}}}");
    }
    let outside = g.without_vertices(&h.vertices);
    for comp in outside.components() {
        let comp_set: BTreeSet<VertexId> = comp.iter().copied().collect();
        assert!(
            g.induced(&comp_set).is_acyclic(),
            "outside component {comp:?} still contains a cycle"
        );
        let mut attach2: BTreeSet<VertexId> = BTreeSet::new();
        for &s in &comp {
            for nb in g.neighbor_ids(s) {
                if h.vertices.contains(&nb) && h.graph.degree(nb) == 2 {
                    attach2.insert(nb);
                }
            }
        }
        assert!(
            attach2.len() <= 1,
            "component {comp:?} has {} degree-2 attachments",
            attach2.len()
        );
    }
}

/// Result of the dichotomy.
#[derive(Clone, Debug)]
pub enum EpOutcome {
    /// `k` pairwise vertex-disjoint cycles, verified against the input.
    Cycles(Packing),
    /// A feedback vertex set of size ≤ `c·k·⌈log₂ max(k,2)⌉`.
    Fvs(BTreeSet<VertexId>),
}

/// [`cycles_or_fvs_with_constant`] at the default constant.
pub fn cycles_or_fvs(g: &MultiGraph, k: usize) -> EpOutcome {
    cycles_or_fvs_with_constant(g, k, theorem2_constant())
}

/// Either `k` disjoint cycles of `g` or a feedback vertex set of size at most
/// `c·k·⌈log₂ max(k,2)⌉`.
///
/// Lowering `c` below the derived constant voids the size guarantee's proof
/// but exercises the compression route at desk scale; the returned objects
/// are still individually certified (packings verified, feedback sets
/// asserted acyclic-after-removal).
pub fn cycles_or_fvs_with_constant(g: &MultiGraph, k: usize, c: u64) -> EpOutcome {
    let l = ceil_log2_clamped(k);
    let budget = c * k as u64 * l;
    if k == 0 {
        return EpOutcome::Cycles(Vec::new());
    }
    if g.is_acyclic() {
        return EpOutcome::Fvs(BTreeSet::new());
    }
    if k == 1 {
        let c = find_any_cycle(g).expect("cyclic graph has a cycle");
        return EpOutcome::Cycles(vec![c]);
    }
    let h = maximal_deg23_subgraph(g).expect("cyclic graph has a degree-{2,3} subgraph");
    let hg = &h.graph;
    let v3: BTreeSet<VertexId> =
        h.vertices.iter().copied().filter(|&v| hg.degree(v) == 3).collect();

    // Bare-cycle components of H and their cycles.
    let mut cc_cycles: Vec<Cycle> = Vec::new();
    let mut nc_vertices: BTreeSet<VertexId> = BTreeSet::new();
    for comp in hg.components() {
        if comp.iter().any(|v| v3.contains(v)) {
            nc_vertices.extend(comp.iter().copied());
        } else {
            cc_cycles.push(two_regular_component_cycle(hg, &comp));
        }
    }

    // Degree-2 members with two edge endpoints inside their outside
    // component, plus a certified cycle through each.
    let outside = g.without_vertices(&h.vertices);
    let mut v2_star: BTreeSet<VertexId> = BTreeSet::new();
    let mut v2_star_cycles: Vec<Cycle> = Vec::new();
    for comp in outside.components() {
        let comp_set: BTreeSet<VertexId> = comp.iter().copied().collect();
        let mut attach: BTreeSet<VertexId> = BTreeSet::new();
        for &s in &comp {
            for nb in g.neighbor_ids(s) {
                if h.vertices.contains(&nb) && hg.degree(nb) == 2 {
                    attach.insert(nb);
                }
            }
        }
        debug_assert!(attach.len() <= 1);
        let Some(&v) = attach.iter().next() else { continue };
        let ends: u32 = g.neighbors(v).filter(|(s, _)| comp_set.contains(s)).map(|(_, m)| m).sum();
        if ends < 2 {
            continue;
        }
        v2_star.insert(v);
        let double = g.neighbors(v).find(|&(s, m)| comp_set.contains(&s) && m >= 2);
        if let Some((s, _)) = double {
            v2_star_cycles.push(Cycle::new(vec![v, s]));
        } else {
            let mut nbrs = g.neighbor_ids(v).filter(|s| comp_set.contains(s));
            let (s1, s2) = (nbrs.next().unwrap(), nbrs.next().unwrap());
            let path = path_through_component(g, &comp_set, v, v);
            // path runs from a neighbor of v to a neighbor of v; it may be a
            // single vertex. Ensure it joins two *distinct* neighbors.
            let ok = path.len() >= 2
                && g.multiplicity(v, path[0]) >= 1
                && g.multiplicity(v, *path.last().unwrap()) >= 1
                && path[0] != *path.last().unwrap();
            let path = if ok {
                path
            } else {
                let mut p = path_between(g, &comp_set, s1, s2);
                p.insert(0, s1);
                p
            };
            let mut seq = vec![v];
            seq.extend(path);
            v2_star_cycles.push(Cycle::new(seq));
        }
    }

    // Early exit: loops, bare H-cycles, and the V₂* cycles are disjoint
    // within each family; a greedy sweep across families collects k of them
    // when available.
    let mut chosen: Packing = Vec::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    let loop_cycles: Vec<Cycle> =
        g.loop_vertices().into_iter().map(|v| Cycle::new(vec![v])).collect();
    for c in loop_cycles.iter().chain(&cc_cycles).chain(&v2_star_cycles) {
        if chosen.len() >= k {
            break;
        }
        if c.vertices().iter().all(|v| !used.contains(v)) {
            used.extend(c.vertices().iter().copied());
            chosen.push(c.clone());
        }
    }
    if chosen.len() >= k {
        assert!(verify_packing(g, &chosen, k));
        return EpOutcome::Cycles(chosen);
    }

    // Hitting set: V₃, V₂*, one piercing vertex per bare H-cycle, and any
    // degree-2 member whose self-loop is not part of H.
    let mut z: BTreeSet<VertexId> = v3.clone();
    z.extend(v2_star.iter().copied());
    for c in &cc_cycles {
        z.insert(*c.vertices().iter().min().unwrap());
    }
    for &v in &h.vertices {
        if hg.degree(v) == 2 && g.loops_at(v) > hg.loops_at(v) {
            z.insert(v);
        }
    }
    if z.len() as u64 <= budget {
        assert!(is_fvs(g, &z), "hitting set must be a feedback vertex set");
        return EpOutcome::Fvs(z);
    }

    // Compression route: contract H's degree-2 chains into a cubic graph,
    // shrink it to the extraction threshold, pull k short cycles greedily,
    // and lift them back step by step.
    let h_nc = hg.induced(&nc_vertices);
    let (h_star, chain_origins) = contract_v2_chains(&h_nc, &v3);
    let target = ((c - 1) * k as u64 * l) as usize;
    let (h_prime, steps, _snapshots) = compress_cubic(&h_star, target);
    let mut work = h_prime.clone();
    let mut extracted: Vec<Cycle> = Vec::new();
    for _ in 0..k {
        let f = greedy_fvs(&work);
        match shortest_cycle_with_fvs(&work, &f).expect("greedy set is an FVS") {
            Some(c) => {
                for &v in c.vertices() {
                    work.isolate_vertex(v);
                }
                extracted.push(c);
            }
            // Unreachable at the derived constant; with an undersized
            // override the extraction guarantee is void, so fall back to
            // the hitting set (still a valid feedback vertex set, merely
            // larger than the advertised budget).
            None => {
                assert!(is_fvs(g, &z));
                return EpOutcome::Fvs(z);
            }
        }
    }
    let lifted: Packing = extracted
        .iter()
        .map(|c| {
            let mut cur = c.clone();
            for (step, pre) in steps.iter().rev().zip(step_pre_graphs(&h_star, &steps).iter().rev())
            {
                cur = lift_cycle_through_step(pre, step, &cur);
            }
            expand_cycle(&chain_origins, &cur)
        })
        .collect();
    assert!(verify_packing(g, &lifted, k), "lifted extraction must certify");
    EpOutcome::Cycles(lifted)
}

/// Shortest path strictly inside `comp` from `a` to `b` (excluding `a`,
/// including `b`); empty when `a == b`.
fn path_between(
    g: &MultiGraph,
    comp: &BTreeSet<VertexId>,
    a: VertexId,
    b: VertexId,
) -> Vec<VertexId> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut seen = BTreeSet::from([a]);
    let mut q = VecDeque::from([a]);
    while let Some(x) = q.pop_front() {
        if x == b {
            break;
        }
        for y in g.neighbor_ids(x) {
            if comp.contains(&y) && seen.insert(y) {
                parent.insert(y, x);
                q.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = b;
    while cur != a {
        path.push(cur);
        cur = parent[&cur];
    }
    path.reverse();
    path
}

/// Reads the unique cycle off a connected 2-regular component.
fn two_regular_component_cycle(h: &MultiGraph, comp: &[VertexId]) -> Cycle {
    let m = *comp.iter().min().unwrap();
    if comp.len() == 1 {
        debug_assert!(h.loops_at(m) >= 1);
        return Cycle::new(vec![m]);
    }
    if comp.len() == 2 && h.multiplicity(comp[0], comp[1]) == 2 {
        return Cycle::new(comp.to_vec());
    }
    let mut seq = vec![m];
    let mut prev = m;
    let mut cur = h.neighbor_ids(m).next().unwrap();
    while cur != m {
        seq.push(cur);
        let mut nbrs = h.neighbor_ids(cur);
        let (a, b) = (nbrs.next().unwrap(), nbrs.next().unwrap());
        let next = if a == prev { b } else { a };
        prev = cur;
        cur = next;
    }
    Cycle::new(seq)
}

/// Contracts every maximal degree-2 chain of `h` (whose non-bare components
/// have vertex set ⊇ `v3`) into a single edge between its degree-3 endpoints,
/// recording the full chain as the edge copy's origin path.  A chain with
/// both ends on the same vertex becomes a self-loop there.  The result is
/// cubic on `v3`.
pub fn contract_v2_chains(
    h: &MultiGraph,
    v3: &BTreeSet<VertexId>,
) -> (MultiGraph, EdgeOrigins) {
    let mut remaining: BTreeMap<(VertexId, VertexId), u32> =
        h.edge_pairs().into_iter().map(|(u, v, m)| ((u, v), m)).collect();
    let mut loops_remaining: BTreeMap<VertexId, u32> =
        h.loop_vertices().into_iter().map(|v| (v, h.loops_at(v))).collect();
    let key = |a: VertexId, b: VertexId| if a <= b { (a, b) } else { (b, a) };

    let mut out = MultiGraph::new(h.id_bound() as usize);
    for v in 0..out.id_bound() {
        if !v3.contains(&v) {
            out.delete_vertex(v);
        }
    }
    let mut origins: EdgeOrigins = BTreeMap::new();

    for &x in v3 {
        while loops_remaining.get(&x).copied().unwrap_or(0) > 0 {
            *loops_remaining.get_mut(&x).unwrap() -= 1;
            out.add_edge(x, x);
            origins.entry((x, x)).or_default().push(vec![x, x]);
        }
        loop {
            let Some(n) = h
                .neighbor_ids(x)
                .find(|&n| remaining.get(&key(x, n)).copied().unwrap_or(0) > 0)
            else {
                break;
            };
            *remaining.get_mut(&key(x, n)).unwrap() -= 1;
            let mut path = vec![x, n];
            let mut prev = x;
            let mut cur = n;
            while !v3.contains(&cur) {
                let next = h
                    .neighbor_ids(cur)
                    .find(|&m| remaining.get(&key(cur, m)).copied().unwrap_or(0) > 0)
                    .expect("degree-2 chain vertex has a second unconsumed edge");
                *remaining.get_mut(&key(cur, next)).unwrap() -= 1;
                path.push(next);
                prev = cur;
                cur = next;
            }
            let _ = prev;
            out.add_edge(x, cur);
            let k = key(x, cur);
            if k.0 != x {
                path.reverse();
            }
            origins.entry(k).or_default().push(path);
        }
    }
    debug_assert!(remaining.values().all(|&m| m == 0), "all chains consumed");
    debug_assert!(out.live_ids().all(|v| out.degree(v) == 3), "contraction must be cubic");
    (out, origins)
}

/// One repair edge added by a compression step: a copy of `{u,v}` standing
/// for the pre-step path `u, interior…, v` (`u == v` describes a loop).
#[derive(Clone, Debug)]
pub struct AddedEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub interior: Vec<VertexId>,
}

/// One compression step: exactly two vertices removed, with degree-repairs.
#[derive(Clone, Debug)]
pub struct CompressionStep {
    pub removed: Vec<VertexId>,
    pub added: Vec<AddedEdge>,
}

/// Shrinks a cubic multigraph to at most `target + 2` vertices, two per step,
/// keeping every vertex at degree exactly 3.  Returns the final graph, the
/// step log, and per-step (before, after) snapshots for auditing.
pub fn compress_cubic(
    h_star: &MultiGraph,
    target: usize,
) -> (MultiGraph, Vec<CompressionStep>, Vec<(MultiGraph, MultiGraph)>) {
    let mut h = h_star.clone();
    let mut steps = Vec::new();
    let mut snapshots = Vec::new();
    while h.num_vertices() > target + 2 {
        let before = h.clone();
        let step = compress_step(&mut h);
        debug_assert_eq!(step.removed.len(), 2);
        debug_assert!(h.live_ids().all(|v| h.degree(v) == 3));
        snapshots.push((before, h.clone()));
        steps.push(step);
    }
    (h, steps, snapshots)
}

fn compress_step(h: &mut MultiGraph) -> CompressionStep {
    let v = h.live_ids().next().expect("compression needs a nonempty graph");
    // Loop case: v = loop + one proper edge to r.
    if h.loops_at(v) >= 1 {
        let r = h.neighbor_ids(v).next().expect("cubic loop vertex has a proper neighbor");
        let mut added = Vec::new();
        if h.loops_at(r) >= 1 {
            // r is itself loop + edge: both vertices disappear cleanly.
        } else {
            // r's two remaining endpoint slots get joined through r.
            let mut ends: Vec<VertexId> = Vec::new();
            for (x, m) in h.neighbors(r) {
                if x != v {
                    for _ in 0..m {
                        ends.push(x);
                    }
                }
            }
            debug_assert_eq!(ends.len(), 2);
            h.add_edge(ends[0], ends[1]);
            added.push(AddedEdge { u: ends[0], v: ends[1], interior: vec![r] });
        }
        h.delete_vertex(v);
        h.delete_vertex(r);
        return CompressionStep { removed: vec![v, r], added };
    }
    // Triple edge at v: both endpoints have no other edges.
    let triple = h.neighbors(v).find(|&(_, m)| m == 3).map(|(u, _)| u);
    if let Some(u) = triple {
        h.delete_vertex(v);
        h.delete_vertex(u);
        return CompressionStep { removed: vec![v, u], added: Vec::new() };
    }
    // Double edge within distance one of v: remove its endpoints, join their
    // spare slots.
    for u in h.neighbor_ids(v).collect::<Vec<_>>() {
        let double = h.neighbors(u).find(|&(_, m)| m == 2).map(|(w, _)| w);
        if let Some(w) = double {
            let ru = h
                .neighbor_ids(u)
                .find(|&x| x != w)
                .expect("double-edge endpoint has a third slot");
            let rw = h
                .neighbor_ids(w)
                .find(|&x| x != u)
                .expect("double-edge endpoint has a third slot");
            h.delete_vertex(u);
            h.delete_vertex(w);
            h.add_edge(ru, rw);
            return CompressionStep {
                removed: vec![u, w],
                added: vec![AddedEdge { u: ru, v: rw, interior: vec![u, w] }],
            };
        }
    }
    // Plain case: v has three distinct single neighbors x < y < z.
    let nbrs: Vec<VertexId> = h.neighbor_ids(v).collect();
    debug_assert_eq!(nbrs.len(), 3);
    let (x, y, z) = (nbrs[0], nbrs[1], nbrs[2]);
    let mut added = vec![AddedEdge { u: x, v: y, interior: vec![v] }];
    h.delete_vertex(v);
    h.add_edge(x, y);
    if h.loops_at(z) >= 1 {
        // z was loop + edge-to-v: its loop is self-contained, drop it whole.
        h.delete_vertex(z);
    } else {
        let mut ends: Vec<VertexId> = Vec::new();
        for (a, m) in h.neighbors(z) {
            for _ in 0..m {
                ends.push(a);
            }
        }
        debug_assert_eq!(ends.len(), 2);
        debug_assert_ne!(ends[0], ends[1], "a double at z would have been the previous case");
        h.delete_vertex(z);
        h.add_edge(ends[0], ends[1]);
        added.push(AddedEdge { u: ends[0], v: ends[1], interior: vec![z] });
    }
    CompressionStep { removed: vec![v, z], added }
}

/// Pre-step graphs for a step log starting from `h_star` (the `i`-th entry is
/// the graph the `i`-th step was applied to).
pub fn step_pre_graphs(h_star: &MultiGraph, steps: &[CompressionStep]) -> Vec<MultiGraph> {
    let mut out = Vec::with_capacity(steps.len());
    let mut cur = h_star.clone();
    for step in steps {
        out.push(cur.clone());
        apply_step(&mut cur, step);
    }
    out
}

fn apply_step(h: &mut MultiGraph, step: &CompressionStep) {
    for &v in &step.removed {
        h.delete_vertex(v);
    }
    for e in &step.added {
        h.add_edge(e.u, e.v);
    }
}

/// Rewrites a cycle of the post-step graph into the pre-step graph `pre`:
/// traversals the pre-graph can still carry stay as they are, the rest are
/// routed through the repair edges' recorded interiors.
pub fn lift_cycle_through_step(
    pre: &MultiGraph,
    step: &CompressionStep,
    cycle: &Cycle,
) -> Cycle {
    let key = |a: VertexId, b: VertexId| if a <= b { (a, b) } else { (b, a) };
    let mut direct: BTreeMap<(VertexId, VertexId), u32> = BTreeMap::new();
    let mut spare: BTreeMap<(VertexId, VertexId), Vec<&AddedEdge>> = BTreeMap::new();
    for e in &step.added {
        spare.entry(key(e.u, e.v)).or_default().push(e);
    }
    let mut seq: Vec<VertexId> = Vec::new();
    for (a, b) in cycle.steps() {
        seq.push(a);
        let k = key(a, b);
        let cap = if a == b { pre.loops_at(a) } else { pre.multiplicity(a, b) };
        let used = direct.entry(k).or_insert(0);
        if *used < cap {
            *used += 1;
            continue;
        }
        let e = spare
            .get_mut(&k)
            .and_then(|v| v.pop())
            .expect("cycle traversal must be carried by the pre-graph or a repair edge");
        if e.u == a {
            seq.extend(e.interior.iter().copied());
        } else {
            seq.extend(e.interior.iter().rev().copied());
        }
    }
    Cycle::new(seq)
}
