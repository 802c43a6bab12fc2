//! Shortest cycles driven by a feedback vertex set.
//!
//! Every cycle meets every feedback vertex set, so the girth of a graph is
//! the minimum, over the set's vertices, of the shortest cycle through that
//! vertex — and a breadth-first search from each such root finds it.  The
//! search cost is `O(|F| · (|V| + |E|))`, independent of how large the girth
//! is, which is what the high-girth machinery downstream needs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::multigraph::{is_fvs, Cycle, MultiGraph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GirthError {
    #[error("the provided vertex set is not a feedback vertex set")]
    NotAFeedbackVertexSet,
}

/// Shortest cycle of `g`, exact, computed from the feedback vertex set `f`.
///
/// Returns `Ok(None)` exactly when `g` is acyclic.  Self-loops are length-1
/// cycles and parallel pairs length-2, so they are scanned first; after that
/// only simple cycles of length ≥ 3 remain and adjacency can be read modulo
/// multiplicity.  Ties break toward the lexicographically smallest canonical
/// vertex sequence.
pub fn shortest_cycle_with_fvs(
    g: &MultiGraph,
    f: &BTreeSet<VertexId>,
) -> Result<Option<Cycle>, GirthError> {
    if !is_fvs(g, f) {
        return Err(GirthError::NotAFeedbackVertexSet);
    }
    if let Some(v) = g.loop_vertices().first() {
        return Ok(Some(Cycle::new(vec![*v])));
    }
    if let Some(&(u, v, _)) = g.edge_pairs().iter().find(|&&(_, _, m)| m >= 2) {
        return Ok(Some(Cycle::new(vec![u, v])));
    }
    let mut best: Option<Cycle> = None;
    let mut consider = |c: Cycle| {
        let better = match &best {
            None => true,
            Some(b) => (c.len(), c.vertices()) < (b.len(), b.vertices()),
        };
        if better {
            best = Some(c);
        }
    };
    for &root in f {
        if !g.is_alive(root) {
            continue;
        }
        let (dist, parent) = bfs(g, root);
        // Walk from `a` and `b` (same level) one level up in lockstep until
        // the walks meet; distinct levels keep the two sides disjoint until
        // that first meeting point.
        let climb = |a: VertexId, b: VertexId| -> Option<(Vec<VertexId>, Vec<VertexId>)> {
            let (mut pa, mut pb) = (vec![a], vec![b]);
            let (mut x, mut y) = (a, b);
            while x != y {
                x = *parent.get(&x)?;
                y = *parent.get(&y)?;
                pa.push(x);
                pb.push(y);
            }
            Some((pa, pb))
        };
        // Smallest level carrying an edge inside the level: odd candidates.
        let mut intra: BTreeMap<usize, Vec<(VertexId, VertexId)>> = BTreeMap::new();
        for (u, v, _) in g.edge_pairs() {
            if let (Some(&du), Some(&dv)) = (dist.get(&u), dist.get(&v)) {
                if du == dv {
                    intra.entry(du).or_default().push((u, v));
                }
            }
        }
        if let Some((_, edges)) = intra.iter().next() {
            for &(u, v) in edges {
                if let Some((pu, pv)) = climb(u, v) {
                    // pu ends at the meeting vertex; route meet → u, then v → below meet.
                    let mut seq: Vec<VertexId> = pu.iter().rev().copied().collect();
                    seq.extend(pv[..pv.len() - 1].iter().copied());
                    consider(Cycle::new(seq));
                }
            }
        }
        // Smallest level with a vertex seeing two distinct vertices one level
        // up: even candidates.
        let mut two_up: BTreeMap<usize, Vec<(VertexId, Vec<VertexId>)>> = BTreeMap::new();
        for (&w, &dw) in &dist {
            if dw == 0 {
                continue;
            }
            let ups: Vec<VertexId> =
                g.neighbor_ids(w).filter(|u| dist.get(u) == Some(&(dw - 1))).collect();
            if ups.len() >= 2 {
                two_up.entry(dw).or_default().push((w, ups));
            }
        }
        if let Some((_, hits)) = two_up.iter().next() {
            for (w, ups) in hits {
                for i in 0..ups.len() {
                    for j in (i + 1)..ups.len() {
                        if let Some((pu, pv)) = climb(ups[i], ups[j]) {
                            let mut seq: Vec<VertexId> = pu.iter().rev().copied().collect();
                            seq.push(*w);
                            seq.extend(pv[..pv.len() - 1].iter().copied());
                            consider(Cycle::new(seq));
                        }
                    }
                }
            }
        }
    }
    Ok(best)
}

fn bfs(
    g: &MultiGraph,
    root: VertexId,
) -> (BTreeMap<VertexId, usize>, BTreeMap<VertexId, VertexId>) {
    let mut dist = BTreeMap::from([(root, 0usize)]);
    let mut parent = BTreeMap::new();
    let mut q = VecDeque::from([root]);
    while let Some(v) = q.pop_front() {
        for u in g.neighbor_ids(v) {
            if !dist.contains_key(&u) {
                dist.insert(u, dist[&v] + 1);
                parent.insert(u, v);
                q.push_back(u);
            }
        }
    }
    (dist, parent)
}

/// Some cycle of `g`, or `None` when acyclic.  Cheap (one DFS) and used
/// wherever any certified cycle will do.
pub fn find_any_cycle(g: &MultiGraph) -> Option<Cycle> {
    if let Some(v) = g.loop_vertices().first() {
        return Some(Cycle::new(vec![*v]));
    }
    if let Some(&(u, v, _)) = g.edge_pairs().iter().find(|&&(_, _, m)| m >= 2) {
        return Some(Cycle::new(vec![u, v]));
    }
    let mut visited: BTreeSet<VertexId> = BTreeSet::new();
    for start in g.live_ids() {
        if visited.contains(&start) {
            continue;
        }
        // Iterative DFS keeping the current path explicit.
        let mut path: Vec<VertexId> = vec![start];
        let mut on_path: BTreeSet<VertexId> = BTreeSet::from([start]);
        let mut cursors: Vec<Vec<VertexId>> = vec![g.neighbor_ids(start).collect()];
        visited.insert(start);
        while let Some(level) = cursors.last_mut() {
            let Some(next) = level.pop() else {
                let done = path.pop().unwrap();
                on_path.remove(&done);
                cursors.pop();
                continue;
            };
            if path.len() >= 2 && next == path[path.len() - 2] {
                continue; // the tree edge we came by
            }
            if on_path.contains(&next) {
                let from = path.iter().position(|&x| x == next).unwrap();
                return Some(Cycle::new(path[from..].to_vec()));
            }
            if visited.insert(next) {
                path.push(next);
                on_path.insert(next);
                cursors.push(g.neighbor_ids(next).collect());
            }
        }
    }
    None
}

/// A feedback vertex set with no optimality guarantee: repeatedly find a
/// cycle and delete its highest-degree vertex.  Deterministic; used to seed
/// [`shortest_cycle_with_fvs`] when no better set is at hand.
pub fn greedy_fvs(g: &MultiGraph) -> BTreeSet<VertexId> {
    let mut work = g.clone();
    let mut f = BTreeSet::new();
    while let Some(c) = find_any_cycle(&work) {
        let &v = c
            .vertices()
            .iter()
            .max_by_key(|&&v| (work.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        f.insert(v);
        work.delete_vertex(v);
    }
    f
}
