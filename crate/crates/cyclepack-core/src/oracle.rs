//! Brute-force reference implementations.
//!
//! Everything here is exponential and guarded by hard size caps with loud
//! errors — the point is to be *obviously* correct at desk scale so the real
//! algorithms can be validated against these, never to be fast.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::multigraph::{Cycle, MultiGraph, Packing, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force refused: {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("brute force refused: cycle enumeration exceeded {0} steps")]
    SearchSpace(u64),
}

const PACKING_VERTEX_CAP: usize = 12;
const GIRTH_VERTEX_CAP: usize = 60;
const ENUMERATION_STEP_CAP: u64 = 2_000_000;

/// Enumerates every cycle of `g` once: one length-1 cycle per loop-carrying
/// vertex, one length-2 cycle per parallel pair, and every simple cycle of
/// length ≥ 3 (canonical direction, so each appears exactly once).
pub fn enumerate_all_cycles(g: &MultiGraph) -> Result<Vec<Cycle>, OracleError> {
    let mut cycles = Vec::new();
    for v in g.loop_vertices() {
        cycles.push(Cycle::new(vec![v]));
    }
    for (u, v, m) in g.edge_pairs() {
        if m >= 2 {
            cycles.push(Cycle::new(vec![u, v]));
        }
    }
    // Simple cycles: DFS from each start vertex using only higher-numbered
    // vertices, so the start is the cycle minimum; requiring the second
    // vertex to be smaller than the last kills the reverse duplicate.
    let ids: Vec<VertexId> = g.live_ids().collect();
    let mut steps: u64 = 0;
    for &start in &ids {
        let mut path: Vec<VertexId> = vec![start];
        // Iterator position per path level over the (sorted) neighbor list.
        let mut nbrs: Vec<Vec<VertexId>> = vec![g.neighbor_ids(start).collect()];
        let mut cursor: Vec<usize> = vec![0];
        while !path.is_empty() {
            steps += 1;
            if steps > ENUMERATION_STEP_CAP {
                return Err(OracleError::SearchSpace(ENUMERATION_STEP_CAP));
            }
            let depth = path.len() - 1;
            if cursor[depth] >= nbrs[depth].len() {
                path.pop();
                nbrs.pop();
                cursor.pop();
                continue;
            }
            let next = nbrs[depth][cursor[depth]];
            cursor[depth] += 1;
            if next == start {
                if path.len() >= 3 && path[1] < path[path.len() - 1] {
                    cycles.push(Cycle::new(path.clone()));
                }
                continue;
            }
            if next < start || path.contains(&next) {
                continue;
            }
            path.push(next);
            nbrs.push(g.neighbor_ids(next).collect());
            cursor.push(0);
        }
    }
    Ok(cycles)
}

/// Maximum cycle packing by exhaustive subset dynamic programming.
///
/// Returns `(k_max, certificate)` where the certificate is a packing of
/// exactly `k_max` pairwise disjoint cycles.  Exactness of the subset DP is
/// what gives "no packing of size `k_max + 1` exists" for free.
pub fn max_cycle_packing_bruteforce(
    g: &MultiGraph,
) -> Result<(usize, Packing), OracleError> {
    let ids: Vec<VertexId> = g.live_ids().collect();
    let n = ids.len();
    if n > PACKING_VERTEX_CAP {
        return Err(OracleError::TooLarge { n, cap: PACKING_VERTEX_CAP });
    }
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cycles = enumerate_all_cycles(g)?;
    let cycle_masks: Vec<u32> = cycles
        .iter()
        .map(|c| c.vertices().iter().fold(0u32, |m, v| m | 1 << index[v]))
        .collect();
    // cycles whose minimum compact index is i
    let mut by_min: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];
    for (ci, &mask) in cycle_masks.iter().enumerate() {
        by_min[mask.trailing_zeros() as usize].push(ci);
    }
    let full: u32 = (1u32 << n) - 1;
    let mut best: Vec<u16> = vec![0; (full as usize) + 1];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        let mut b = best[(mask & (mask - 1)) as usize]; // drop lowest vertex
        for &ci in &by_min[low] {
            let cm = cycle_masks[ci];
            if cm & mask == cm {
                b = b.max(1 + best[(mask & !cm) as usize]);
            }
        }
        best[mask as usize] = b;
    }
    // Backtrack a certificate.
    let mut packing = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let low = mask.trailing_zeros() as usize;
        let without = mask & (mask - 1);
        if best[mask as usize] == best[without as usize] {
            mask = without;
            continue;
        }
        let ci = by_min[low]
            .iter()
            .copied()
            .find(|&ci| {
                let cm = cycle_masks[ci];
                cm & mask == cm && best[mask as usize] == 1 + best[(mask & !cm) as usize]
            })
            .expect("DP value must be witnessed by some cycle");
        packing.push(cycles[ci].clone());
        mask &= !cycle_masks[ci];
    }
    Ok((best[full as usize] as usize, packing))
}

/// Girth by breadth-first search from every vertex: `None` for acyclic
/// graphs, otherwise the exact minimum cycle length (1 with any loop present,
/// 2 with any parallel pair).
pub fn girth_bruteforce(g: &MultiGraph) -> Result<Option<usize>, OracleError> {
    let n = g.num_vertices();
    if n > GIRTH_VERTEX_CAP {
        return Err(OracleError::TooLarge { n, cap: GIRTH_VERTEX_CAP });
    }
    if !g.loop_vertices().is_empty() {
        return Ok(Some(1));
    }
    if g.edge_pairs().iter().any(|&(_, _, m)| m >= 2) {
        return Ok(Some(2));
    }
    let mut best: Option<usize> = None;
    for root in g.live_ids() {
        let mut dist: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        dist.insert(root, 0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbor_ids(v) {
                if !dist.contains_key(&u) {
                    dist.insert(u, dist[&v] + 1);
                    parent.insert(u, v);
                    queue.push_back(u);
                } else if parent.get(&v) != Some(&u) && parent.get(&u) != Some(&v) {
                    // Non-tree edge: the closed walk root→v, {v,u}, u→root
                    // contains a cycle no longer than it.
                    let cand = dist[&v] + dist[&u] + 1;
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    Ok(best)
}
