//! Deterministic instance generators.
//!
//! Every generator is a pure function of its parameters (plus the seed where
//! one is taken), so a `(model, params, seed)` triple always reproduces the
//! same graph.

use std::collections::VecDeque;

use cyclepack_core::multigraph::{MultiGraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Rejected generator parameters.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid generator parameters: {0}")]
pub struct GenError(pub String);

/// `count` pairwise disjoint cycles of length `len` (1 = self-loops, 2 =
/// parallel pairs).
pub fn disjoint_cycles(count: usize, len: usize) -> Result<MultiGraph, GenError> {
    if len == 0 {
        return Err(GenError("cycle length must be at least 1".into()));
    }
    let n = count * len.max(1);
    let mut g = MultiGraph::new(n);
    for c in 0..count {
        let base = (c * len) as VertexId;
        match len {
            1 => g.add_edge(base, base),
            2 => {
                g.add_edge(base, base + 1);
                g.add_edge(base, base + 1);
            }
            _ => {
                for i in 0..len {
                    g.add_edge(base + i as VertexId, base + ((i + 1) % len) as VertexId);
                }
            }
        }
    }
    Ok(g)
}

/// Uniform simple graph with `n` vertices and `m` of the `n·(n−1)/2`
/// possible edges.
pub fn gnm(n: usize, m: u64, seed: u64) -> Result<MultiGraph, GenError> {
    let total = n as u64 * (n as u64 - 1) / 2;
    if m > total {
        return Err(GenError(format!("m = {m} exceeds the {total} possible edges")));
    }
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::with_capacity(total as usize);
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u as VertexId, v as VertexId));
        }
    }
    // Partial Fisher–Yates: the first m slots end up a uniform m-subset.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = MultiGraph::new(n);
    for i in 0..m as usize {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
        g.add_edge(pairs[i].0, pairs[i].1);
    }
    Ok(g)
}

/// Two hub vertices joined by `strands` internally disjoint paths of `len`
/// edges each (`len` = 1 gives a parallel bundle).
pub fn theta(strands: usize, len: usize) -> Result<MultiGraph, GenError> {
    if strands == 0 || len == 0 {
        return Err(GenError("theta needs at least one strand of length at least 1".into()));
    }
    let n = 2 + strands * (len - 1);
    let mut g = MultiGraph::new(n);
    let (a, b) = (0, 1);
    let mut next = 2 as VertexId;
    for _ in 0..strands {
        let mut prev = a;
        for _ in 0..(len - 1) {
            g.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        g.add_edge(prev, b);
    }
    Ok(g)
}

/// The `rows` × `cols` grid graph.
pub fn grid(rows: usize, cols: usize) -> Result<MultiGraph, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError("grid needs at least one row and one column".into()));
    }
    let id = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut g = MultiGraph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                g.add_edge(id(r, c), id(r, c + 1));
            }
            if r + 1 < rows {
                g.add_edge(id(r, c), id(r + 1, c));
            }
        }
    }
    Ok(g)
}

/// Random graph kept at girth ≥ `girth` greedily: candidate edges are
/// accepted only when the endpoints are at distance ≥ `girth − 1`, so no
/// accepted edge ever closes a short cycle.
pub fn high_girth(n: usize, girth: usize, seed: u64) -> Result<MultiGraph, GenError> {
    if girth < 3 {
        return Err(GenError("girth target must be at least 3".into()));
    }
    if n < girth {
        return Err(GenError(format!("n = {n} cannot carry a cycle of length {girth}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = MultiGraph::new(n);
    for _ in 0..(30 * n) {
        let u = rng.gen_range(0..n) as VertexId;
        let v = rng.gen_range(0..n) as VertexId;
        if u == v || g.multiplicity(u, v) > 0 {
            continue;
        }
        if bfs_distance(&g, u, v).is_none_or(|d| d >= girth - 1) {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// Hop distance between `a` and `b`, `None` when disconnected.
fn bfs_distance(g: &MultiGraph, a: VertexId, b: VertexId) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.id_bound() as usize];
    dist[a as usize] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            return Some(dist[u as usize]);
        }
        for w in g.neighbor_ids(u) {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[u as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}
