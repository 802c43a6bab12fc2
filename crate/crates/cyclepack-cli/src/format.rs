//! Line-based text format for multigraph instances.
//!
//! ```text
//! c any comment                  (blank lines are also skipped)
//! p cycp <n> <m>                 exactly one header, before any edge line
//! e <u> <v> [mult]               1-based endpoints, u = v for a self-loop,
//!                                multiplicity defaults to 1
//! ```
//!
//! `<m>` counts `e` *lines*, not multiplicity mass.  [`emit_graph`] renumbers
//! the live vertices compactly and writes one line per vertex pair (loops
//! first), so emit ∘ parse is the identity on emitted files and parse ∘ emit
//! is the identity on graphs whose live ids are already `0..n`.

use cyclepack_core::multigraph::MultiGraph;
use thiserror::Error;

/// Why a graph file was rejected; every variant names the offending line.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `p cycp <n> <m>`, found `{found}`")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge line before the `p cycp` header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: expected `e <u> <v> [mult]`, found `{found}`")]
    BadEdge { line: usize, found: String },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: u64, n: usize },
    #[error("line {line}: multiplicity must be at least 1")]
    ZeroMultiplicity { line: usize },
    #[error("line {line}: unrecognized line `{found}`")]
    UnknownLine { line: usize, found: String },
    #[error("missing `p cycp <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} edge lines, file has {found}")]
    EdgeLineCount { declared: u64, found: u64 },
}

/// Parses the text format into a graph with vertices `0..n` (file ids minus
/// one).
pub fn parse_graph(text: &str) -> Result<MultiGraph, ParseError> {
    let mut header: Option<(usize, u64)> = None;
    let mut g = MultiGraph::new(0);
    let mut edge_lines: u64 = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let bad = || ParseError::BadHeader { line, found: trimmed.to_string() };
                if tokens.len() != 4 || tokens[1] != "cycp" {
                    return Err(bad());
                }
                let n: usize = tokens[2].parse().map_err(|_| bad())?;
                let m: u64 = tokens[3].parse().map_err(|_| bad())?;
                header = Some((n, m));
                g = MultiGraph::new(n);
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(ParseError::EdgeBeforeHeader { line });
                };
                let bad = || ParseError::BadEdge { line, found: trimmed.to_string() };
                if tokens.len() < 3 || tokens.len() > 4 {
                    return Err(bad());
                }
                let u: u64 = tokens[1].parse().map_err(|_| bad())?;
                let v: u64 = tokens[2].parse().map_err(|_| bad())?;
                let mult: u64 = match tokens.get(3) {
                    Some(t) => t.parse().map_err(|_| bad())?,
                    None => 1,
                };
                if mult == 0 {
                    return Err(ParseError::ZeroMultiplicity { line });
                }
                for &x in &[u, v] {
                    if x == 0 || x > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line, v: x, n });
                    }
                }
                for _ in 0..mult {
                    g.add_edge((u - 1) as u32, (v - 1) as u32);
                }
                edge_lines += 1;
            }
            _ => {
                return Err(ParseError::UnknownLine { line, found: trimmed.to_string() });
            }
        }
    }

    let Some((_, m)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if m != edge_lines {
        return Err(ParseError::EdgeLineCount { declared: m, found: edge_lines });
    }
    Ok(g)
}

/// Writes `g` in the text format, renumbering live vertices compactly to
/// `1..=n` in ascending id order.  One `e` line per loop vertex and per
/// vertex pair; multiplicity 1 is left implicit.
pub fn emit_graph(g: &MultiGraph) -> String {
    let live: Vec<u32> = g.live_ids().collect();
    let file_id = |v: u32| -> usize {
        live.binary_search(&v).expect("emitted vertices are live") + 1
    };

    // (u, v, mult) with u ≤ v in file numbering; loops sort before pairs.
    let mut lines: Vec<(usize, usize, u32)> = Vec::new();
    for &v in &live {
        let loops = g.loops_at(v);
        if loops > 0 {
            lines.push((file_id(v), file_id(v), loops));
        }
    }
    for (u, v, m) in g.edge_pairs() {
        lines.push((file_id(u), file_id(v), m));
    }
    lines.sort_unstable();

    let mut out = format!("p cycp {} {}\n", live.len(), lines.len());
    for (u, v, m) in lines {
        if m == 1 {
            out.push_str(&format!("e {u} {v}\n"));
        } else {
            out.push_str(&format!("e {u} {v} {m}\n"));
        }
    }
    out
}
