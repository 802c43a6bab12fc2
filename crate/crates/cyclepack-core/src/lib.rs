//! Vertex-disjoint cycle packing in undirected multigraphs.
//!
//! The central question: does a multigraph `G` contain `k` pairwise
//! vertex-disjoint cycles?  A self-loop counts as a cycle of length one and a
//! pair of parallel edges as a cycle of length two, so multiplicities matter
//! throughout and every structure here is a true multigraph.
//!
//! The crate is organised bottom-up:
//!
//! * [`multigraph`] — the graph representation, cycles and packings,
//!   transformation traces, edge contraction, and the edge-count cap.
//! * [`reduce`] — the degree/multiplicity kernelization (delete degree ≤ 1,
//!   dissolve degree-2 vertices, clamp multiplicities) with full provenance so
//!   cycles found in the reduced graph lift back to the input.
//! * [`girth`] — shortest cycle computation driven by a feedback vertex set.
//! * [`erdos_posa`] — the "many disjoint cycles or a small feedback vertex
//!   set" dichotomy, with an explicit compression route for cubic graphs.
//! * [`decompose`] — the high-girth core decomposition: a small hitting set
//!   `S`, the reduced core `R`, and a structured forest between them.
//! * [`guess`] — enumeration of the ways an optimal packing can interact with
//!   `S`, each yielding a compressed instance, plus the lift back.
//! * [`exact`] — the inclusion-exclusion decision procedure (polynomial
//!   space), a walk-count table for auditing it, and a search wrapper that
//!   recovers an explicit packing.
//! * [`oracle`] — brute-force references (maximum packing, girth) used to
//!   validate everything else at small scale.

pub mod decompose;
pub mod erdos_posa;
pub mod exact;
pub mod girth;
pub mod guess;
pub mod multigraph;
pub mod oracle;
pub mod reduce;

pub use decompose::{CoreStructure, SSetOutcome};
pub use erdos_posa::EpOutcome;
pub use exact::{ie_decide, ie_search, ie_signed_sum, simplify_for_dp, ExactError};
pub use guess::{GuessInstance, GuessItem};
pub use multigraph::{Cycle, MultiGraph, Packing, TraceEvent, TransformTrace, VertexId};
pub use reduce::ReduceResult;
