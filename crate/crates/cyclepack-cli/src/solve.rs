//! End-to-end solver: strategy dispatch and the decomposition pipeline
//! driver.
//!
//! The pipeline strategy runs: edge discard → hitting-set search (early exit
//! when the search itself finds a packing) → low-degree pruning and core
//! decomposition → instance enumeration → subset-sum decision per instance,
//! first yes by instance index.  A yes answer is searched, lifted back
//! through the instance rebuild, the pruning trace, and finally certified
//! against the graph exactly as parsed.  A no answer is only reported when
//! every instance was enumerated and decided; a truncated enumeration or an
//! undecidable instance degrades the answer to inconclusive, never to no.

use cyclepack_core::decompose::{
    check_core_size_bound_with_constant, core_decomposition, find_s_set, girth_target,
    DecomposeError, SSetOutcome,
};
use cyclepack_core::erdos_posa::theorem2_constant;
use cyclepack_core::exact::{ie_decide, ie_search, simplify_for_dp, ExactError};
use cyclepack_core::guess::{enumerate_instances, lift_packing, GuessItem};
use cyclepack_core::multigraph::{
    discard_excess_edges, lift_packing_through_trace, verify_packing, MultiGraph, Packing,
};
use cyclepack_core::oracle::{max_cycle_packing_bruteforce, OracleError};
use cyclepack_core::reduce::reduce;
use thiserror::Error;

/// How to decide an instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    /// The full decomposition pipeline.
    Paper,
    /// The subset-sum exact solver on the whole (simplified) graph.
    Ie,
    /// Brute force; only for very small inputs.
    Oracle,
    /// Pick by input size: oracle ≤ 12 vertices, exact solver ≤ 18 after
    /// simplification, pipeline otherwise.
    #[default]
    Auto,
}

/// Vertex counts steering [`Strategy::Auto`].
const AUTO_ORACLE_MAX: usize = 12;
const AUTO_IE_MAX: usize = 18;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub strategy: Strategy,
    /// Cap on enumerated instances; exhausting it yields `Inconclusive`.
    pub budget: Option<usize>,
    /// Dichotomy-constant override (testing only).
    pub c_override: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Decision {
    /// With a packing certified against the input graph.
    Yes(Packing),
    No,
    Inconclusive,
}

#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    /// Enumerated instances handed to the exact solver.
    pub instances_tried: usize,
    /// Size of the hitting set, 0 before one is computed.
    pub s_size: usize,
    /// Vertices in the kernel of the input minus the hitting set.
    pub reduce_size: usize,
    /// Girth target of the run (pipeline strategy only).
    pub g: u64,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub stats: SolveStats,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("brute-force strategy: {0}")]
    Oracle(#[from] OracleError),
    #[error("exact solver: {0}")]
    Exact(#[from] ExactError),
    #[error("decomposition: {0}")]
    Decompose(#[from] DecomposeError),
}

/// Decides whether `g` packs `k` vertex-disjoint cycles; every `Yes` carries
/// a packing that certifies against `g` itself.
pub fn solve(g: &MultiGraph, k: usize, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if k == 0 {
        return Ok(SolveOutcome {
            decision: Decision::Yes(Vec::new()),
            stats: SolveStats::default(),
        });
    }
    let strategy = match opts.strategy {
        Strategy::Auto => {
            if g.num_vertices() <= AUTO_ORACLE_MAX {
                Strategy::Oracle
            } else if simplify_for_dp(g).0.num_vertices() <= AUTO_IE_MAX {
                Strategy::Ie
            } else {
                Strategy::Paper
            }
        }
        s => s,
    };
    match strategy {
        Strategy::Oracle => solve_oracle(g, k),
        Strategy::Ie => solve_ie(g, k),
        Strategy::Paper => solve_pipeline(g, k, opts),
        Strategy::Auto => unreachable!("auto resolved above"),
    }
}

fn solve_oracle(g: &MultiGraph, k: usize) -> Result<SolveOutcome, SolveError> {
    let (best, packing) = max_cycle_packing_bruteforce(g)?;
    let decision = if best >= k {
        let p: Packing = packing[..k].to_vec();
        assert!(verify_packing(g, &p, k), "oracle packing must certify");
        Decision::Yes(p)
    } else {
        Decision::No
    };
    Ok(SolveOutcome { decision, stats: SolveStats::default() })
}

fn solve_ie(g: &MultiGraph, k: usize) -> Result<SolveOutcome, SolveError> {
    let decision = if ie_decide(g, k)? {
        let p = ie_search(g, k)?.expect("search succeeds whenever the decision is yes");
        assert!(verify_packing(g, &p, k), "exact-solver packing must certify");
        Decision::Yes(p)
    } else {
        Decision::No
    };
    Ok(SolveOutcome { decision, stats: SolveStats::default() })
}

fn solve_pipeline(
    g0: &MultiGraph,
    k: usize,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolveError> {
    let c = opts.c_override.unwrap_or_else(theorem2_constant);
    let target = girth_target(k);
    let mut stats = SolveStats { g: target, ..SolveStats::default() };

    // Dropping edges beyond the dichotomy threshold keeps the answer: the
    // kept prefix alone already carries k disjoint cycles if anything does.
    let (g1, _) = discard_excess_edges(g0, k, c);

    let s = match find_s_set(&g1, k, target) {
        SSetOutcome::Packing(p) => {
            let p: Packing = p[..k].to_vec();
            assert!(verify_packing(g0, &p, k), "early packing must certify on the input");
            return Ok(SolveOutcome { decision: Decision::Yes(p), stats });
        }
        SSetOutcome::SSet(s) => s,
    };
    stats.s_size = s.len();
    stats.reduce_size = reduce(&g1.without_vertices(&s)).reduced.num_vertices();
    assert!(
        check_core_size_bound_with_constant(&g1, &s, k, target, c),
        "high-girth kernel must meet its size bound"
    );

    let (pruned, core, prune_trace) = core_decomposition(&g1, &s, k)?;

    let mut truncated = false;
    let mut undecided = false;
    for item in enumerate_instances(&pruned, &core, opts.budget) {
        let inst = match item {
            GuessItem::Instance(inst) => inst,
            GuessItem::Incomplete => {
                truncated = true;
                break;
            }
        };
        stats.instances_tried += 1;
        let yes = match ie_decide(&inst.g_prime, k) {
            Ok(yes) => yes,
            // An instance too big for the subset pass cannot be decided
            // here; a later instance may still prove yes, but no is gone.
            Err(ExactError::TooLarge { .. }) => {
                undecided = true;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if !yes {
            continue;
        }
        let found = ie_search(&inst.g_prime, k)
            .expect("search accepts every instance the decision accepted")
            .expect("search succeeds whenever the decision is yes");
        let in_pruned = lift_packing(&pruned, &inst, &found, k);
        let lifted = lift_packing_through_trace(&g1, &prune_trace, in_pruned);
        assert!(verify_packing(g0, &lifted, k), "pipeline packing must certify on the input");
        return Ok(SolveOutcome { decision: Decision::Yes(lifted), stats });
    }

    let decision = if truncated || undecided { Decision::Inconclusive } else { Decision::No };
    Ok(SolveOutcome { decision, stats })
}
