//! JSON report schema for `solve` and `decide`.
//!
//! Field order is fixed by the struct declarations, so two runs with the
//! same inputs and flags serialize byte-identically except for
//! `stats.elapsed_ms`.

use cyclepack_core::multigraph::Packing;
use serde::Serialize;

use crate::solve::{Decision, SolveOutcome};

/// Pipeline counters; fields other than `elapsed_ms` are deterministic.
/// Outside the pipeline strategy `instances_tried`, `s_size`, `reduce_size`,
/// and `g` stay 0.
#[derive(Clone, Debug, Serialize)]
pub struct Stats {
    pub instances_tried: usize,
    pub s_size: usize,
    pub reduce_size: usize,
    pub g: u64,
    pub elapsed_ms: u128,
}

/// One solver run.  `packing` holds 1-based vertex sequences on a yes (when
/// the caller asked for the certificate), `c_override` appears only when the
/// dichotomy constant was overridden.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub decision: &'static str,
    pub k: usize,
    pub packing: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_override: Option<u64>,
    pub stats: Stats,
}

/// 1-based vertex sequences of a packing, for reports and `verify` input.
pub fn packing_to_file_ids(p: &Packing) -> Vec<Vec<u32>> {
    p.iter().map(|c| c.vertices().iter().map(|&v| v + 1).collect()).collect()
}

impl Report {
    /// Assembles the report; `with_packing = false` (the `decide`
    /// subcommand) withholds the certificate but keeps the decision.
    pub fn from_outcome(
        outcome: &SolveOutcome,
        k: usize,
        c_override: Option<u64>,
        elapsed_ms: u128,
        with_packing: bool,
    ) -> Report {
        let (decision, packing) = match &outcome.decision {
            Decision::Yes(p) => {
                ("yes", if with_packing { Some(packing_to_file_ids(p)) } else { None })
            }
            Decision::No => ("no", None),
            Decision::Inconclusive => ("inconclusive", None),
        };
        Report {
            decision,
            k,
            packing,
            c_override,
            stats: Stats {
                instances_tried: outcome.stats.instances_tried,
                s_size: outcome.stats.s_size,
                reduce_size: outcome.stats.reduce_size,
                g: outcome.stats.g,
                elapsed_ms,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
