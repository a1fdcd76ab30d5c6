//! Library side of the `entrobell` command-line tool: campaign engine,
//! scenario runners, and output emission. The binary in `main.rs` is a thin
//! argument-parsing shell over these.

pub mod campaign;
pub mod output;
pub mod scenario;

use serde::Serialize;

/// Top-level JSON document emitted by every subcommand in JSON mode.
#[derive(Debug, Clone, Serialize)]
pub struct OutputDoc {
    pub tool_version: String,
    pub seed: Option<u64>,
    pub spec: serde_json::Value,
    pub results: Vec<entrobell::InequalityReport>,
    pub summary: serde_json::Value,
}

impl OutputDoc {
    pub fn new(
        seed: Option<u64>,
        spec: serde_json::Value,
        results: Vec<entrobell::InequalityReport>,
        summary: serde_json::Value,
    ) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            spec,
            results,
            summary,
        }
    }
}

/// Whether a named inequality is guaranteed for *arbitrary* inputs, i.e.
/// gates the exit status of `check` on user-supplied data. Pipelining and
/// the triangle form need the Markov structure, so on arbitrary joints they
/// are reported but not gating; the rest hold universally (the quantum
/// bound within its three-qubit domain).
pub fn universally_must_hold(name: &str) -> bool {
    matches!(
        name,
        "bounded_difference_x"
            | "bounded_difference_y"
            | "bounded_difference_z"
            | "cerf_adami_classical"
            | "cerf_adami_quantum"
            | "subadditivity_sum"
            | "strong_subadditivity"
    )
}

/// Whether a report gates scenario exit status. Everything does, except the
/// classical-bound view of the quantum evaluation — exceeding it is the
/// point of the entangled configuration.
pub fn scenario_must_hold(name: &str) -> bool {
    name != "cerf_adami_quantum_vs_classical"
}
