//! Empirical space-filling profiles: per-query disjoint-object counts,
//! plus roundness and doubling diagnostics for the report.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use weakdiam_core::spacefill::{
    doubling_estimate, spacefill_count, CountMode, SpacefillQuery,
};

use crate::instance::Instance;

pub const EXACT_LIMIT: usize = 25;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub queries: Vec<QueryEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryEntry {
    /// Point index of the ball center.
    pub x: usize,
    pub r: f64,
    pub s: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileRow {
    pub x: usize,
    pub r: f64,
    pub s: f64,
    pub count: usize,
    /// "exact" when the candidate set was small enough, else "greedy"
    /// (a lower bound).
    pub mode: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileReport {
    pub rows: Vec<ProfileRow>,
    pub doubling_estimate: usize,
}

pub fn run_profile(instance: &Instance, queries_path: &Path) -> Result<ProfileReport> {
    let text = std::fs::read_to_string(queries_path)
        .with_context(|| format!("cannot read {}", queries_path.display()))?;
    let qf: QueryFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed query file {}", queries_path.display()))?;
    let mut rows = Vec::new();
    for q in &qf.queries {
        anyhow::ensure!(q.x < instance.space.len(), "query center {} out of range", q.x);
        anyhow::ensure!(q.r > 0.0 && q.s > 0.0, "query lengths must be positive");
        let query = SpacefillQuery { center: q.x, radius: q.r, min_diameter: q.s };
        let (count, mode) = match spacefill_count(
            &instance.space,
            &instance.system,
            &query,
            CountMode::Exact,
            EXACT_LIMIT,
        ) {
            Ok(c) => (c, "exact"),
            Err(_) => (
                spacefill_count(
                    &instance.space,
                    &instance.system,
                    &query,
                    CountMode::Greedy,
                    EXACT_LIMIT,
                )
                .expect("greedy mode never refuses"),
                "greedy",
            ),
        };
        rows.push(ProfileRow { x: q.x, r: q.r, s: q.s, count, mode: mode.to_string() });
    }
    Ok(ProfileReport { rows, doubling_estimate: doubling_estimate(&instance.space) })
}
