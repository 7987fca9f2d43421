//! Serializable report schemas emitted by the harness and the CLI.
//!
//! Reports are deterministic given config and seed: anything wall-clock
//! dependent (timestamps, runtimes) is kept out of the serialized body and
//! written to a sidecar by the CLI.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::harness::{Branch, Classification, Consistency};
use crate::quadrature::PairParams;

pub const SCHEMA_VERSION: u32 = 1;

/// Report fragment for a single measured quantity (norms, criteria).
#[derive(Debug, Clone, Serialize)]
pub struct QuantityReport {
    pub schema_version: u32,
    pub quantity: String,
    /// Resolved parameters, echoed back for reproducibility.
    pub params: serde_json::Value,
    /// (r_max, value) pairs when the quantity was run on a schedule.
    pub r_max_schedule: Vec<(f64, f64)>,
    pub values: BTreeMap<String, f64>,
    pub verdict: Option<String>,
    pub seed: u64,
}

impl QuantityReport {
    pub fn new(quantity: impl Into<String>, params: serde_json::Value, seed: u64) -> Self {
        QuantityReport {
            schema_version: SCHEMA_VERSION,
            quantity: quantity.into(),
            params,
            r_max_schedule: Vec::new(),
            values: BTreeMap::new(),
            verdict: None,
            seed,
        }
    }
}

/// Ordering evidence: the best empirical lower bound against the upper proxy
/// derived from the criterion quantities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderingEvidence {
    pub lower_max: f64,
    pub upper_proxy: f64,
}

/// Full consistency report joining the classifier with the empirical probes.
#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub schema_version: u32,
    pub symbol_descriptor: String,
    pub pair: PairParams,
    pub branch: Branch,
    pub gamma: f64,
    pub criterion_schedule: Option<Vec<(f64, f64)>>,
    pub seminorm: Option<Vec<(f64, f64)>>,
    pub decay_profile: Option<Vec<(f64, f64)>>,
    /// (1-|w|, running max of the operator-norm lower bound)
    pub lower_bounds: Vec<(f64, f64)>,
    /// (1-|w|, ||T_g k_p(w,.)||) along the boundary schedule
    pub probe_profile: Vec<(f64, f64)>,
    pub classification: Classification,
    pub constancy_flag: bool,
    pub consistency: Consistency,
    pub ordering: OrderingEvidence,
    pub seed: u64,
    /// Wall-clock cost; serialized to the sidecar, not the report body.
    #[serde(skip_serializing)]
    pub runtime_ms: u128,
}
