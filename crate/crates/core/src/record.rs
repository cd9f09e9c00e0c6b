//! Flat experiment records for JSON-lines and CSV output.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::algos::{Algorithm, AlgoParams, SpannerOutput};
use crate::graph::WeightedGraph;
use crate::verify::{size_report, Verdict};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictSummary {
    Pass,
    Fail,
    Skipped,
}

/// One algorithm run. Every field is a scalar so the record maps directly
/// onto a CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub algorithm: String,
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub k: usize,
    pub c: Option<f64>,
    pub tau: Option<f64>,
    pub delta: Option<usize>,
    pub seed: u64,
    pub spanner_edges: usize,
    pub size_ratio: f64,
    pub sets: usize,
    pub empty_membership_edges: usize,
    pub preprocess_ms: f64,
    pub main_ms: f64,
    pub verify_ms: f64,
    /// `off`, `exhaustive` or `sampled:N`.
    pub verify_mode: String,
    pub verdict: VerdictSummary,
    pub checked: Option<u64>,
    /// JSON of the counterexample when the verdict is `fail`.
    pub counterexample: Option<String>,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl ExperimentRecord {
    pub fn new<W: Weight>(
        algorithm: Algorithm,
        graph: impl Into<String>,
        g: &WeightedGraph<W>,
        params: &AlgoParams,
        out: &SpannerOutput<W>,
    ) -> Self {
        let report = size_report(&out.spanner, g.n(), params.f, params.k);
        Self {
            algorithm: algorithm.name().to_string(),
            graph: graph.into(),
            n: g.n(),
            m: g.m(),
            f: params.f,
            k: params.k,
            c: out.stats.c,
            tau: out.stats.tau,
            delta: out.stats.delta,
            seed: params.seed,
            spanner_edges: out.spanner.m(),
            size_ratio: report.ratio,
            sets: out.stats.sets,
            empty_membership_edges: out.stats.empty_membership_edges,
            preprocess_ms: ms(out.stats.preprocess),
            main_ms: ms(out.stats.main),
            verify_ms: 0.0,
            verify_mode: "off".into(),
            verdict: VerdictSummary::Skipped,
            checked: None,
            counterexample: None,
        }
    }

    pub fn with_verdict(mut self, mode: impl Into<String>, verdict: &Verdict, took: Duration) -> Self {
        self.verify_mode = mode.into();
        self.verify_ms = ms(took);
        self.verdict = if verdict.pass {
            VerdictSummary::Pass
        } else {
            VerdictSummary::Fail
        };
        self.checked = Some(verdict.checked_count);
        self.counterexample = verdict
            .counterexample
            .as_ref()
            .map(|cx| format!("{cx:?}"));
        self
    }

    /// The record with wall-clock fields zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        Self {
            preprocess_ms: 0.0,
            main_ms: 0.0,
            verify_ms: 0.0,
            ..self.clone()
        }
    }
}
