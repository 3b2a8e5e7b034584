//! Verification sweeps over Cartesian parameter grids, with a fixed-size
//! work pool and output that is byte-identical regardless of parallelism.

use crate::adjacency::SystemKind;
use crate::graph::BipartiteGraph;
use crate::ktheory::{verify, VerificationReport};
use serde_json::json;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("range {0} is empty or starts below 1")]
    BadRange(&'static str),
    #[error("no kinds selected")]
    NoKinds,
    #[error("no t values selected")]
    NoTValues,
    #[error("kind {kind} cannot run at t = {t}: {reason}")]
    IncompatibleT {
        kind: String,
        t: u32,
        reason: String,
    },
}

/// What to sweep: inclusive side ranges, kind names, and t values. Every
/// (kind, t) combination must satisfy the kind's t-constraint.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub alpha_range: (u32, u32),
    pub beta_range: (u32, u32),
    pub kinds: Vec<String>,
    pub t_values: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepCell {
    pub alpha: u32,
    pub beta: u32,
    pub kind: SystemKind,
}

impl SweepSpec {
    /// Validate and expand into the deterministic cell list: alpha, then
    /// beta, then kind, then t.
    pub fn cells(&self) -> Result<Vec<SweepCell>, SweepError> {
        let (a_lo, a_hi) = self.alpha_range;
        let (b_lo, b_hi) = self.beta_range;
        if a_lo < 1 || a_lo > a_hi {
            return Err(SweepError::BadRange("alpha"));
        }
        if b_lo < 1 || b_lo > b_hi {
            return Err(SweepError::BadRange("beta"));
        }
        if self.kinds.is_empty() {
            return Err(SweepError::NoKinds);
        }
        if self.t_values.is_empty() {
            return Err(SweepError::NoTValues);
        }
        let mut kinds = Vec::new();
        for tag in &self.kinds {
            for &t in &self.t_values {
                let kind = SystemKind::new(tag, t).map_err(|e| SweepError::IncompatibleT {
                    kind: tag.clone(),
                    t,
                    reason: e.to_string(),
                })?;
                kinds.push(kind);
            }
        }
        kinds.dedup();
        let mut cells = Vec::new();
        for alpha in a_lo..=a_hi {
            for beta in b_lo..=b_hi {
                for &kind in &kinds {
                    cells.push(SweepCell { alpha, beta, kind });
                }
            }
        }
        Ok(cells)
    }
}

/// One sweep cell's outcome.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub alpha: u32,
    pub beta: u32,
    pub kind: SystemKind,
    pub outcome: Result<VerificationReport, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepSummary {
    pub cells: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub errors: usize,
}

impl SweepSummary {
    pub fn line(&self) -> String {
        format!(
            "cells={} matches={} mismatches={} errors={}",
            self.cells, self.matches, self.mismatches, self.errors
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

fn run_cell(cell: SweepCell) -> SweepRecord {
    let outcome = BipartiteGraph::complete(cell.alpha, cell.beta)
        .map_err(|e| e.to_string())
        .and_then(|g| verify(&g, cell.kind).map_err(|e| e.to_string()));
    SweepRecord {
        alpha: cell.alpha,
        beta: cell.beta,
        kind: cell.kind,
        outcome,
    }
}

/// Run every cell on a pool of `jobs` workers. Records come back in cell
/// order whatever the pool size.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<SweepResult, SweepError> {
    let cells = spec.cells()?;
    let jobs = jobs.max(1).min(cells.len().max(1));
    let mut records: Vec<Option<SweepRecord>> = Vec::new();
    if jobs <= 1 {
        records.extend(cells.iter().map(|&c| Some(run_cell(c))));
    } else {
        let slots: Vec<Mutex<Option<SweepRecord>>> =
            cells.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= cells.len() {
                        break;
                    }
                    *slots[i].lock().unwrap() = Some(run_cell(cells[i]));
                });
            }
        });
        records.extend(slots.into_iter().map(|s| s.into_inner().unwrap()));
    }
    let records: Vec<SweepRecord> = records.into_iter().map(Option::unwrap).collect();
    let mut summary = SweepSummary {
        cells: records.len(),
        ..Default::default()
    };
    for r in &records {
        match &r.outcome {
            Ok(report) if report.matched => summary.matches += 1,
            Ok(_) => summary.mismatches += 1,
            Err(_) => summary.errors += 1,
        }
    }
    Ok(SweepResult { records, summary })
}

pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::from(
        "alpha,beta,kind,t,k0,k0_predicted,identity_order,identity_order_predicted,match\n",
    );
    for r in &result.records {
        match &r.outcome {
            Ok(rep) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.alpha,
                    r.beta,
                    r.kind.cli_name(),
                    r.kind.t(),
                    rep.computed.render(),
                    rep.predicted.as_ref().map_or_else(String::new, |p| p.render()),
                    rep.identity_order_computed,
                    rep.identity_order_predicted
                        .map_or_else(|| "not stated".to_string(), |o| o.to_string()),
                    rep.matched,
                );
            }
            Err(_) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},,,,,error",
                    r.alpha,
                    r.beta,
                    r.kind.cli_name(),
                    r.kind.t(),
                );
            }
        }
    }
    out
}

pub fn to_json(result: &SweepResult) -> serde_json::Value {
    let records: Vec<serde_json::Value> = result
        .records
        .iter()
        .map(|r| match &r.outcome {
            Ok(rep) => serde_json::to_value(rep).expect("report serializes"),
            Err(e) => json!({
                "graph": {"alpha": r.alpha, "beta": r.beta},
                "kind": r.kind.cli_name(),
                "t": r.kind.t(),
                "error": e,
            }),
        })
        .collect();
    json!({
        "records": records,
        "summary": {
            "cells": result.summary.cells,
            "matches": result.summary.matches,
            "mismatches": result.summary.mismatches,
            "errors": result.summary.errors,
        },
    })
}

pub fn to_text(result: &SweepResult) -> String {
    let mut out = String::new();
    for r in &result.records {
        let head = format!(
            "kappa({},{}) {} t={}",
            r.alpha,
            r.beta,
            r.kind.cli_name(),
            r.kind.t()
        );
        match &r.outcome {
            Ok(rep) => {
                let _ = writeln!(
                    out,
                    "{head}: K0 = {} | predicted {} | [1] order {} (predicted {}) | match={}",
                    rep.computed.render(),
                    rep.predicted.as_ref().map_or_else(|| "n/a".into(), |p| p.render()),
                    rep.identity_order_computed,
                    rep.identity_order_predicted
                        .map_or_else(|| "not stated".to_string(), |o| o.to_string()),
                    rep.matched,
                );
            }
            Err(e) => {
                let _ = writeln!(out, "{head}: error: {e}");
            }
        }
    }
    out
}
