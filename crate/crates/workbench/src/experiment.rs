//! Suites: every algorithm on every generated graph, one row per cell.

use std::collections::BTreeMap;
use std::io::Write;

use localdom::domination::is_dominating_set;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::{generate, GeneratorSpec};
use crate::report::{make_report, AlgorithmConfig, GraphDescriptor, OptimumKind, RunReport};

fn default_oracle_limit() -> usize {
    40
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Suite {
    #[serde(default)]
    pub name: String,
    /// Graphs with at most this many vertices get an exact optimum.
    #[serde(default = "default_oracle_limit")]
    pub oracle_limit: usize,
    pub graphs: Vec<GeneratorSpec>,
    pub algorithms: Vec<AlgorithmConfig>,
}

/// One CSV row. Wall-clock time is left out so equal suites give equal
/// files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub graph: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub genus_bound: Option<usize>,
    pub algorithm: String,
    pub size: Option<usize>,
    pub optimum: Option<usize>,
    pub optimum_kind: Option<String>,
    pub ratio: Option<String>,
    pub dominates: Option<bool>,
    pub rounds: Option<usize>,
    pub error_radius: Option<usize>,
    pub errors: Option<usize>,
    pub delta: Option<usize>,
    pub repair: Option<usize>,
    pub failure: Option<String>,
}

impl Row {
    fn from_report(spec: &GeneratorSpec, r: &RunReport, dominates: bool) -> Row {
        let b = r.algorithm.b_config();
        Row {
            graph: r.graph.name.clone(),
            family: spec.family().to_string(),
            n: r.graph.n,
            m: r.graph.m,
            genus_bound: spec.genus_upper_bound(),
            algorithm: r.algorithm.label(),
            size: Some(r.size),
            optimum: r.optimum.map(|o| o.value),
            optimum_kind: r.optimum.map(|o| match o.kind {
                OptimumKind::Exact => "exact".to_string(),
                OptimumKind::LowerBound => "lowerBound".to_string(),
            }),
            ratio: r.ratio.map(|x| format!("{x:.6}")),
            dominates: Some(dominates),
            rounds: Some(r.ledger.total()),
            error_radius: b.map(|c| c.error_radius()),
            errors: r.error_report.as_ref().map(|e| e.errors.len()),
            delta: r.error_report.as_ref().map(|e| e.delta),
            repair: r.repair.as_ref().map(|s| s.len()),
            failure: None,
        }
    }

    fn failed(spec: &GeneratorSpec, config: &AlgorithmConfig, n: usize, m: usize, msg: String) -> Row {
        Row {
            graph: spec.to_string(),
            family: spec.family().to_string(),
            n,
            m,
            genus_bound: spec.genus_upper_bound(),
            algorithm: config.label(),
            size: None,
            optimum: None,
            optimum_kind: None,
            ratio: None,
            dominates: None,
            rounds: None,
            error_radius: None,
            errors: None,
            delta: None,
            repair: None,
            failure: Some(msg),
        }
    }
}

/// Largest and mean realized ratio of one algorithm over rows with an
/// exact optimum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioSummary {
    pub algorithm: String,
    pub cells: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteResult {
    pub rows: Vec<Row>,
    pub summary: Vec<RatioSummary>,
    pub failures: usize,
}

/// Runs every cell; cells run in parallel but rows follow suite order
/// (graphs outer, algorithms inner). A failing cell is recorded in its
/// row and does not stop the suite.
pub fn run_suite(suite: &Suite) -> SuiteResult {
    let cells: Vec<(&GeneratorSpec, &AlgorithmConfig)> = suite
        .graphs
        .iter()
        .flat_map(|g| suite.algorithms.iter().map(move |a| (g, a)))
        .collect();
    let rows: Vec<Row> = cells
        .par_iter()
        .map(|&(spec, config)| run_cell(spec, config, suite.oracle_limit))
        .collect();
    let summary = summarize(&rows);
    let failures = rows.iter().filter(|r| r.failure.is_some()).count();
    SuiteResult {
        rows,
        summary,
        failures,
    }
}

fn run_cell(spec: &GeneratorSpec, config: &AlgorithmConfig, oracle_limit: usize) -> Row {
    let g = match generate(spec) {
        Ok(g) => g,
        Err(e) => return Row::failed(spec, config, 0, 0, format!("{}: {e}", e.category())),
    };
    let desc = GraphDescriptor::new(spec.to_string(), &g, Some(spec.clone()));
    match make_report(desc, &g, config, oracle_limit) {
        Ok(report) => Row::from_report(spec, &report, is_dominating_set(&g, &report.output)),
        Err(e) => Row::failed(spec, config, g.n(), g.m(), format!("{}: {e}", e.category())),
    }
}

fn summarize(rows: &[Row]) -> Vec<RatioSummary> {
    let mut by_alg: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in rows {
        if let (Some("exact"), Some(size), Some(opt)) = (r.optimum_kind.as_deref(), r.size, r.optimum) {
            if opt > 0 {
                by_alg.entry(&r.algorithm).or_default().push(size as f64 / opt as f64);
            }
        }
    }
    by_alg
        .into_iter()
        .map(|(alg, ratios)| RatioSummary {
            algorithm: alg.to_string(),
            cells: ratios.len(),
            max_ratio: ratios.iter().copied().fold(0.0, f64::max),
            mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
