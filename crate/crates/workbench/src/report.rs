//! Running an algorithm on one graph and recording everything about the run.

use std::sync::Arc;
use std::time::Instant;

use localdom::domination::{is_dominating_set, mds_size};
use localdom::generic::{algorithm_b, BConfig, ControlFunction, ErrorSetReport};
use localdom::planar::{run_algorithm_a, Executor, PlanarNomination, RATIO, UNIFORMITY_RADIUS};
use localdom::planarity::ClassPredicate;
use localdom::runtime::RoundLedger;
use localdom::{Graph, VertexSet};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;

/// Which algorithm to run, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all_fields = "camelCase")]
pub enum AlgorithmConfig {
    A {
        #[serde(default)]
        executor: Executor,
    },
    /// The error-tolerant composition over the planar algorithm with the
    /// planarity predicate. `uniformity_radius` and `alpha` are the values
    /// declared for the sub-algorithm.
    B {
        control: ControlFunction,
        uniformity_radius: usize,
        alpha: u64,
        dimension: usize,
    },
}

impl AlgorithmConfig {
    pub fn a() -> Self {
        AlgorithmConfig::A {
            executor: Executor::Views,
        }
    }

    /// Default composition: `f(x) = slope·x`, `k = 4`, `α = 302`, `d = 2`.
    pub fn b(slope: usize) -> Self {
        AlgorithmConfig::B {
            control: ControlFunction::linear(slope),
            uniformity_radius: UNIFORMITY_RADIUS,
            alpha: RATIO,
            dimension: 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            AlgorithmConfig::A { .. } => "A".to_string(),
            AlgorithmConfig::B { control, .. } => format!("B[{control}]"),
        }
    }

    /// The composition's configuration, for `B`.
    pub fn b_config(&self) -> Option<BConfig> {
        match *self {
            AlgorithmConfig::A { .. } => None,
            AlgorithmConfig::B {
                control,
                uniformity_radius,
                alpha,
                dimension,
            } => Some(BConfig::new(
                Arc::new(PlanarNomination::declared(uniformity_radius, Ratio::from_integer(alpha))),
                ClassPredicate::planar(),
                control,
                dimension,
            )),
        }
    }
}

/// What one run produced, before any oracle is consulted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub output: VertexSet,
    pub ledger: RoundLedger,
    pub error_report: Option<ErrorSetReport>,
    pub repair: Option<VertexSet>,
}

pub fn run(g: &Graph, config: &AlgorithmConfig) -> Result<RunOutcome> {
    match config {
        AlgorithmConfig::A { executor } => {
            let run = run_algorithm_a(g, *executor)?;
            Ok(RunOutcome {
                output: run.output,
                ledger: run.ledger,
                error_report: None,
                repair: None,
            })
        }
        AlgorithmConfig::B { .. } => {
            let cfg = config.b_config().expect("B has a composition config");
            let run = algorithm_b(g, &cfg)?;
            Ok(RunOutcome {
                output: run.output,
                ledger: run.ledger,
                error_report: Some(run.error_report),
                repair: Some(run.repair),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OptimumKind {
    Exact,
    LowerBound,
}

/// Reference value for the ratio. Against a lower bound the realized ratio
/// is only an upper bound on the true one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub value: usize,
    pub kind: OptimumKind,
}

/// Vertices pairwise at distance at least 3, chosen greedily by ascending
/// degree. No vertex dominates two of them, so the count bounds the
/// domination number from below.
pub fn distance_three_packing(g: &Graph) -> VertexSet {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut blocked = vec![false; g.n()];
    let mut packing = VertexSet::new();
    for v in order {
        if blocked[v] {
            continue;
        }
        packing.insert(v);
        for (w, d) in g.bfs(v, Some(2)).into_iter().enumerate() {
            if d.is_some() {
                blocked[w] = true;
            }
        }
    }
    packing
}

/// Exact optimum when `g` has at most `exact_limit` vertices, otherwise the
/// packing lower bound.
pub fn optimum(g: &Graph, exact_limit: usize) -> Result<Optimum> {
    if g.n() <= exact_limit {
        let all: VertexSet = g.vertices().collect();
        Ok(Optimum {
            value: mds_size(g, &all)?,
            kind: OptimumKind::Exact,
        })
    } else {
        Ok(Optimum {
            value: distance_three_packing(g).len(),
            kind: OptimumKind::LowerBound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub name: String,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

impl GraphDescriptor {
    pub fn new(name: impl Into<String>, g: &Graph, generator: Option<GeneratorSpec>) -> Self {
        GraphDescriptor {
            name: name.into(),
            n: g.n(),
            m: g.m(),
            generator,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub graph: GraphDescriptor,
    pub algorithm: AlgorithmConfig,
    pub output: VertexSet,
    pub size: usize,
    pub optimum: Option<Optimum>,
    /// `size / optimum.value`.
    pub ratio: Option<f64>,
    pub error_report: Option<ErrorSetReport>,
    pub repair: Option<VertexSet>,
    pub ledger: RoundLedger,
    pub wall_clock_ms: f64,
}

/// Runs `config` on `g` and assembles the report. The optimum is computed
/// as in [`optimum`].
pub fn make_report(
    graph: GraphDescriptor,
    g: &Graph,
    config: &AlgorithmConfig,
    exact_limit: usize,
) -> Result<RunReport> {
    let start = Instant::now();
    let outcome = run(g, config)?;
    let wall_clock_ms = start.elapsed().as_secs_f64() * 1e3;
    let optimum = optimum(g, exact_limit)?;
    let size = outcome.output.len();
    let report = RunReport {
        graph,
        algorithm: config.clone(),
        size,
        ratio: realized_ratio(size, Some(optimum)),
        optimum: Some(optimum),
        output: outcome.output,
        error_report: outcome.error_report,
        repair: outcome.repair,
        ledger: outcome.ledger,
        wall_clock_ms,
    };
    report.verify(g)?;
    Ok(report)
}

fn realized_ratio(size: usize, optimum: Option<Optimum>) -> Option<f64> {
    match optimum {
        Some(o) if o.value > 0 => Some(size as f64 / o.value as f64),
        _ => None,
    }
}

impl RunReport {
    /// Re-checks a report against its graph: the output dominates, the
    /// recorded size and ratio match, and a composition run's repair set
    /// and ledger are consistent with its error report.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::Report(msg));
        if g.n() != self.graph.n || g.m() != self.graph.m {
            return fail(format!(
                "graph has n={}, m={} but the report says n={}, m={}",
                g.n(),
                g.m(),
                self.graph.n,
                self.graph.m
            ));
        }
        g.check_set(&self.output)?;
        if !is_dominating_set(g, &self.output) {
            return fail("output does not dominate the graph".into());
        }
        if self.size != self.output.len() {
            return fail(format!("size {} but output has {} vertices", self.size, self.output.len()));
        }
        if self.ratio != realized_ratio(self.size, self.optimum) {
            return fail("ratio does not equal size / optimum".into());
        }
        if let (Some(errors), Some(repair)) = (&self.error_report, &self.repair) {
            if !repair.is_subset(&self.output) {
                return fail("repair set is not part of the output".into());
            }
            let cfg = self.algorithm.b_config().ok_or_else(|| Error::Report("error report without B".into()))?;
            let expected = cfg.error_radius() + errors.delta + 2;
            if self.ledger.total() != expected {
                return fail(format!("ledger total {} but T+δ+2 = {expected}", self.ledger.total()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses a report and verifies it against `g`.
    pub fn from_json(text: &str, g: &Graph) -> Result<RunReport> {
        let report: RunReport = serde_json::from_str(text)?;
        report.verify(g)?;
        Ok(report)
    }
}
