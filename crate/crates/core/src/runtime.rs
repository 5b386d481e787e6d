//! Deterministic LOCAL-model execution.
//!
//! An `r`-round LOCAL algorithm is a function of each vertex's radius-`r`
//! view. [`run_by_views`] evaluates that function directly, while
//! [`run_by_messages`] floods full knowledge for `r` synchronous rounds and
//! rebuilds each view from what was received. The two must agree exactly.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BallView, Graph, Vertex};

type Rule<O> = dyn Fn(&BallView) -> Result<O> + Send + Sync;

/// A view radius paired with a deterministic rule evaluated on each view.
pub struct LocalAlgorithm<O> {
    name: String,
    radius: usize,
    rule: Arc<Rule<O>>,
}

impl<O> Clone for LocalAlgorithm<O> {
    fn clone(&self) -> Self {
        LocalAlgorithm {
            name: self.name.clone(),
            radius: self.radius,
            rule: Arc::clone(&self.rule),
        }
    }
}

impl<O> fmt::Debug for LocalAlgorithm<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalAlgorithm")
            .field("name", &self.name)
            .field("radius", &self.radius)
            .finish_non_exhaustive()
    }
}

impl<O> LocalAlgorithm<O> {
    pub fn new<F>(name: impl Into<String>, radius: usize, rule: F) -> Self
    where
        F: Fn(&BallView) -> Result<O> + Send + Sync + 'static,
    {
        LocalAlgorithm {
            name: name.into(),
            radius,
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Applies the rule, tagging failures with the view's center.
    pub fn decide(&self, view: &BallView) -> Result<O> {
        (self.rule)(view).map_err(|e| Error::Rule {
            center: view.center(),
            source: Box::new(e),
        })
    }

    /// Decision of a single vertex.
    pub fn decide_at(&self, g: &Graph, u: Vertex) -> Result<O> {
        self.decide(&g.ball(u, self.radius)?)
    }
}

/// Round counts per phase of a (possibly multi-stage) LOCAL execution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LedgerRecord", into = "LedgerRecord")]
pub struct RoundLedger {
    view_collection: usize,
    algorithm_run: usize,
    repair: usize,
}

impl RoundLedger {
    pub fn new(view_collection: usize, algorithm_run: usize, repair: usize) -> Self {
        RoundLedger {
            view_collection,
            algorithm_run,
            repair,
        }
    }

    pub fn view_collection(&self) -> usize {
        self.view_collection
    }

    pub fn algorithm_run(&self) -> usize {
        self.algorithm_run
    }

    pub fn repair(&self) -> usize {
        self.repair
    }

    pub fn total(&self) -> usize {
        self.view_collection + self.algorithm_run + self.repair
    }
}

#[derive(Serialize, Deserialize)]
struct LedgerRecord {
    view_collection: usize,
    algorithm_run: usize,
    repair: usize,
    total: usize,
}

impl From<RoundLedger> for LedgerRecord {
    fn from(l: RoundLedger) -> Self {
        LedgerRecord {
            view_collection: l.view_collection,
            algorithm_run: l.algorithm_run,
            repair: l.repair,
            total: l.total(),
        }
    }
}

impl TryFrom<LedgerRecord> for RoundLedger {
    type Error = String;

    fn try_from(r: LedgerRecord) -> std::result::Result<Self, String> {
        let ledger = RoundLedger::new(r.view_collection, r.algorithm_run, r.repair);
        if ledger.total() != r.total {
            return Err(format!(
                "ledger total {} does not equal the sum of its phases {}",
                r.total,
                ledger.total()
            ));
        }
        Ok(ledger)
    }
}

/// Evaluates `alg` on the radius-`alg.radius()` ball of every vertex. The
/// result is indexed by vertex.
///
/// Evaluation is parallel; if several vertices fail, the error of the
/// smallest one is returned.
pub fn run_by_views<O: Send>(g: &Graph, alg: &LocalAlgorithm<O>) -> Result<Vec<O>> {
    let results: Vec<Result<O>> = g
        .vertices()
        .into_par_iter()
        .map(|u| alg.decide(&g.ball(u, alg.radius())?))
        .collect();
    results.into_iter().collect()
}

/// What a vertex has learned: the adjacency list of every vertex it has
/// heard about.
type Knowledge = BTreeMap<Vertex, Arc<[Vertex]>>;

/// Synchronous flooding: in each round every vertex sends its whole
/// knowledge to all neighbours. After `alg.radius()` rounds each vertex
/// rebuilds its ball from the records it holds and applies the rule.
pub fn run_by_messages<O: Send>(
    g: &Graph,
    alg: &LocalAlgorithm<O>,
) -> Result<(Vec<O>, RoundLedger)> {
    let mut knowledge: Vec<Knowledge> = g
        .vertices()
        .map(|u| Knowledge::from([(u, Arc::from(g.neighbors(u)))]))
        .collect();
    for _ in 0..alg.radius() {
        knowledge = deliver_round(g, &knowledge);
    }
    let results: Vec<Result<O>> = knowledge
        .par_iter()
        .enumerate()
        .map(|(u, known)| alg.decide(&view_from_knowledge(u, alg.radius(), known)?))
        .collect();
    let decisions = results.into_iter().collect::<Result<Vec<O>>>()?;
    Ok((decisions, RoundLedger::new(alg.radius(), 0, 0)))
}

/// One synchronous round: every vertex receives its neighbours' knowledge.
fn deliver_round(g: &Graph, knowledge: &[Knowledge]) -> Vec<Knowledge> {
    (0..knowledge.len())
        .into_par_iter()
        .map(|u| {
            let mut next = knowledge[u].clone();
            for &w in g.neighbors(u) {
                for (&v, adj) in &knowledge[w] {
                    next.entry(v).or_insert_with(|| Arc::clone(adj));
                }
            }
            next
        })
        .collect()
}

/// Rebuilds `G[N^radius[u]]` from received adjacency records.
fn view_from_knowledge(u: Vertex, radius: usize, known: &Knowledge) -> Result<BallView> {
    let mut dist: BTreeMap<Vertex, usize> = BTreeMap::from([(u, 0)]);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        if dx == radius {
            continue;
        }
        let adj = known.get(&x).ok_or_else(|| {
            Error::Internal(format!("vertex {u} lacks the record of {x} after flooding"))
        })?;
        for &y in adj.iter() {
            if !dist.contains_key(&y) {
                dist.insert(y, dx + 1);
                queue.push_back(y);
            }
        }
    }
    let labels: Vec<Vertex> = dist.keys().copied().collect();
    let mut edges = Vec::new();
    for (i, &x) in labels.iter().enumerate() {
        let adj = known.get(&x).ok_or_else(|| {
            Error::Internal(format!("vertex {u} lacks the record of {x} after flooding"))
        })?;
        for &y in adj.iter() {
            if let Ok(j) = labels.binary_search(&y) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    let local_dist = dist.values().copied().collect();
    BallView::from_parts(u, radius, graph, labels, local_dist)
}
