//! The 5-round nomination algorithm for dominating set on planar graphs.
//!
//! Every vertex `u` collects its radius-4 ball, computes the best minimum
//! dominating set `D_u` of the vertices at distance at most 3, and nominates
//! the smallest vertex of `D_u ∩ N[u]`. One more round delivers the
//! nominations; the nominated vertices form the output. The output always
//! dominates the graph, planar or not. On planar graphs it is a 4-uniform
//! 302-approximation.

use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::domination;
use crate::error::{Error, Result};
use crate::generic::UniformAlgorithm;
use crate::graph::{BallView, Graph, Vertex, VertexSet};
use crate::runtime::{self, LocalAlgorithm, RoundLedger};

/// Radius of the collected view.
pub const VIEW_RADIUS: usize = 4;
/// Vertices at most this far from the center must be dominated by `D_u`.
pub const TARGET_RADIUS: usize = 3;
/// View collection plus the nomination round.
pub const ROUNDS: usize = VIEW_RADIUS + 1;
pub const UNIFORMITY_RADIUS: usize = 4;
/// 2 + 12 + 288.
pub const RATIO: u64 = 302;

/// What a vertex computes from its view.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NominationDecision {
    /// `D_u`, in host labels.
    pub best_local_set: VertexSet,
    /// `v_u`, the smallest vertex of `D_u ∩ N[u]`.
    pub nominee: Vertex,
}

/// Selection order used for every "smallest" comparison. `Labels` is the
/// algorithm proper; `Ranked` compares `rank[label]` instead and exists to
/// check relabelling covariance.
#[derive(Clone, Debug, Default)]
pub enum Priority {
    #[default]
    Labels,
    Ranked(Arc<Vec<usize>>),
}

impl Priority {
    fn rank(&self, v: Vertex) -> usize {
        match self {
            Priority::Labels => v,
            Priority::Ranked(r) => r[v],
        }
    }
}

/// Computes `D_u` and `v_u` from a view of radius at least 4.
///
/// The best set is taken inside the view; the discard rule only compares
/// vertices at distance at most 3 from the center, whose neighbourhoods the
/// view shows completely.
pub fn nominate(view: &BallView, priority: &Priority) -> Result<NominationDecision> {
    if view.radius() < VIEW_RADIUS {
        return Err(Error::invalid(format!(
            "nomination needs a view of radius {VIEW_RADIUS}, got {}",
            view.radius()
        )));
    }
    let inner = view.within(TARGET_RADIUS);
    let local_best = domination::best_minimum_dominating_set_ranked(
        view.graph(),
        &inner,
        Some(&inner),
        |i| priority.rank(view.label(i)),
    )?;
    let best_local_set = view.to_labels(&local_best);
    let center = view.center_local();
    let nominee = view
        .graph()
        .closed_neighborhood(center)
        .into_iter()
        .filter(|&i| local_best.contains(i))
        .map(|i| view.label(i))
        .min_by_key(|&v| priority.rank(v))
        .ok_or_else(|| {
            Error::Internal(format!("best set of {} misses its closed neighbourhood", view.center()))
        })?;
    Ok(NominationDecision {
        best_local_set,
        nominee,
    })
}

/// The radius-4 nomination rule.
pub fn nomination_rule() -> LocalAlgorithm<NominationDecision> {
    nomination_rule_with(Priority::Labels)
}

pub fn nomination_rule_with(priority: Priority) -> LocalAlgorithm<NominationDecision> {
    LocalAlgorithm::new("planar-nomination", VIEW_RADIUS, move |view: &BallView| {
        nominate(view, &priority)
    })
}

/// The same algorithm seen as a single radius-5 rule: `u` is selected iff
/// some `w ∈ N[u]` nominates it. Each neighbour's radius-4 ball is read off
/// the radius-5 view.
pub fn membership_rule() -> LocalAlgorithm<bool> {
    LocalAlgorithm::new("planar-membership", ROUNDS, |view: &BallView| {
        let center = view.center_local();
        for w in view.graph().closed_neighborhood(center) {
            let sub = view.sub_ball(w, VIEW_RADIUS)?;
            if nominate(&sub, &Priority::Labels)?.nominee == view.center() {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Executor {
    #[default]
    Views,
    Messages,
}

/// Output of one run: the dominating set, every vertex's decision, and the
/// rounds spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarRun {
    pub output: VertexSet,
    pub decisions: Vec<NominationDecision>,
    pub ledger: RoundLedger,
}

/// Runs the algorithm and returns the dominating set `D`.
pub fn algorithm_a(g: &Graph) -> Result<VertexSet> {
    Ok(run_algorithm_a(g, Executor::Views)?.output)
}

pub fn run_algorithm_a(g: &Graph, executor: Executor) -> Result<PlanarRun> {
    run_algorithm_a_with(g, executor, &nomination_rule())
}

pub fn run_algorithm_a_with(
    g: &Graph,
    executor: Executor,
    rule: &LocalAlgorithm<NominationDecision>,
) -> Result<PlanarRun> {
    let (decisions, collection) = match executor {
        Executor::Views => (runtime::run_by_views(g, rule)?, rule.radius()),
        Executor::Messages => {
            let (d, ledger) = runtime::run_by_messages(g, rule)?;
            (d, ledger.view_collection())
        }
    };
    let output = deliver_nominations(g, &decisions)?;
    Ok(PlanarRun {
        output,
        decisions,
        ledger: RoundLedger::new(collection, 1, 0),
    })
}

/// The nomination round: `u` sends one message to `v_u`, which must be in
/// `N[u]`; every vertex that receives a message joins the output.
fn deliver_nominations(g: &Graph, decisions: &[NominationDecision]) -> Result<VertexSet> {
    let mut inbox = vec![false; g.n()];
    for (u, d) in decisions.iter().enumerate() {
        if d.nominee != u && !g.has_edge(u, d.nominee) {
            return Err(Error::Internal(format!(
                "vertex {u} nominated {} outside its closed neighbourhood",
                d.nominee
            )));
        }
        inbox[d.nominee] = true;
    }
    Ok((0..g.n()).filter(|&v| inbox[v]).collect())
}

/// The two sides of `|A(G) ∩ S| <= α · MDS(G, N^k[S])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityWitness {
    pub selected: usize,
    pub optimum: usize,
    pub alpha: Ratio<u64>,
    pub holds: bool,
}

/// Evaluates the `k`-uniform `alpha`-approximation inequality for `s`
/// against the algorithm output `output`, using the exact oracle.
pub fn check_uniformity(
    g: &Graph,
    output: &VertexSet,
    s: &VertexSet,
    k: usize,
    alpha: Ratio<u64>,
) -> Result<UniformityWitness> {
    g.check_set(s)?;
    let selected = output.intersection(s).len();
    let optimum = domination::mds_size(g, &g.neighborhood(s, k)?)?;
    let holds = Ratio::from_integer(selected as u64) <= alpha * Ratio::from_integer(optimum as u64);
    Ok(UniformityWitness {
        selected,
        optimum,
        alpha,
        holds,
    })
}

/// The planar algorithm as a sub-algorithm of the generic composition, with
/// its declared uniformity radius and ratio.
#[derive(Clone, Debug)]
pub struct PlanarNomination {
    uniformity_radius: usize,
    ratio: Ratio<u64>,
}

impl Default for PlanarNomination {
    fn default() -> Self {
        PlanarNomination {
            uniformity_radius: UNIFORMITY_RADIUS,
            ratio: Ratio::from_integer(RATIO),
        }
    }
}

impl PlanarNomination {
    /// Overrides the declared `k` and `α`; the algorithm itself is unchanged.
    pub fn declared(uniformity_radius: usize, ratio: Ratio<u64>) -> Self {
        PlanarNomination {
            uniformity_radius,
            ratio,
        }
    }
}

impl UniformAlgorithm for PlanarNomination {
    fn name(&self) -> &str {
        "A"
    }

    fn rounds(&self) -> usize {
        ROUNDS
    }

    fn uniformity_radius(&self) -> usize {
        self.uniformity_radius
    }

    fn ratio(&self) -> Ratio<u64> {
        self.ratio
    }

    fn select(&self, g: &Graph) -> Result<VertexSet> {
        algorithm_a(g)
    }
}
