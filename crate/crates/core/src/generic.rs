//! Error-tolerant composition of a uniform sub-algorithm.
//!
//! Vertices whose radius-`T` ball falls outside the reference class form the
//! error set `X`. Sub-algorithm selections inside `X` are dropped, and
//! whatever is left undominated is repaired exactly, independently in each
//! connected component of `G[N²[X]]`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::domination;
use crate::error::{Error, Result};
use crate::graph::{BallView, Graph, Vertex, VertexSet};
use crate::planarity::ClassPredicate;
use crate::runtime::{self, LocalAlgorithm, RoundLedger};

/// A LOCAL algorithm for dominating set with a declared uniform guarantee:
/// `|A(G) ∩ S| <= ratio · MDS(G, N^k[S])` on the class it is designed for.
pub trait UniformAlgorithm: Send + Sync {
    fn name(&self) -> &str;
    /// Round complexity `r`.
    fn rounds(&self) -> usize;
    /// Uniformity radius `k`.
    fn uniformity_radius(&self) -> usize;
    fn ratio(&self) -> Ratio<u64>;
    fn select(&self, g: &Graph) -> Result<VertexSet>;
}

/// A sub-algorithm given as a per-vertex membership rule; its round
/// complexity is the rule's radius.
pub struct RuleAlgorithm {
    rule: LocalAlgorithm<bool>,
    uniformity_radius: usize,
    ratio: Ratio<u64>,
}

impl RuleAlgorithm {
    pub fn new(rule: LocalAlgorithm<bool>, uniformity_radius: usize, ratio: Ratio<u64>) -> Self {
        RuleAlgorithm {
            rule,
            uniformity_radius,
            ratio,
        }
    }
}

impl UniformAlgorithm for RuleAlgorithm {
    fn name(&self) -> &str {
        self.rule.name()
    }

    fn rounds(&self) -> usize {
        self.rule.radius()
    }

    fn uniformity_radius(&self) -> usize {
        self.uniformity_radius
    }

    fn ratio(&self) -> Ratio<u64> {
        self.ratio
    }

    fn select(&self, g: &Graph) -> Result<VertexSet> {
        let members = runtime::run_by_views(g, &self.rule)?;
        Ok(members
            .into_iter()
            .enumerate()
            .filter_map(|(v, keep)| keep.then_some(v))
            .collect())
    }
}

/// Control function `f(x) = slope · x + offset`. Serialized in its text
/// form, `linear:c` or `affine:c:b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ControlFunction {
    pub slope: usize,
    pub offset: usize,
}

impl ControlFunction {
    pub fn linear(slope: usize) -> Self {
        ControlFunction { slope, offset: 0 }
    }

    pub fn affine(slope: usize, offset: usize) -> Self {
        ControlFunction { slope, offset }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.slope * x + self.offset
    }
}

impl Default for ControlFunction {
    fn default() -> Self {
        ControlFunction::linear(1)
    }
}

impl fmt::Display for ControlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            write!(f, "linear:{}", self.slope)
        } else {
            write!(f, "affine:{}:{}", self.slope, self.offset)
        }
    }
}

impl FromStr for ControlFunction {
    type Err = Error;

    /// Accepts `linear:c` and `affine:c:b`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("control function `{s}`: expected linear:c or affine:c:b"));
        let mut parts = s.split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let nums: Vec<usize> = parts
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("linear", &[c]) => Ok(ControlFunction::linear(c)),
            ("affine", &[c, b]) => Ok(ControlFunction::affine(c, b)),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for ControlFunction {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ControlFunction> for String {
    fn from(f: ControlFunction) -> String {
        f.to_string()
    }
}

/// Configuration of the composition.
#[derive(Clone)]
pub struct BConfig {
    pub sub: Arc<dyn UniformAlgorithm>,
    pub predicate: ClassPredicate,
    pub control: ControlFunction,
    /// Asymptotic dimension `d`; only used to report the claimed ratio.
    pub dimension: usize,
}

impl fmt::Debug for BConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BConfig")
            .field("sub", &self.sub.name())
            .field("predicate", &self.predicate.name())
            .field("control", &self.control)
            .field("dimension", &self.dimension)
            .finish()
    }
}

impl BConfig {
    pub fn new(
        sub: Arc<dyn UniformAlgorithm>,
        predicate: ClassPredicate,
        control: ControlFunction,
        dimension: usize,
    ) -> Self {
        BConfig {
            sub,
            predicate,
            control,
            dimension,
        }
    }

    /// `T = f(2k+2) + max(k+1, r)`.
    pub fn error_radius(&self) -> usize {
        let k = self.sub.uniformity_radius();
        self.control.apply(2 * k + 2) + (k + 1).max(self.sub.rounds())
    }

    /// `α(d+1) + 1`.
    pub fn claimed_ratio(&self) -> Ratio<u64> {
        self.sub.ratio() * Ratio::from_integer(self.dimension as u64 + 1) + Ratio::from_integer(1)
    }

    /// `α(d+1)`, the guarantee when there are no errors.
    pub fn error_free_ratio(&self) -> Ratio<u64> {
        self.sub.ratio() * Ratio::from_integer(self.dimension as u64 + 1)
    }
}

/// A connected component of `G[N²[X]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaloComponent {
    /// Smallest vertex; the one that solves the component.
    pub leader: Vertex,
    pub vertices: VertexSet,
    /// Weak diameter in `G`.
    pub weak_diameter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorSetReport {
    /// The radius `T` used for detection.
    pub radius: usize,
    pub errors: VertexSet,
    /// Largest weak diameter of a component of `G[N²[X]]`, 0 if `X = ∅`.
    pub delta: usize,
    pub components: Vec<HaloComponent>,
}

/// The radius-`t` rule: `true` iff the vertex's ball is outside the class.
pub fn error_detection_rule(predicate: ClassPredicate, t: usize) -> LocalAlgorithm<bool> {
    let name = format!("error-detection[{}]", predicate.name());
    LocalAlgorithm::new(name, t, move |view: &BallView| Ok(!predicate.contains(view.graph())))
}

/// The `t`-error set of `g` with respect to `predicate`, with the halo
/// components and `δ`.
pub fn error_set_at_radius(g: &Graph, predicate: &ClassPredicate, t: usize) -> Result<ErrorSetReport> {
    let flags = runtime::run_by_views(g, &error_detection_rule(predicate.clone(), t))?;
    let errors: VertexSet = flags
        .into_iter()
        .enumerate()
        .filter_map(|(v, bad)| bad.then_some(v))
        .collect();
    let components = halo_components(g, &errors)?;
    let delta = components.iter().map(|c| c.weak_diameter).max().unwrap_or(0);
    Ok(ErrorSetReport {
        radius: t,
        errors,
        delta,
        components,
    })
}

pub fn error_set(g: &Graph, cfg: &BConfig) -> Result<ErrorSetReport> {
    error_set_at_radius(g, &cfg.predicate, cfg.error_radius())
}

fn halo_components(g: &Graph, x: &VertexSet) -> Result<Vec<HaloComponent>> {
    let halo = g.neighborhood(x, 2)?;
    g.components(&halo)?
        .into_iter()
        .map(|vertices| {
            Ok(HaloComponent {
                leader: vertices.first().unwrap_or_default(),
                weak_diameter: g.weak_diameter(&vertices)?,
                vertices,
            })
        })
        .collect()
}

/// Largest weak diameter in `g` of a connected component of `G[N²[X]]`.
pub fn measure_delta(g: &Graph, x: &VertexSet) -> Result<usize> {
    Ok(halo_components(g, x)?
        .iter()
        .map(|c| c.weak_diameter)
        .max()
        .unwrap_or(0))
}

/// How one halo component was repaired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairComponent {
    pub leader: Vertex,
    pub vertices: VertexSet,
    /// Undominated vertices inside the component.
    pub undominated: VertexSet,
    pub chosen: VertexSet,
}

/// Exact minimum `S' ⊆ N²[X]` dominating `V \ N[dominated_by]`, solved per
/// component of `G[N²[X]]`.
pub fn repair_step(g: &Graph, dominated_by: &VertexSet, x: &VertexSet) -> Result<VertexSet> {
    let mut out = VertexSet::new();
    for c in repair_components(g, dominated_by, x)? {
        out.extend(c.chosen);
    }
    Ok(out)
}

/// Per-component detail of [`repair_step`].
///
/// Requires `V \ N[dominated_by] ⊆ N[X]`; a violation is reported as an
/// internal error since the filtered sub-algorithm guarantees it.
pub fn repair_components(
    g: &Graph,
    dominated_by: &VertexSet,
    x: &VertexSet,
) -> Result<Vec<RepairComponent>> {
    g.check_set(dominated_by)?;
    g.check_set(x)?;
    let all: VertexSet = g.vertices().collect();
    let undominated = all.difference(&g.neighborhood(dominated_by, 1)?);
    let near_errors = g.neighborhood(x, 1)?;
    if let Some(v) = undominated.difference(&near_errors).first() {
        return Err(Error::Internal(format!(
            "vertex {v} is undominated but not adjacent to an error vertex"
        )));
    }
    let halo = g.neighborhood(x, 2)?;
    let mut out = Vec::new();
    for vertices in g.components(&halo)? {
        let target = undominated.intersection(&vertices);
        let chosen = if target.is_empty() {
            VertexSet::new()
        } else {
            for u in target.iter() {
                if let Some(&w) = g.neighbors(u).iter().find(|&&w| !vertices.contains(w)) {
                    return Err(Error::Internal(format!(
                        "neighbour {w} of undominated vertex {u} escapes its halo component"
                    )));
                }
            }
            let (sub, labels) = g.induced_subgraph(&vertices)?;
            let local_target = target.map(|v| labels.binary_search(&v).expect("target inside component"));
            domination::minimum_dominating_set(&sub, &local_target)?.map(|i| labels[i])
        };
        out.push(RepairComponent {
            leader: vertices.first().unwrap_or_default(),
            vertices,
            undominated: target,
            chosen,
        });
    }
    Ok(out)
}

/// Everything one run of the composition produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BRun {
    pub output: VertexSet,
    /// `A(G)` as computed by the sub-algorithm.
    pub sub_output: VertexSet,
    /// `A(G) \ X`.
    pub filtered: VertexSet,
    /// `S'`.
    pub repair: VertexSet,
    pub error_report: ErrorSetReport,
    pub repair_components: Vec<RepairComponent>,
    pub ledger: RoundLedger,
}

/// Runs the composition.
///
/// Rounds are accounted as `T + 1` for error detection, which also covers
/// the `r <= T + 1` rounds of the sub-algorithm run alongside it, then
/// `δ + 1` for the repair: `T + δ + 2` in total.
pub fn algorithm_b(g: &Graph, cfg: &BConfig) -> Result<BRun> {
    let t = cfg.error_radius();
    let error_report = error_set_at_radius(g, &cfg.predicate, t)?;
    let sub_output = cfg.sub.select(g)?;
    let filtered = sub_output.difference(&error_report.errors);
    let repair_components = repair_components(g, &filtered, &error_report.errors)?;
    let repair: VertexSet = repair_components
        .iter()
        .flat_map(|c| c.chosen.iter())
        .collect();
    let output = filtered.union(&repair);
    let ledger = RoundLedger::new(t + 1, 0, error_report.delta + 1);
    Ok(BRun {
        output,
        sub_output,
        filtered,
        repair,
        error_report,
        repair_components,
        ledger,
    })
}

/// A coloring of `colored` whose monochromatic components should have weak
/// diameter at most `bound` in `host`. Typically `colored` is a power of
/// `host`.
#[derive(Clone, Debug)]
pub struct BoundedColoring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
    pub host: Graph,
    pub colored: Graph,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonochromaticComponent {
    pub color: usize,
    pub vertices: VertexSet,
    /// `None` when the component spans several components of the host.
    pub weak_diameter: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCheck {
    pub bounded: bool,
    /// A component of largest weak diameter (unbounded counts as largest).
    pub worst: Option<MonochromaticComponent>,
}

pub fn check_bounded_coloring(c: &BoundedColoring) -> Result<ColoringCheck> {
    let n = c.host.n();
    if c.colored.n() != n || c.colors.len() != n {
        return Err(Error::invalid("coloring, host and colored graph differ in size"));
    }
    if let Some((v, &col)) = c.colors.iter().enumerate().find(|(_, &col)| col >= c.num_colors) {
        return Err(Error::invalid(format!(
            "vertex {v} has color {col}, outside 0..{}",
            c.num_colors
        )));
    }
    let mut worst: Option<MonochromaticComponent> = None;
    for color in 0..c.num_colors {
        let class: VertexSet = (0..n).filter(|&v| c.colors[v] == color).collect();
        for vertices in c.colored.components(&class)? {
            let weak_diameter = match c.host.weak_diameter(&vertices) {
                Ok(d) => Some(d),
                Err(Error::Disconnected(..)) => None,
                Err(e) => return Err(e),
            };
            let key = |d: Option<usize>| d.map_or(usize::MAX, |d| d);
            if worst.as_ref().is_none_or(|w| key(weak_diameter) > key(w.weak_diameter)) {
                worst = Some(MonochromaticComponent {
                    color,
                    vertices,
                    weak_diameter,
                });
            }
        }
    }
    let bounded = worst
        .as_ref()
        .is_none_or(|w| w.weak_diameter.is_some_and(|d| d <= c.bound));
    Ok(ColoringCheck { bounded, worst })
}
