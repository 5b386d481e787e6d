//! Exact domination oracles.
//!
//! All searches branch on an uncovered target vertex and try each of its
//! closed neighbours, so only vertices of `N[target]` are ever chosen. A
//! candidate that has been tried at a node is forbidden in the later
//! branches of that node, which makes the enumeration produce every optimal
//! set exactly once.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default cap on the number of optimal sets an enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 1_000_000;

/// A set of vertices together with the set it claims to dominate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCertificate {
    pub chosen: VertexSet,
    pub target: VertexSet,
}

impl DominationCertificate {
    pub fn verify(&self, g: &Graph) -> bool {
        verify_domination(g, &self.chosen, &self.target)
    }
}

/// `true` iff `target ⊆ N[chosen]`. Labels outside the graph never count as
/// dominated or dominating.
pub fn verify_domination(g: &Graph, chosen: &VertexSet, target: &VertexSet) -> bool {
    let mut covered = vec![false; g.n()];
    for v in chosen.iter().filter(|&v| g.contains(v)) {
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    target.iter().all(|t| g.contains(t) && covered[t])
}

/// `true` iff `chosen` dominates every vertex of `g`.
pub fn is_dominating_set(g: &Graph, chosen: &VertexSet) -> bool {
    let all: VertexSet = g.vertices().collect();
    verify_domination(g, chosen, &all)
}

/// `N[v] ⊊ N[w]` in `g`.
pub fn strictly_dominated(g: &Graph, v: Vertex, w: Vertex) -> bool {
    v != w
        && g.has_edge(v, w)
        && g.degree(w) > g.degree(v)
        && g.neighbors(v).iter().all(|&x| x == w || g.has_edge(w, x))
}

/// Whether some `w` (inside `scope`, when given) strictly dominates `v`.
/// With a scope, `v` itself must also lie in it.
pub fn has_strict_dominator(g: &Graph, v: Vertex, scope: Option<&VertexSet>) -> bool {
    if scope.is_some_and(|s| !s.contains(v)) {
        return false;
    }
    g.neighbors(v)
        .iter()
        .filter(|&&w| scope.is_none_or(|s| s.contains(w)))
        .any(|&w| strictly_dominated(g, v, w))
}

/// `MDS(G, target)`: the least number of vertices dominating `target`.
pub fn mds_size(g: &Graph, target: &VertexSet) -> Result<usize> {
    Ok(minimum_dominating_set(g, target)?.len())
}

/// One minimum set dominating `target`. Deterministic.
pub fn minimum_dominating_set(g: &Graph, target: &VertexSet) -> Result<VertexSet> {
    g.check_set(target)?;
    let inst = Instance::new(g, target);
    let mut search = Search::new(&inst);
    let greedy = inst.greedy();
    let best = search
        .solve(&inst.all_targets(), greedy.len(), false)
        .unwrap_or(greedy);
    Ok(inst.labels(&best))
}

/// Every minimum set dominating `target`, in ascending lexicographic order.
pub fn all_minimum_dominating_sets(g: &Graph, target: &VertexSet) -> Result<Vec<VertexSet>> {
    all_minimum_dominating_sets_with_budget(g, target, DEFAULT_ENUMERATION_BUDGET)
}

pub fn all_minimum_dominating_sets_with_budget(
    g: &Graph,
    target: &VertexSet,
    budget: usize,
) -> Result<Vec<VertexSet>> {
    let k = mds_size(g, target)?;
    let inst = Instance::new(g, target);
    let mut search = Search::new(&inst);
    let mut found = Vec::new();
    search.enumerate(&inst.all_targets(), k, budget, &mut found)?;
    let mut sets: Vec<VertexSet> = found.iter().map(|s| inst.labels(s)).collect();
    sets.sort();
    Ok(sets)
}

/// The "best" minimum dominating set of `target`: optimal sets containing a
/// vertex with a strictly larger closed neighbourhood are discarded, and the
/// lexicographically smallest survivor is returned.
pub fn best_minimum_dominating_set(g: &Graph, target: &VertexSet) -> Result<VertexSet> {
    best_minimum_dominating_set_with(g, target, None)
}

/// As [`best_minimum_dominating_set`], but the discard rule only compares
/// pairs of vertices that both lie in `scope` (when given).
pub fn best_minimum_dominating_set_with(
    g: &Graph,
    target: &VertexSet,
    scope: Option<&VertexSet>,
) -> Result<VertexSet> {
    best_minimum_dominating_set_ranked(g, target, scope, |v| v)
}

/// As [`best_minimum_dominating_set_with`], with the lexicographic
/// comparison made on `rank(v)` instead of the labels. `rank` must be
/// injective on the candidates.
///
/// Optimal sets can number in the millions, so instead of enumerating them
/// the smallest one is built element by element: each candidate, in rank
/// order, is kept iff the rest of the target can still be covered by the
/// remaining budget using only higher-ranked candidates.
pub fn best_minimum_dominating_set_ranked<F>(
    g: &Graph,
    target: &VertexSet,
    scope: Option<&VertexSet>,
    rank: F,
) -> Result<VertexSet>
where
    F: Fn(Vertex) -> usize,
{
    let k = mds_size(g, target)?;
    let inst = Instance::new(g, target);
    let mut search = Search::new(&inst);
    for (i, &c) in inst.candidates.iter().enumerate() {
        search.forbidden[i] = has_strict_dominator(g, c, scope);
    }
    let mut order: Vec<usize> = (0..inst.candidates.len())
        .filter(|&c| !search.forbidden[c])
        .collect();
    order.sort_by_key(|&c| (rank(inst.candidates[c]), c));

    let mut uncovered = inst.all_targets();
    let mut chosen = Vec::with_capacity(k);
    let mut pending = order.iter();
    while chosen.len() < k {
        let remaining = k - chosen.len() - 1;
        let picked = pending.by_ref().find(|&&c| {
            let mut next = uncovered.clone();
            next.difference_with(&inst.cover[c]);
            // later slots only draw from higher-ranked candidates
            search.forbidden[c] = true;
            search.can_cover(&next, remaining)
        });
        let &c = picked.ok_or_else(|| {
            Error::Internal(format!(
                "every minimum dominating set of {target} contains a strictly dominated vertex"
            ))
        })?;
        uncovered.difference_with(&inst.cover[c]);
        chosen.push(c);
    }
    Ok(inst.labels(&chosen))
}

/// A domination instance in compact form. Candidates are `N[target]` in
/// ascending label order; bits index into `targets`.
struct Instance {
    targets: Vec<Vertex>,
    candidates: Vec<Vertex>,
    cover: Vec<FixedBitSet>,
    options: Vec<Vec<usize>>,
}

impl Instance {
    fn new(g: &Graph, target: &VertexSet) -> Instance {
        let targets: Vec<Vertex> = target.iter().collect();
        let mut target_index = vec![usize::MAX; g.n()];
        for (i, &t) in targets.iter().enumerate() {
            target_index[t] = i;
        }
        let candidates: Vec<Vertex> = g
            .neighborhood(target, 1)
            .expect("target was validated")
            .to_vec();
        let mut cover = Vec::with_capacity(candidates.len());
        let mut options = vec![Vec::new(); targets.len()];
        for (ci, &c) in candidates.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(targets.len());
            for x in g.closed_neighborhood(c) {
                let ti = target_index[x];
                if ti != usize::MAX {
                    bits.insert(ti);
                    options[ti].push(ci);
                }
            }
            cover.push(bits);
        }
        Instance {
            targets,
            candidates,
            cover,
            options,
        }
    }

    fn all_targets(&self) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.targets.len());
        bits.insert_range(..);
        bits
    }

    fn labels(&self, chosen: &[usize]) -> VertexSet {
        chosen.iter().map(|&c| self.candidates[c]).collect()
    }

    /// Largest-gain greedy cover; ties go to the smaller label.
    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = self.all_targets();
        let mut chosen = Vec::new();
        while !uncovered.is_clear() {
            let (best, _) = self
                .cover
                .iter()
                .enumerate()
                .map(|(c, bits)| (c, bits.intersection_count(&uncovered)))
                .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            chosen.push(best);
            uncovered.difference_with(&self.cover[best]);
        }
        chosen
    }
}

struct Search<'a> {
    inst: &'a Instance,
    forbidden: Vec<bool>,
    chosen: Vec<usize>,
}

/// Branching decision at a search node.
enum Step {
    Done,
    Infeasible,
    Branch { bound: usize, options: Vec<usize> },
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance) -> Self {
        Search {
            inst,
            forbidden: vec![false; inst.candidates.len()],
            chosen: Vec::new(),
        }
    }

    /// Lower bound on the vertices still needed, plus the options of the
    /// uncovered target with the fewest allowed dominators.
    ///
    /// The bound is the value of a feasible solution of the dual of the
    /// covering LP (weights `y_t` on uncovered targets such that every
    /// allowed candidate sees total weight at most 1). It starts from
    /// `y_t = 1 / g(t)`, where `g(t)` is the largest number of uncovered
    /// targets an allowed dominator of `t` covers, and is then raised
    /// greedily, scarcest targets first.
    fn step(&self, uncovered: &FixedBitSet) -> Step {
        if uncovered.is_clear() {
            return Step::Done;
        }
        let gain: Vec<usize> = self
            .inst
            .cover
            .iter()
            .enumerate()
            .map(|(c, bits)| {
                if self.forbidden[c] {
                    0
                } else {
                    bits.intersection_count(uncovered)
                }
            })
            .collect();
        let mut slack = vec![1.0f64; gain.len()];
        let mut dual = 0.0f64;
        let mut scarce: Vec<(usize, usize)> = Vec::new();
        for t in uncovered.ones() {
            let allowed = self.inst.options[t].iter().filter(|&&c| !self.forbidden[c]);
            let (count, best_gain) = allowed.clone().fold((0, 0), |(n, g), &c| (n + 1, g.max(gain[c])));
            if count == 0 {
                return Step::Infeasible;
            }
            let y = 1.0 / best_gain as f64;
            for &c in allowed {
                slack[c] -= y;
            }
            dual += y;
            scarce.push((count, t));
        }
        scarce.sort_unstable();
        for &(_, t) in &scarce {
            let allowed = self.inst.options[t].iter().filter(|&&c| !self.forbidden[c]);
            let raise = allowed.clone().map(|&c| slack[c]).fold(f64::INFINITY, f64::min);
            if raise > 1e-12 {
                for &c in allowed {
                    slack[c] -= raise;
                }
                dual += raise;
            }
        }
        let t = scarce[0].1;
        let mut options: Vec<usize> = self.inst.options[t]
            .iter()
            .copied()
            .filter(|&c| !self.forbidden[c])
            .collect();
        options.sort_by_key(|&c| (std::cmp::Reverse(gain[c]), c));
        Step::Branch {
            bound: (dual - 1e-9).ceil() as usize,
            options,
        }
    }

    /// Splits the uncovered targets into groups that share no allowed
    /// candidate; such groups can be solved independently.
    fn split(&self, uncovered: &FixedBitSet) -> Vec<FixedBitSet> {
        let n = self.inst.targets.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, bits) in self.inst.cover.iter().enumerate() {
            if self.forbidden[c] {
                continue;
            }
            let mut members = bits.intersection(uncovered);
            if let Some(first) = members.next() {
                let root = find(&mut parent, first);
                for t in members {
                    let r = find(&mut parent, t);
                    parent[r] = root;
                }
            }
        }
        let mut groups: Vec<(usize, FixedBitSet)> = Vec::new();
        for t in uncovered.ones() {
            let r = find(&mut parent, t);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, bits)) => bits.insert(t),
                None => {
                    let mut bits = FixedBitSet::with_capacity(n);
                    bits.insert(t);
                    groups.push((r, bits));
                }
            }
        }
        groups.into_iter().map(|(_, bits)| bits).collect()
    }

    /// A minimum set of allowed candidates covering `uncovered`, provided
    /// one of size at most `limit` exists. With `first_fit` any cover within
    /// the limit is accepted.
    fn solve(&mut self, uncovered: &FixedBitSet, limit: usize, first_fit: bool) -> Option<Vec<usize>> {
        let (bound, options) = match self.step(uncovered) {
            Step::Done => return Some(Vec::new()),
            Step::Infeasible => return None,
            Step::Branch { bound, options } => (bound, options),
        };
        if bound > limit {
            return None;
        }
        let parts = self.split(uncovered);
        if parts.len() > 1 {
            let mut total = Vec::new();
            for part in &parts {
                let part_cover = self.solve(part, limit - total.len(), false)?;
                total.extend(part_cover);
            }
            return Some(total);
        }
        let options = self.undominated_options(uncovered, options);
        let mut best: Option<Vec<usize>> = None;
        let mut cap = limit;
        let mut tried = Vec::with_capacity(options.len());
        for c in options {
            if cap == 0 || best.is_some() && cap < bound {
                break;
            }
            let mut next = uncovered.clone();
            next.difference_with(&self.inst.cover[c]);
            if let Some(mut found) = self.solve(&next, cap - 1, first_fit) {
                found.push(c);
                cap = found.len() - 1;
                best = Some(found);
                if first_fit {
                    break;
                }
            }
            self.forbidden[c] = true;
            tried.push(c);
        }
        for c in tried {
            self.forbidden[c] = false;
        }
        best
    }

    /// Drops options whose remaining coverage is contained in another
    /// option's; swapping one for the other never makes a cover worse.
    /// Among options with equal coverage the first one is kept.
    fn undominated_options(&self, uncovered: &FixedBitSet, options: Vec<usize>) -> Vec<usize> {
        let covers: Vec<FixedBitSet> = options
            .iter()
            .map(|&c| {
                let mut bits = self.inst.cover[c].clone();
                bits.intersect_with(uncovered);
                bits
            })
            .collect();
        (0..options.len())
            .filter(|&i| {
                !(0..options.len()).any(|j| {
                    j != i && covers[i].is_subset(&covers[j]) && (j < i || covers[i] != covers[j])
                })
            })
            .map(|i| options[i])
            .collect()
    }

    /// Whether the uncovered targets can be dominated by at most `limit`
    /// more allowed candidates.
    fn can_cover(&mut self, uncovered: &FixedBitSet, limit: usize) -> bool {
        self.solve(uncovered, limit, true).is_some()
    }

    /// Runs `visit` on each branch of a node, forbidding every option once
    /// its branch has been explored.
    fn branch<F>(&mut self, uncovered: &FixedBitSet, options: &[usize], mut visit: F) -> Result<()>
    where
        F: FnMut(&mut Self, &FixedBitSet) -> Result<()>,
    {
        let mut tried = Vec::with_capacity(options.len());
        let mut outcome = Ok(());
        for &c in options {
            let mut next = uncovered.clone();
            next.difference_with(&self.inst.cover[c]);
            self.chosen.push(c);
            outcome = visit(self, &next);
            self.chosen.pop();
            if outcome.is_err() {
                break;
            }
            self.forbidden[c] = true;
            tried.push(c);
        }
        for c in tried {
            self.forbidden[c] = false;
        }
        outcome
    }

    fn enumerate(
        &mut self,
        uncovered: &FixedBitSet,
        k: usize,
        budget: usize,
        found: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        match self.step(uncovered) {
            Step::Done => {
                if found.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                let mut set = self.chosen.clone();
                set.sort_unstable();
                found.push(set);
                Ok(())
            }
            Step::Infeasible => Ok(()),
            Step::Branch { bound, options } => {
                if self.chosen.len() + bound > k {
                    return Ok(());
                }
                self.branch(uncovered, &options, |s, next| s.enumerate(next, k, budget, found))
            }
        }
    }
}
