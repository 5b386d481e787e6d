//! Planarity testing with the left-right criterion, and the class predicates
//! used for error detection.
//!
//! The test follows the DFS-orientation formulation: a first DFS orients the
//! graph and computes lowpoints and nesting depths, a second DFS over the
//! adjacency lists sorted by nesting depth maintains a stack of conflict
//! pairs of return-edge intervals. Only the verdict is computed, no
//! embedding.

use std::fmt;
use std::sync::Arc;

use crate::graph::{Graph, Vertex};

/// Membership test for a graph class.
#[derive(Clone)]
pub struct ClassPredicate {
    name: String,
    test: Arc<dyn Fn(&Graph) -> bool + Send + Sync>,
    hereditary: bool,
}

impl fmt::Debug for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassPredicate")
            .field("name", &self.name)
            .field("hereditary", &self.hereditary)
            .finish_non_exhaustive()
    }
}

impl ClassPredicate {
    /// Wraps a deterministic membership test. `hereditary` documents that
    /// the class is closed under vertex deletion; it is not checked.
    pub fn new<F>(name: impl Into<String>, hereditary: bool, test: F) -> Self
    where
        F: Fn(&Graph) -> bool + Send + Sync + 'static,
    {
        ClassPredicate {
            name: name.into(),
            test: Arc::new(test),
            hereditary,
        }
    }

    pub fn planar() -> Self {
        ClassPredicate::new("planar", true, is_planar)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn contains(&self, g: &Graph) -> bool {
        (self.test)(g)
    }
}

/// Whether `g` has a crossing-free drawing in the plane.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n > 2 && g.m() > 3 * n - 6 {
        return false;
    }
    LrState::new(g).run()
}

const UNSEEN: usize = usize::MAX;

type EdgeId = usize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn single(e: EdgeId) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'g> {
    g: &'g Graph,
    ends: Vec<(Vertex, Vertex)>,
    incident: Vec<Vec<EdgeId>>,
    oriented: Vec<bool>,
    // orientation of edge e: source -> target
    source: Vec<Vertex>,
    target: Vec<Vertex>,
    height: Vec<usize>,
    parent_edge: Vec<Option<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    out_edges: Vec<Vec<EdgeId>>,
    // testing phase
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<EdgeId>,
    reference: Vec<Option<EdgeId>>,
}

impl<'g> LrState<'g> {
    fn new(g: &'g Graph) -> Self {
        let ends: Vec<(Vertex, Vertex)> = g.edges().collect();
        let mut incident = vec![Vec::new(); g.n()];
        for (e, &(u, v)) in ends.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        let m = ends.len();
        LrState {
            g,
            ends,
            incident,
            oriented: vec![false; m],
            source: vec![0; m],
            target: vec![0; m],
            height: vec![UNSEEN; g.n()],
            parent_edge: vec![None; g.n()],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out_edges: vec![Vec::new(); g.n()],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![0; m],
            reference: vec![None; m],
        }
    }

    fn run(mut self) -> bool {
        let mut roots = Vec::new();
        for v in self.g.vertices() {
            if self.height[v] == UNSEEN {
                self.height[v] = 0;
                roots.push(v);
                self.orient(v);
            }
        }
        for v in self.g.vertices() {
            let depth = &self.nesting_depth;
            self.out_edges[v].sort_by_key(|&e| depth[e]);
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// First DFS: orientation, lowpoints and nesting depths.
    fn orient(&mut self, v: Vertex) {
        let parent = self.parent_edge[v];
        for i in 0..self.incident[v].len() {
            let e = self.incident[v][i];
            if self.oriented[e] {
                continue;
            }
            self.oriented[e] = true;
            let w = self.other(e, v);
            self.source[e] = v;
            self.target[e] = w;
            self.out_edges[v].push(e);
            self.lowpt[e] = self.height[v];
            self.lowpt2[e] = self.height[v];
            if self.height[w] == UNSEEN {
                self.parent_edge[w] = Some(e);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[e] = self.height[w];
            }

            self.nesting_depth[e] = 2 * self.lowpt[e];
            if self.lowpt2[e] < self.height[v] {
                // chordal
                self.nesting_depth[e] += 1;
            }

            if let Some(pe) = parent {
                if self.lowpt[e] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                    self.lowpt[pe] = self.lowpt[e];
                } else if self.lowpt[e] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
                }
            }
        }
    }

    /// Second DFS: returns `false` as soon as the constraints conflict.
    fn test(&mut self, v: Vertex) -> bool {
        let parent = self.parent_edge[v];
        for i in 0..self.out_edges[v].len() {
            let ei = self.out_edges[v][i];
            let w = self.target[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval::single(ei),
                });
            }

            if self.lowpt[ei] < self.height[v] {
                let Some(e) = parent else {
                    // the root has no return edges
                    continue;
                };
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_edges(e);
        }
        true
    }

    fn conflicting(&self, interval: &Interval, b: EdgeId) -> bool {
        interval
            .high
            .is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => usize::MAX,
        }
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        // merge the return edges of ei into p.right
        loop {
            let Some(mut q) = self.stack.pop() else {
                break;
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let Some(q_low) = q.right.low else {
                return false;
            };
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of the earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("stack is nonempty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.source[e];
        // drop pairs whose return edges all end at u
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.target[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low.take() {
                    self.reference[low] = p.right.low;
                }
            }
            while let Some(h) = p.right.high {
                if self.target[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low.take() {
                    self.reference[low] = p.left.low;
                }
            }
            self.stack.push(p);
        }
        // the side of e is the side of a highest return edge
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] = match (hl, hr) {
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    (Some(l), None) => Some(l),
                    _ => hr,
                };
            }
        }
    }
}
