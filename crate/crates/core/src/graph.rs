//! Immutable simple undirected graphs with integer labels `0..n`.
//!
//! Labels double as the total order used by every "smallest label" rule in
//! the algorithms. Ball views keep the original labels of the host graph and
//! store their local vertices in ascending label order, so comparing local
//! indices is the same as comparing labels.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Simple undirected graph on the vertices `0..n`.
///
/// Adjacency lists are sorted and free of loops and duplicates. The type has
/// no mutating methods: every transformation returns a new graph.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged; loops and
    /// endpoints outside `0..n` are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// `N[v]` in ascending order.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let pos = self.adj[v].partition_point(|&w| w < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(v) if !self.contains(v) => Err(Error::UnknownVertex(v)),
            _ => Ok(()),
        }
    }

    /// Breadth-first hop distances from `source`, exploring at most `limit`
    /// hops. Unreached vertices are `None`.
    pub fn bfs(&self, source: Vertex, limit: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            if limit.is_some_and(|l| du >= l) {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path distances from `source`; unreachable vertices are absent.
    pub fn distances(&self, source: Vertex) -> Result<BTreeMap<Vertex, usize>> {
        self.check_vertex(source)?;
        Ok(self
            .bfs(source, None)
            .into_iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (v, d)))
            .collect())
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u, None)[v])
    }

    /// `N^r[S]`: all vertices within distance `r` of some vertex of `s`.
    pub fn neighborhood(&self, s: &VertexSet, r: usize) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for v in s.iter() {
            dist[v] = Some(0usize);
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            if du >= r {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect())
    }

    /// The radius-`r` view around `center`: `G[N^r[center]]` with distances.
    pub fn ball(&self, center: Vertex, r: usize) -> Result<BallView> {
        self.check_vertex(center)?;
        let dist = self.bfs(center, Some(r));
        let members: VertexSet = dist
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        let (graph, labels) = self.induced_subgraph(&members)?;
        let local_dist = labels.iter().map(|&v| dist[v].unwrap_or_default()).collect();
        let center_local = labels.binary_search(&center).unwrap_or_default();
        Ok(BallView {
            center,
            center_local,
            radius: r,
            graph,
            labels,
            dist: local_dist,
        })
    }

    /// `G[S]` relabelled to `0..|S|` in ascending label order, together with
    /// the map from local index back to the label in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        self.check_set(s)?;
        let labels: Vec<Vertex> = s.iter().collect();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in labels.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = Vec::with_capacity(labels.len());
        let mut edge_count = 0;
        for &v in &labels {
            let list: Vec<Vertex> = self.adj[v]
                .iter()
                .filter(|&&w| local[w] != usize::MAX)
                .map(|&w| local[w])
                .collect();
            edge_count += list.len();
            adj.push(list);
        }
        Ok((
            Graph {
                adj,
                edge_count: edge_count / 2,
            },
            labels,
        ))
    }

    /// Partition of `s` into the vertex sets of the connected components of
    /// `G[S]`, ordered by smallest member.
    pub fn components(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(s)?;
        let mut inside = vec![false; self.n()];
        for v in s.iter() {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in s.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet(comp));
        }
        Ok(out)
    }

    /// Connected components of the whole graph.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let all: VertexSet = self.vertices().collect();
        self.components(&all).unwrap_or_default()
    }

    /// Largest distance in `self` between two members of `s` (0 when `s` is
    /// empty). Fails if two members are in different components.
    pub fn weak_diameter(&self, s: &VertexSet) -> Result<usize> {
        self.check_set(s)?;
        let mut best = 0;
        for u in s.iter() {
            let dist = self.bfs(u, None);
            for v in s.iter() {
                match dist[v] {
                    Some(d) => best = best.max(d),
                    None => return Err(Error::Disconnected(u, v)),
                }
            }
        }
        Ok(best)
    }

    /// Diameter of the graph, `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let all: VertexSet = self.vertices().collect();
        self.weak_diameter(&all).ok()
    }

    /// `G^r`: same vertices, `u ~ v` iff `1 <= dist(u, v) <= r`.
    pub fn power(&self, r: usize) -> Result<Graph> {
        if r < 1 {
            return Err(Error::invalid("graph power requires r >= 1"));
        }
        let mut edges = Vec::new();
        for u in self.vertices() {
            for (v, d) in self.bfs(u, Some(r)).into_iter().enumerate() {
                if u < v && d.is_some() {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n(), edges)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n()];
        for &p in perm {
            if p >= self.n() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("relabelling is not a permutation"));
            }
        }
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n() + other.n(), edges).expect("shifted edges are in range")
    }

    /// Same graph with extra edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Graph::from_edges(self.n(), self.edges().chain(extra))
    }

    /// Parses the edge-list text format: a header `n m`, then `m` lines
    /// `u v` with `u < v < n`. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then_some((i + 1, content))
        });
        let parse_pair = |line: usize, content: &str| -> Result<(usize, usize)> {
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two integers, found `{content}`"),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line,
                    message: format!("`{s}`: {e}"),
                })
            };
            Ok((parse(fields[0])?, parse(fields[1])?))
        };
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        let mut seen = BTreeSet::new();
        for (line, content) in lines {
            let (u, v) = parse_pair(line, content)?;
            let err = |message: String| Error::Parse { line, message };
            if u >= v {
                return Err(err(format!("edge `{u} {v}` must satisfy u < v")));
            }
            if v >= n {
                return Err(err(format!("vertex {v} out of range for n = {n}")));
            }
            if !seen.insert((u, v)) {
                return Err(err(format!("duplicate edge `{u} {v}`")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }

    /// Canonical edge-list text: header then edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A set of vertex labels, iterated in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> VertexSet {
        self.iter().map(f).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(items: [Vertex; N]) -> Self {
        items.into_iter().collect()
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// What a vertex knows after `radius` rounds: the induced ball around it.
///
/// The ball is stored as a local graph on `0..len()`; local index `i` is the
/// vertex `labels()[i]` of the host graph. Labels are ascending, so the local
/// order agrees with the label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallView {
    center: Vertex,
    center_local: usize,
    radius: usize,
    graph: Graph,
    labels: Vec<Vertex>,
    dist: Vec<usize>,
}

impl BallView {
    /// Assembles a view from an induced local graph. `labels` must be strictly
    /// ascending, and `dist` must hold the hop distance from `center`.
    pub fn from_parts(
        center: Vertex,
        radius: usize,
        graph: Graph,
        labels: Vec<Vertex>,
        dist: Vec<usize>,
    ) -> Result<BallView> {
        if labels.len() != graph.n() || dist.len() != graph.n() {
            return Err(Error::invalid("ball view parts have mismatched lengths"));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("ball view labels must be strictly ascending"));
        }
        let center_local = labels
            .binary_search(&center)
            .map_err(|_| Error::invalid("ball view does not contain its center"))?;
        if dist.iter().any(|&d| d > radius) {
            return Err(Error::invalid("ball view vertex beyond radius"));
        }
        Ok(BallView {
            center,
            center_local,
            radius,
            graph,
            labels,
            dist,
        })
    }

    pub fn center(&self) -> Vertex {
        self.center
    }

    /// Local index of the center.
    pub fn center_local(&self) -> usize {
        self.center_local
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Local graph on `0..len()`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn label(&self, local: usize) -> Vertex {
        self.labels[local]
    }

    pub fn local(&self, label: Vertex) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Distance from the center of local vertex `local`.
    pub fn dist(&self, local: usize) -> usize {
        self.dist[local]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertex_labels(&self) -> VertexSet {
        self.labels.iter().copied().collect()
    }

    /// Local indices of the vertices at distance at most `d` from the center.
    pub fn within(&self, d: usize) -> VertexSet {
        (0..self.len()).filter(|&i| self.dist[i] <= d).collect()
    }

    /// Converts a set of local indices into host labels.
    pub fn to_labels(&self, local: &VertexSet) -> VertexSet {
        local.map(|i| self.labels[i])
    }

    /// The radius-`r` view around a vertex of this view, as the host graph
    /// would show it. Requires `dist(local_center) + r <= radius` so that the
    /// sub-ball is not truncated.
    pub fn sub_ball(&self, local_center: usize, r: usize) -> Result<BallView> {
        if local_center >= self.len() {
            return Err(Error::UnknownVertex(local_center));
        }
        if self.dist[local_center] + r > self.radius {
            return Err(Error::invalid(format!(
                "sub-ball of radius {r} around {} exceeds the view of radius {}",
                self.labels[local_center], self.radius
            )));
        }
        let inner = self.graph.ball(local_center, r)?;
        let labels = inner.labels.iter().map(|&i| self.labels[i]).collect();
        Ok(BallView {
            center: self.labels[local_center],
            center_local: inner.center_local,
            radius: r,
            graph: inner.graph,
            labels,
            dist: inner.dist,
        })
    }

    /// Edges of the ball in host labels.
    pub fn labeled_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.graph
            .edges()
            .map(|(a, b)| (self.labels[a], self.labels[b]))
            .collect()
    }
}
