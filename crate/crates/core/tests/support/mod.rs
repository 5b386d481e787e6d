#![allow(dead_code)]

pub mod kuratowski;

use localdom::{Graph, Vertex, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

pub fn grid(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::from_edges(w * h, edges).unwrap()
}

pub fn toroidal_grid(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let edges = (0..h).flat_map(|y| {
        (0..w).flat_map(move |x| [(id(x, y), id((x + 1) % w, y)), (id(x, y), id(x, (y + 1) % h))])
    });
    Graph::from_edges(w * h, edges).unwrap()
}

/// Cycle on `n` (even) vertices with all opposite chords.
pub fn mobius_ladder(n: usize) -> Graph {
    cycle(n).with_edges((0..n / 2).map(|i| (i, i + n / 2))).unwrap()
}

pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Stacked triangulation (each new vertex goes into a random face) with
/// every edge then kept with probability `1 - drop`. Labels are shuffled.
pub fn random_planar(seed: u64, n: usize, drop: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 3 {
        return path(n);
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let kept: Vec<_> = edges.into_iter().filter(|_| !rng.gen_bool(drop)).collect();
    Graph::from_edges(n, kept).unwrap().relabel(&perm).unwrap()
}

pub fn random_subset(seed: u64, n: usize, p: f64) -> VertexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

pub fn all_vertices(g: &Graph) -> VertexSet {
    g.vertices().collect()
}

/// Smallest dominating set of `target` by exhausting all subsets of V.
pub fn power_set_mds(g: &Graph, target: &VertexSet) -> usize {
    let n = g.n();
    assert!(n <= 16);
    let need: Vec<u32> = target
        .iter()
        .map(|t| g.closed_neighborhood(t).iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    (0u32..1 << n)
        .filter(|&s| need.iter().all(|&nb| nb & s != 0))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.1f64..0.7).prop_map(|(n, seed, p)| random_graph(seed, n, p))
}

pub fn arb_planar(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.0f64..0.5).prop_map(|(n, seed, drop)| random_planar(seed, n, drop))
}

/// A graph together with a vertex subset.
pub fn with_subset(g: impl Strategy<Value = Graph>) -> impl Strategy<Value = (Graph, VertexSet)> {
    (g, any::<u64>(), 0.05f64..0.6).prop_map(|(g, seed, p)| {
        let s = random_subset(seed, g.n(), p);
        (g, s)
    })
}

pub fn permutation(seed: u64, n: usize) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}
