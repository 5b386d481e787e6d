//! Deterministic graph families with declared structural guarantees.

use std::fmt;

use localdom::planarity::is_planar;
use localdom::{Graph, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// A nonplanar piece hung off a planar host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Gadget {
    K5,
    Circulant { genus: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum GeneratorSpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Grid {
        width: usize,
        height: usize,
    },
    ToroidalGrid {
        width: usize,
        height: usize,
    },
    /// Stacked triangulation on `n` vertices, then each edge dropped with
    /// probability `delete_prob`. Labels are shuffled.
    RandomPlanarTriangulation {
        n: usize,
        seed: u64,
        #[serde(default)]
        delete_prob: f64,
    },
    /// Cycle on `2·genus + 6` vertices with every pair of opposite vertices
    /// joined.
    ProjectiveCirculant {
        genus: usize,
    },
    /// Root with `alpha + 1` children, each with `alpha² + 3` leaves.
    Depth2Tree {
        alpha: usize,
    },
    /// A path of `host_len` vertices; gadget `i` is joined by one edge to
    /// host vertex `spacing / 2 + i · spacing`.
    GadgetGraft {
        host_len: usize,
        gadgets: usize,
        spacing: usize,
        gadget: Gadget,
    },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Cycle { .. } => "cycle",
            GeneratorSpec::Grid { .. } => "grid",
            GeneratorSpec::ToroidalGrid { .. } => "toroidalGrid",
            GeneratorSpec::RandomPlanarTriangulation { .. } => "randomPlanarTriangulation",
            GeneratorSpec::ProjectiveCirculant { .. } => "projectiveCirculant",
            GeneratorSpec::Depth2Tree { .. } => "depth2Tree",
            GeneratorSpec::GadgetGraft { .. } => "gadgetGraft",
        }
    }

    /// Upper bound on the Euler genus of the generated graph.
    pub fn genus_upper_bound(&self) -> Option<usize> {
        match self {
            GeneratorSpec::Path { .. }
            | GeneratorSpec::Cycle { .. }
            | GeneratorSpec::Grid { .. }
            | GeneratorSpec::RandomPlanarTriangulation { .. }
            | GeneratorSpec::Depth2Tree { .. } => Some(0),
            // drawn on the torus, whose Euler genus is 2
            GeneratorSpec::ToroidalGrid { .. } => Some(2),
            // embeds in the projective plane
            GeneratorSpec::ProjectiveCirculant { .. } => Some(1),
            // each gadget is projective-planar and attached through one edge
            GeneratorSpec::GadgetGraft { gadgets, .. } => Some(*gadgets),
        }
    }

    pub fn is_planar_family(&self) -> bool {
        self.genus_upper_bound() == Some(0)
    }

    /// Number of vertices this generator produces.
    pub fn vertex_count(&self) -> usize {
        match *self {
            GeneratorSpec::Path { n }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::RandomPlanarTriangulation { n, .. } => n,
            GeneratorSpec::Grid { width, height } | GeneratorSpec::ToroidalGrid { width, height } => {
                width * height
            }
            GeneratorSpec::ProjectiveCirculant { genus } => 2 * genus + 6,
            GeneratorSpec::Depth2Tree { alpha } => 1 + (alpha + 1) * (alpha * alpha + 4),
            GeneratorSpec::GadgetGraft {
                host_len,
                gadgets,
                gadget,
                ..
            } => host_len + gadgets * gadget_size(gadget),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Path { n } => write!(f, "path({n})"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle({n})"),
            GeneratorSpec::Grid { width, height } => write!(f, "grid({width}x{height})"),
            GeneratorSpec::ToroidalGrid { width, height } => write!(f, "toroidalGrid({width}x{height})"),
            GeneratorSpec::RandomPlanarTriangulation { n, seed, delete_prob } => {
                write!(f, "randomPlanarTriangulation({n},seed={seed},drop={delete_prob})")
            }
            GeneratorSpec::ProjectiveCirculant { genus } => write!(f, "projectiveCirculant({genus})"),
            GeneratorSpec::Depth2Tree { alpha } => write!(f, "depth2Tree({alpha})"),
            GeneratorSpec::GadgetGraft {
                host_len,
                gadgets,
                spacing,
                gadget,
            } => {
                let kind = match gadget {
                    Gadget::K5 => "k5".to_string(),
                    Gadget::Circulant { genus } => format!("circulant{genus}"),
                };
                write!(f, "gadgetGraft({host_len},{gadgets}x{kind},spacing={spacing})")
            }
        }
    }
}

fn gadget_size(g: Gadget) -> usize {
    match g {
        Gadget::K5 => 5,
        Gadget::Circulant { genus } => 2 * genus + 6,
    }
}

/// Builds the graph. Planar families are run through the planarity test
/// before being returned.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    let g = match *spec {
        GeneratorSpec::Path { n } => {
            require(n >= 1, "path needs n >= 1")?;
            path(n)
        }
        GeneratorSpec::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            cycle(n)
        }
        GeneratorSpec::Grid { width, height } => {
            require(width >= 1 && height >= 1, "grid needs positive sides")?;
            grid(width, height, false)
        }
        GeneratorSpec::ToroidalGrid { width, height } => {
            require(width >= 3 && height >= 3, "toroidal grid needs sides >= 3")?;
            grid(width, height, true)
        }
        GeneratorSpec::RandomPlanarTriangulation { n, seed, delete_prob } => {
            require(n >= 3, "triangulation needs n >= 3")?;
            require(
                (0.0..=1.0).contains(&delete_prob),
                "delete probability must lie in [0, 1]",
            )?;
            stacked_triangulation(n, seed, delete_prob)
        }
        GeneratorSpec::ProjectiveCirculant { genus } => circulant(2 * genus + 6),
        GeneratorSpec::Depth2Tree { alpha } => {
            require(alpha >= 1, "depth-2 tree needs alpha >= 1")?;
            depth2_tree(alpha)
        }
        GeneratorSpec::GadgetGraft {
            host_len,
            gadgets,
            spacing,
            gadget,
        } => {
            require(spacing >= 1, "spacing must be positive")?;
            require(
                gadgets == 0 || spacing / 2 + (gadgets - 1) * spacing < host_len,
                "host path too short for the requested gadgets",
            )?;
            graft(host_len, gadgets, spacing, gadget)
        }
    };
    if spec.is_planar_family() && !is_planar(&g) {
        return Err(localdom::Error::Internal(format!("{spec} generated a nonplanar graph")).into());
    }
    Ok(g)
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(usage(msg))
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits valid edges")
}

fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

fn grid(width: usize, height: usize, wrap: bool) -> Graph {
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width || wrap {
                edges.push((id(x, y), id((x + 1) % width, y)));
            }
            if y + 1 < height || wrap {
                edges.push((id(x, y), id(x, (y + 1) % height)));
            }
        }
    }
    build(width * height, edges)
}

fn circulant(n: usize) -> Graph {
    cycle(n)
        .with_edges((0..n / 2).map(|i| (i, i + n / 2)))
        .expect("chords join distinct vertices")
}

fn stacked_triangulation(n: usize, seed: u64, delete_prob: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    // the outer face is listed too, so any face can receive a vertex
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let kept: Vec<_> = edges
        .into_iter()
        .filter(|_| delete_prob == 0.0 || !rng.gen_bool(delete_prob))
        .collect();
    build(n, kept).relabel(&perm).expect("shuffle is a permutation")
}

fn depth2_tree(alpha: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = alpha + 2;
    for child in 1..=alpha + 1 {
        edges.push((0, child));
        for _ in 0..alpha * alpha + 3 {
            edges.push((child, next));
            next += 1;
        }
    }
    build(next, edges)
}

fn graft(host_len: usize, gadgets: usize, spacing: usize, gadget: Gadget) -> Graph {
    let piece = match gadget {
        Gadget::K5 => build(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))),
        Gadget::Circulant { genus } => circulant(2 * genus + 6),
    };
    let mut g = path(host_len);
    for i in 0..gadgets {
        let base = g.n();
        g = g
            .disjoint_union(&piece)
            .with_edges([(spacing / 2 + i * spacing, base)])
            .expect("attachment vertex lies on the host");
    }
    g
}
