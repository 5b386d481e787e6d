//! Brute-force planarity reference for small graphs: a graph is nonplanar
//! iff it contains a subdivision of K5 or K3,3. Branch vertices are chosen
//! exhaustively and the required internally disjoint paths are found by
//! backtracking, so this is only usable for roughly n <= 10.

use localdom::Graph;

/// Whether `g` contains a subdivision of K5 or K3,3.
pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 16, "reference oracle is meant for tiny graphs");
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let deg = |v: usize| adj[v].count_ones() as usize;

    for set in subsets(n, 5) {
        if set.iter().all(|&v| deg(v) >= 4) {
            let pairs: Vec<(usize, usize)> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .map(|(i, j)| (set[i], set[j]))
                .collect();
            if link_all(&adj, &pairs, mask(&set)) {
                return true;
            }
        }
    }
    for set in subsets(n, 6) {
        if !set.iter().all(|&v| deg(v) >= 3) {
            continue;
        }
        // one side always holds set[0], so each bipartition is tried once
        for rest in subsets(5, 2) {
            let left = [set[0], set[1 + rest[0]], set[1 + rest[1]]];
            let right: Vec<usize> = set.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                .collect();
            if link_all(&adj, &pairs, mask(&set)) {
                return true;
            }
        }
    }
    false
}

fn mask(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Connects every pair by a path whose internal vertices avoid `blocked`
/// (branch vertices plus internals of earlier paths).
fn link_all(adj: &[u32], pairs: &[(usize, usize)], blocked: u32) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    let mut found = false;
    paths(adj, a, b, blocked, 0, &mut |internals| {
        found = link_all(adj, rest, blocked | internals);
        found
    });
    found
}

/// Calls `visit` with the internal-vertex mask of each simple `x`-`b` path
/// through unblocked vertices; stops as soon as `visit` returns true.
fn paths(adj: &[u32], x: usize, b: usize, blocked: u32, internals: u32, visit: &mut dyn FnMut(u32) -> bool) -> bool {
    if adj[x] & (1 << b) != 0 && visit(internals) {
        return true;
    }
    let mut next = adj[x] & !blocked & !internals;
    while next != 0 {
        let y = next.trailing_zeros() as usize;
        next &= next - 1;
        if paths(adj, y, b, blocked, internals | (1 << y), visit) {
            return true;
        }
    }
    false
}
