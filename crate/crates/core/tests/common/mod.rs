//! Slow reference implementations shared by the integration tests.
#![allow(dead_code)]

use densematch::generators::c5_blowup_complement;
use densematch::{Graph, SeededRng, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Ordered bad quadruples by direct O(n^4) enumeration.
pub fn bad_quadruples_brute(g: &Graph) -> u64 {
    let n = g.n();
    let mut count = 0;
    for u in 0..n {
        for v in 0..n {
            if !g.has_edge(u, v) {
                continue;
            }
            for w in 0..n {
                for z in 0..n {
                    if g.has_edge(w, z)
                        && !g.has_edge(u, w)
                        && !g.has_edge(u, z)
                        && !g.has_edge(v, w)
                        && !g.has_edge(v, z)
                        && u != w
                        && u != z
                        && v != w
                        && v != z
                    {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Unordered pairs of vertex-disjoint edges with no edge between them, O(m^2).
pub fn nonadjacent_edge_pairs(g: &Graph) -> u64 {
    let edges = g.edges();
    let mut count = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if [c, d].contains(&a) || [c, d].contains(&b) {
                continue;
            }
            if !(g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d)) {
                count += 1;
            }
        }
    }
    count
}

/// True iff no three vertices are pairwise non-adjacent.
pub fn alpha_at_most_2_brute(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !g.has_edge(a, c) && !g.has_edge(b, c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of pairs of edges in `edges` with no edge of `g` between them.
pub fn nonadjacent_in(g: &Graph, edges: &[(VertexId, VertexId)]) -> usize {
    let mut count = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if !(g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d)) {
                count += 1;
            }
        }
    }
    count
}

/// Every matching of size `t`, each listed once.
pub fn all_matchings(g: &Graph, t: usize) -> Vec<Vec<(VertexId, VertexId)>> {
    fn go(
        edges: &[(VertexId, VertexId)],
        from: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(VertexId, VertexId)>,
        t: usize,
        out: &mut Vec<Vec<(VertexId, VertexId)>>,
    ) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in from..edges.len() {
            let (a, b) = edges[i];
            if used[a] || used[b] {
                continue;
            }
            used[a] = true;
            used[b] = true;
            cur.push((a, b));
            go(edges, i + 1, used, cur, t, out);
            cur.pop();
            used[a] = false;
            used[b] = false;
        }
    }
    let edges = g.edges();
    let mut out = Vec::new();
    go(
        &edges,
        0,
        &mut vec![false; g.n()],
        &mut Vec::new(),
        t,
        &mut out,
    );
    out
}

/// Complement of a random triangle-free graph on `n` vertices. Each pair is
/// offered in random order and kept with probability `keep` when it closes
/// no triangle, so `keep = 1` gives a maximal triangle-free graph.
pub fn random_alpha2(n: usize, keep: f64, rng: &mut SeededRng) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    for (a, b) in pairs {
        if rng.gen::<f64>() >= keep {
            continue;
        }
        if (0..n).any(|x| adj[a][x] && adj[b][x]) {
            continue;
        }
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !adj[a][b])
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

/// A random graph with independence number at most 2 on `n >= 5` vertices,
/// drawn from a mix of triangle-free complements and blown-up 5-cycles.
pub fn random_instance(n: usize, rng: &mut SeededRng) -> Graph {
    if n >= 5 && rng.gen_bool(0.25) {
        let mut parts = [1usize; 5];
        for _ in 5..n {
            parts[rng.gen_range(0..5)] += 1;
        }
        c5_blowup_complement(parts).unwrap()
    } else {
        let keep = [1.0, 0.7, 0.4, 0.15][rng.gen_range(0..4)];
        random_alpha2(n, keep, rng)
    }
}
