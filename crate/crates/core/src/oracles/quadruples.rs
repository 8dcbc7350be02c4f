use serde::Serialize;

use crate::bits;
use crate::graph::Graph;

/// Ordered bad quadruples `(u, v, w, z)`: `uv, wz` are edges and
/// `uw, uz, vw, vz` are all non-edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BadQuadrupleCount {
    pub count: u64,
    /// Non-edges of the graph.
    pub b: u64,
    pub k: usize,
    /// `2b(k-1)^2`, present only when `δ(G) >= n - k` and `k >= 1`.
    pub bound: Option<u64>,
}

/// Counts bad quadruples with `k = n - δ(G)`.
pub fn count_bad_quadruples(g: &Graph) -> BadQuadrupleCount {
    count_bad_quadruples_with_k(g, g.n() - g.min_degree())
}

/// Enumerates ordered non-edges `(u, w)`, then `v` among the non-neighbours
/// of `w` adjacent to `u`, then counts `z` among the non-neighbours of `u`
/// adjacent to `w` and not adjacent to `v`.
pub fn count_bad_quadruples_with_k(g: &Graph, k: usize) -> BadQuadrupleCount {
    let n = g.n();
    let comp = g.complement();
    let mut count = 0u64;
    let mut vs = vec![0u64; g.words()];
    let mut zs = vec![0u64; g.words()];
    for u in 0..n {
        for w in comp.neighbors(u) {
            for ((x, a), b) in vs.iter_mut().zip(g.row(u)).zip(comp.row(w)) {
                *x = a & b;
            }
            for ((x, a), b) in zs.iter_mut().zip(g.row(w)).zip(comp.row(u)) {
                *x = a & b;
            }
            for v in bits::ones(&vs) {
                count += zs
                    .iter()
                    .zip(comp.row(v))
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum::<u64>();
            }
        }
    }
    let b = comp.m() as u64;
    let bound = (k >= 1 && n > 0 && g.min_degree() + k >= n).then(|| {
        let km1 = (k - 1) as u64;
        2 * b * km1 * km1
    });
    BadQuadrupleCount { count, b, k, bound }
}
