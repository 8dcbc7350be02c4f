//! Instance families with independence number at most 2.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

/// Disjoint union of two `s`-cliques on vertices `0..s` and `s..2s`.
pub fn two_cliques(s: usize) -> Graph {
    Graph::from_fn(2 * s, |u, v| (u < s) == (v < s))
}

/// Complement of a maximal triangle-free graph produced by the random
/// greedy process: every pair is visited once in a seeded random order and
/// kept unless it closes a triangle.
pub fn complement_of_random_triangle_free(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(&mut rng);

    let words = bits::words_for(n);
    let mut rows = vec![0u64; n * words];
    for (u, v) in pairs {
        let (u, v) = (u as usize, v as usize);
        let ru = &rows[u * words..(u + 1) * words];
        let rv = &rows[v * words..(v + 1) * words];
        if !bits::intersects(ru, rv) {
            bits::set(&mut rows[u * words..(u + 1) * words], v);
            bits::set(&mut rows[v * words..(v + 1) * words], u);
        }
    }
    Graph::from_fn(n, |u, v| !bits::test(&rows[u * words..(u + 1) * words], v))
}

/// Complement of the C5 blow-up with part `i` an independent set of
/// `part_sizes[i]` vertices and parts `i`, `i+1 (mod 5)` completely joined.
/// Parts occupy consecutive index ranges in order.
pub fn c5_blowup_complement(part_sizes: [usize; 5]) -> Result<Graph> {
    if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidInput(format!(
            "part {i} of the C5 blow-up is empty"
        )));
    }
    let part: Vec<usize> = part_sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let n = part.len();
    Ok(Graph::from_fn(n, |u, v| {
        let d = (part[u] + 5 - part[v]) % 5;
        // blow-up edge iff consecutive parts; complement keeps everything else
        !(d == 1 || d == 4)
    }))
}
