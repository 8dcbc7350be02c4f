//! Exact combinatorial oracles for small instances, and the scoring
//! functions used on extractor output at any size.

mod clique;
mod connected;
mod extension;
mod quadruples;

pub use clique::{omega_exact, DEFAULT_OMEGA_LIMIT};
pub use connected::{
    cm_exact, find_connected_matching, greedy_connected_matching, min_nonadjacent_matching_exact,
    DEFAULT_CM_LIMIT, DEFAULT_MINMATCH_LIMIT,
};
pub use extension::{audit_report, cambie_extend, lemma5_audit, AuditReport};
pub use quadruples::{count_bad_quadruples, count_bad_quadruples_with_k, BadQuadrupleCount};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};

/// Hard ceiling for the single-word exact searches.
pub const WORD_LIMIT: usize = 64;

/// Adjacency rows of a graph with at most 64 vertices, one word each.
pub(crate) fn word_rows(g: &Graph, limit: usize) -> Result<Vec<u64>> {
    let limit = limit.min(WORD_LIMIT);
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    Ok((0..g.n())
        .map(|v| g.row(v).first().copied().unwrap_or(0))
        .collect())
}

fn check_matching(g: &Graph, m: &Matching) -> Result<()> {
    Matching::new(g, m.edges().to_vec()).map(|_| ())
}

/// Number of pairs of matching edges with no edge of `g` between their
/// endpoint sets.
///
/// Bit-row route: for each matching edge, the union of its endpoints' rows
/// restricted to matched vertices marks every other matching edge it sees.
pub fn nonadjacent_pairs(g: &Graph, m: &Matching) -> Result<usize> {
    check_matching(g, m)?;
    let t = m.len();
    let mut owner = vec![usize::MAX; g.n()];
    let mut matched = vec![0u64; g.words()];
    for (i, &(u, v)) in m.edges().iter().enumerate() {
        owner[u] = i;
        owner[v] = i;
        bits::set(&mut matched, u);
        bits::set(&mut matched, v);
    }
    let mut seen = vec![false; t];
    let mut reach = vec![0u64; g.words()];
    let mut total = 0;
    for (i, &(u, v)) in m.edges().iter().enumerate() {
        for (((r, a), b), mm) in reach.iter_mut().zip(g.row(u)).zip(g.row(v)).zip(&matched) {
            *r = (a | b) & mm;
        }
        seen.iter_mut().for_each(|s| *s = false);
        for x in bits::ones(&reach) {
            seen[owner[x]] = true;
        }
        total += seen[i + 1..].iter().filter(|&&s| !s).count();
    }
    Ok(total)
}

/// Same count as [`nonadjacent_pairs`] by testing all four cross pairs of
/// every edge pair.
pub fn nonadjacent_pairs_scan(g: &Graph, m: &Matching) -> Result<usize> {
    check_matching(g, m)?;
    let e = m.edges();
    let mut total = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = e[i];
            let (c, d) = e[j];
            if !(g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d)) {
                total += 1;
            }
        }
    }
    Ok(total)
}

pub fn connected_matching_check(g: &Graph, m: &Matching) -> Result<bool> {
    Ok(nonadjacent_pairs(g, m)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, two_cliques};

    #[test]
    fn nonadjacent_examples() {
        let k = complete_graph(8);
        let m = Matching::new(&k, vec![(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        assert_eq!(nonadjacent_pairs(&k, &m), Ok(0));
        assert_eq!(connected_matching_check(&k, &m), Ok(true));

        let g = two_cliques(5);
        let cross = Matching::new(&g, vec![(0, 1), (5, 6)]).unwrap();
        assert_eq!(nonadjacent_pairs(&g, &cross), Ok(1));
        assert_eq!(nonadjacent_pairs_scan(&g, &cross), Ok(1));
        assert_eq!(connected_matching_check(&g, &cross), Ok(false));

        let inside = Matching::new(&g, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(nonadjacent_pairs(&g, &inside), Ok(0));

        let single = Matching::new(&g, vec![(7, 8)]).unwrap();
        assert_eq!(connected_matching_check(&g, &single), Ok(true));
    }

    #[test]
    fn invalid_matching_rejected() {
        let g = two_cliques(3);
        let m = Matching::from_edges_unchecked(vec![(0, 3)]);
        assert!(matches!(
            nonadjacent_pairs(&g, &m),
            Err(Error::InvalidMatching(_))
        ));
        let m = Matching::from_edges_unchecked(vec![(0, 1), (1, 2)]);
        assert!(nonadjacent_pairs_scan(&g, &m).is_err());
    }

    #[test]
    fn word_rows_limit() {
        assert!(word_rows(&complete_graph(10), 8).is_err());
        assert!(word_rows(&complete_graph(70), 100).is_err());
        assert_eq!(
            word_rows(&complete_graph(3), 8).unwrap(),
            vec![0b110, 0b101, 0b011]
        );
    }
}
