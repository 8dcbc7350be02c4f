use super::word_rows;
use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, Matching, VertexId};

pub const DEFAULT_CM_LIMIT: usize = 24;
pub const DEFAULT_MINMATCH_LIMIT: usize = 14;

/// Greedy connected matching with at most `t` edges. Vertices are scanned
/// by descending degree and each is matched to the first free neighbour
/// that keeps the matching connected. Works at any size.
pub fn greedy_connected_matching(g: &Graph, t: usize) -> Matching {
    let n = g.n();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    // miss[x] holds the indices of chosen edges whose endpoints x does not touch
    let cap = t.min(n / 2);
    let mwords = bits::words_for(cap).max(1);
    let mut miss = vec![0u64; n * mwords];
    let mut used = vec![false; n];
    let mut chosen = Vec::with_capacity(cap);
    let mut reach = vec![0u64; g.words()];

    'outer: for &u in &order {
        if chosen.len() >= cap {
            break;
        }
        if used[u] {
            continue;
        }
        for v in g.neighbors(u) {
            if used[v] {
                continue;
            }
            let mu = &miss[u * mwords..(u + 1) * mwords];
            let mv = &miss[v * mwords..(v + 1) * mwords];
            if bits::intersects(mu, mv) {
                continue;
            }
            let idx = chosen.len();
            chosen.push((u, v));
            used[u] = true;
            used[v] = true;
            for ((r, a), b) in reach.iter_mut().zip(g.row(u)).zip(g.row(v)) {
                *r = a | b;
            }
            for x in 0..n {
                if !bits::test(&reach, x) {
                    bits::set(&mut miss[x * mwords..(x + 1) * mwords], idx);
                }
            }
            continue 'outer;
        }
    }
    Matching::from_edges_unchecked(chosen)
}

struct ConnectedSearch<'a> {
    adj: &'a [u64],
    covers: Vec<u64>,
    chosen: Vec<(VertexId, VertexId)>,
    best: Vec<(VertexId, VertexId)>,
    target: usize,
}

impl ConnectedSearch<'_> {
    #[inline]
    fn compatible(&self, a: usize, b: usize) -> bool {
        let ab = 1u64 << a | 1u64 << b;
        self.covers.iter().all(|&c| c & ab != 0)
    }

    /// Vertices of `avail` that still have a compatible partner in `avail`.
    fn useful(&self, avail: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = avail;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut nb = self.adj[a] & avail;
            while nb != 0 {
                let b = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if self.compatible(a, b) {
                    out |= 1 << a;
                    break;
                }
            }
        }
        out
    }

    fn run(&mut self, avail: u64) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() >= self.target {
            return;
        }
        let useful = self.useful(avail);
        if self.chosen.len() + (useful.count_ones() as usize) / 2 <= self.best.len() {
            return;
        }
        // branch on the useful vertex of largest degree
        let mut a = usize::MAX;
        let mut rest = useful;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if a == usize::MAX || self.adj[v].count_ones() > self.adj[a].count_ones() {
                a = v;
            }
        }
        let mut nb = self.adj[a] & useful;
        while nb != 0 {
            let b = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if !self.compatible(a, b) {
                continue;
            }
            self.covers.push(self.adj[a] | self.adj[b]);
            self.chosen.push((a, b));
            self.run(useful & !(1u64 << a | 1u64 << b));
            self.chosen.pop();
            self.covers.pop();
            if self.best.len() >= self.target {
                return;
            }
        }
        self.run(useful & !(1u64 << a));
    }
}

fn all_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn connected_search(g: &Graph, target: usize, limit: usize) -> Result<Matching> {
    let adj = word_rows(g, limit)?;
    let seed = greedy_connected_matching(g, target);
    let mut s = ConnectedSearch {
        adj: &adj,
        covers: Vec::new(),
        chosen: Vec::new(),
        best: seed.edges().to_vec(),
        target,
    };
    s.run(all_mask(g.n()));
    Ok(Matching::from_edges_unchecked(s.best))
}

/// Largest connected matching size, by branch and bound over matchings.
pub fn cm_exact(g: &Graph, limit: usize) -> Result<usize> {
    connected_search(g, usize::MAX, limit).map(|m| m.len())
}

/// A connected matching of size exactly `t` if one exists.
pub fn find_connected_matching(g: &Graph, t: usize, limit: usize) -> Result<Option<Matching>> {
    let m = connected_search(g, t, limit)?;
    if m.len() >= t {
        let mut edges = m.edges().to_vec();
        edges.truncate(t);
        Ok(Some(Matching::from_edges_unchecked(edges)))
    } else {
        Ok(None)
    }
}

struct MinSearch<'a> {
    adj: &'a [u64],
    covers: Vec<u64>,
    chosen: Vec<(VertexId, VertexId)>,
    best: Option<(Vec<(VertexId, VertexId)>, usize)>,
}

impl MinSearch<'_> {
    fn run(&mut self, avail: u64, need: usize, count: usize) {
        if let Some((_, b)) = &self.best {
            if count >= *b {
                return;
            }
        }
        if need == 0 {
            self.best = Some((self.chosen.clone(), count));
            return;
        }
        if (avail.count_ones() as usize) < 2 * need {
            return;
        }
        let a = avail.trailing_zeros() as usize;
        let rest = avail & !(1u64 << a);
        let mut nb = self.adj[a] & rest;
        while nb != 0 {
            let b = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let ab = 1u64 << a | 1u64 << b;
            let add = self.covers.iter().filter(|&&c| c & ab == 0).count();
            self.covers.push(self.adj[a] | self.adj[b]);
            self.chosen.push((a, b));
            self.run(rest & !(1u64 << b), need - 1, count + add);
            self.chosen.pop();
            self.covers.pop();
        }
        self.run(rest, need, count);
    }
}

/// Minimum number of non-adjacent edge pairs over all matchings of size `t`.
pub fn min_nonadjacent_matching_exact(
    g: &Graph,
    t: usize,
    limit: usize,
) -> Result<(Matching, usize)> {
    let adj = word_rows(g, limit)?;
    let mut s = MinSearch {
        adj: &adj,
        covers: Vec::new(),
        chosen: Vec::new(),
        best: None,
    };
    s.run(all_mask(g.n()), t, 0);
    match s.best {
        Some((edges, count)) => Ok((Matching::from_edges_unchecked(edges), count)),
        None => Err(Error::Infeasible(t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        c5_blowup_complement, complement_of_random_triangle_free, complete_graph, two_cliques,
    };
    use crate::oracles::{connected_matching_check, nonadjacent_pairs};

    /// Every matching of `g`, by recursion on the lowest vertex.
    fn all_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
        fn go(
            g: &Graph,
            avail: &[usize],
            cur: &mut Vec<(usize, usize)>,
            out: &mut Vec<Vec<(usize, usize)>>,
        ) {
            out.push(cur.clone());
            for (i, &a) in avail.iter().enumerate() {
                for &b in &avail[i + 1..] {
                    if g.has_edge(a, b) {
                        let rest: Vec<usize> =
                            avail[i + 1..].iter().copied().filter(|&x| x != b).collect();
                        cur.push((a, b));
                        go(g, &rest, cur, out);
                        cur.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        let avail: Vec<usize> = (0..g.n()).collect();
        go(g, &avail, &mut Vec::new(), &mut out);
        out
    }

    fn brute_cm(g: &Graph) -> usize {
        all_matchings(g)
            .into_iter()
            .filter(|m| connected_matching_check(g, &Matching::new(g, m.clone()).unwrap()).unwrap())
            .map(|m| m.len())
            .max()
            .unwrap()
    }

    #[test]
    fn cm_examples() {
        for m in 1..=5 {
            assert_eq!(cm_exact(&complete_graph(2 * m), 24), Ok(m));
        }
        assert_eq!(cm_exact(&two_cliques(3), 24), Ok(1));
        assert_eq!(cm_exact(&two_cliques(5), 24), Ok(2));
        assert_eq!(cm_exact(&two_cliques(1), 24), Ok(0));
        assert!(cm_exact(&complete_graph(25), 24).is_err());
    }

    #[test]
    fn cm_matches_enumeration() {
        let mut graphs = vec![
            c5_blowup_complement([1, 2, 1, 2, 1]).unwrap(),
            two_cliques(4),
        ];
        for seed in 0..40 {
            graphs.push(complement_of_random_triangle_free(
                6 + (seed as usize % 5),
                seed,
            ));
        }
        for g in &graphs {
            assert_eq!(cm_exact(g, 24).unwrap(), brute_cm(g), "{g:?}");
        }
    }

    #[test]
    fn find_returns_valid_connected_matching() {
        let g = complement_of_random_triangle_free(16, 3);
        let cm = cm_exact(&g, 24).unwrap();
        let m = find_connected_matching(&g, cm, 24).unwrap().unwrap();
        assert_eq!(m.len(), cm);
        assert!(Matching::new(&g, m.edges().to_vec()).is_ok());
        assert_eq!(nonadjacent_pairs(&g, &m), Ok(0));
        assert_eq!(find_connected_matching(&g, cm + 1, 24), Ok(None));
    }

    #[test]
    fn greedy_is_connected_and_capped() {
        let g = complete_graph(41);
        let m = greedy_connected_matching(&g, 10);
        assert_eq!(m.len(), 10);
        assert_eq!(nonadjacent_pairs(&g, &m), Ok(0));
        let m = greedy_connected_matching(&two_cliques(6), 10);
        assert_eq!(m.len(), 3);
        assert_eq!(nonadjacent_pairs(&two_cliques(6), &m), Ok(0));
        assert!(greedy_connected_matching(&complete_graph(5), 0).is_empty());
    }

    #[test]
    fn min_matching_examples() {
        let (m, c) = min_nonadjacent_matching_exact(&complete_graph(8), 4, 14).unwrap();
        assert_eq!((m.len(), c), (4, 0));
        let (m, c) = min_nonadjacent_matching_exact(&two_cliques(3), 2, 14).unwrap();
        assert_eq!((m.len(), c), (2, 1));
        let (_, c) = min_nonadjacent_matching_exact(&two_cliques(5), 2, 14).unwrap();
        assert_eq!(c, 0);
        assert_eq!(
            min_nonadjacent_matching_exact(&two_cliques(3), 4, 14).unwrap_err(),
            Error::Infeasible(4)
        );
        assert!(min_nonadjacent_matching_exact(&complete_graph(15), 2, 14).is_err());
    }

    #[test]
    fn min_matching_matches_enumeration() {
        for seed in 0..25u64 {
            let g = complement_of_random_triangle_free(6 + (seed as usize % 5), seed);
            let all = all_matchings(&g);
            for t in 1..=g.n() / 2 {
                let brute = all
                    .iter()
                    .filter(|m| m.len() == t)
                    .map(|m| nonadjacent_pairs(&g, &Matching::new(&g, m.clone()).unwrap()).unwrap())
                    .min();
                match (brute, min_nonadjacent_matching_exact(&g, t, 14)) {
                    (Some(b), Ok((m, c))) => {
                        assert_eq!(b, c);
                        assert_eq!(nonadjacent_pairs(&g, &m), Ok(c));
                        assert_eq!(m.len(), t);
                    }
                    (None, Err(Error::Infeasible(_))) => {}
                    other => panic!("mismatch for t={t}: {other:?}"),
                }
            }
        }
    }
}
