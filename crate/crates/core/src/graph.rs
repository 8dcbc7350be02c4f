//! Immutable simple graphs with word-packed adjacency rows, plus the
//! edge-list interchange format.

use std::fmt::Write as _;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};

pub type VertexId = usize;

/// Default cap on the vertex count accepted by the constructors.
pub const DEFAULT_VERTEX_LIMIT: usize = 1 << 20;

/// Simple undirected graph on the vertex range `0..n`.
///
/// Rows are stored back to back, `words` machine words per vertex. Bit `v`
/// of row `u` is set iff `uv` is an edge. Rows are kept symmetric and the
/// diagonal is always clear.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .finish()
    }
}

impl Graph {
    fn empty(n: usize) -> Self {
        let words = bits::words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn from_edge_list(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::from_edge_list_with_limit(n, edges, DEFAULT_VERTEX_LIMIT)
    }

    pub fn from_edge_list_with_limit(
        n: usize,
        edges: &[(VertexId, VertexId)],
        limit: usize,
    ) -> Result<Self> {
        if n > limit {
            return Err(Error::TooLarge { n, limit });
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on every pair `u < v`.
    pub(crate) fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    fn insert(&mut self, u: usize, v: usize) {
        if !bits::test(self.row(u), v) {
            let w = self.words;
            bits::set(&mut self.rows[u * w..(u + 1) * w], v);
            bits::set(&mut self.rows[v * w..(v + 1) * w], u);
            self.m += 1;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: VertexId) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        bits::test(self.row(u), v)
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        bits::count(self.row(v))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        bits::ones(self.row(v))
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut rows = vec![0u64; self.rows.len()];
        let tail = bits::tail_mask(self.n);
        for u in 0..self.n {
            let dst = &mut rows[u * self.words..(u + 1) * self.words];
            for (d, s) in dst.iter_mut().zip(self.row(u)) {
                *d = !s;
            }
            if let Some(last) = dst.last_mut() {
                *last &= tail;
            }
            bits::clear(dst, u);
        }
        let all_pairs = self.n * self.n.saturating_sub(1) / 2;
        Graph {
            n: self.n,
            words: self.words,
            rows,
            m: all_pairs - self.m,
        }
    }

    /// True iff the graph has a triangle, found by intersecting the rows of
    /// each edge's endpoints.
    pub fn has_triangle(&self) -> bool {
        (0..self.n).any(|u| {
            self.neighbors(u)
                .filter(|&v| v > u)
                .any(|v| bits::intersects(self.row(u), self.row(v)))
        })
    }

    /// True iff no three vertices are pairwise non-adjacent, i.e. the
    /// complement is triangle-free.
    pub fn is_alpha_at_most_2(&self) -> bool {
        !self.complement().has_triangle()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// True iff some vertex of `a` is adjacent to some vertex of `b`.
    pub fn sets_adjacent(&self, a: &[VertexId], b: &[VertexId]) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut mask = vec![0u64; self.words];
        for &v in b {
            self.check_vertex(v)?;
            bits::set(&mut mask, v);
        }
        for &u in a {
            self.check_vertex(u)?;
            if bits::test(&mask, u) {
                return Err(Error::OverlappingSets(u));
            }
        }
        Ok(a.iter().any(|&u| bits::intersects(self.row(u), &mask)))
    }

    /// First non-adjacent pair inside `set`, if any.
    pub fn clique_violation(&self, set: &[VertexId]) -> Option<(VertexId, VertexId)> {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if u == v || !self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Removes `v`; vertices above it shift down by one so the result keeps
    /// the dense `0..n-1` range.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        let remap = |x: usize| if x > v { x - 1 } else { x };
        let mut g = Graph::empty(self.n - 1);
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.insert(remap(a), remap(b));
            }
        }
        Ok(g)
    }

    /// Parses the edge-list format: a header line `n m`, then `m` lines
    /// `u v` (0-indexed). `#` starts a comment; blank lines are ignored.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let pair = parse_pair(content).map_err(|msg| Error::Parse { line: lineno, msg })?;
            if header.is_none() {
                header = Some(pair);
            } else {
                edges.push(pair);
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edge_list(n, &edges)
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        Self::read_edge_list(text.as_bytes())
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = s.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        let tok = it
            .next()
            .ok_or_else(|| format!("expected two integers in `{s}`"))?;
        tok.parse()
            .map_err(|_| format!("`{tok}` is not a nonnegative integer"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(format!("trailing tokens in `{s}`"));
    }
    Ok((a, b))
}

/// A set of pairwise vertex-disjoint edges of some host graph. Edges are
/// stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<(VertexId, VertexId)>,
}

impl Matching {
    /// Validates that every pair is an edge of `g` and that no vertex is
    /// used twice.
    pub fn new(g: &Graph, edges: Vec<(VertexId, VertexId)>) -> Result<Matching> {
        let mut used = vec![0u64; g.words()];
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
            for x in [u, v] {
                if bits::test(&used, x) {
                    return Err(Error::InvalidMatching(format!(
                        "vertex {x} is matched twice"
                    )));
                }
                bits::set(&mut used, x);
            }
            out.push((u.min(v), u.max(v)));
        }
        Ok(Matching { edges: out })
    }

    pub(crate) fn from_edges_unchecked(edges: Vec<(VertexId, VertexId)>) -> Matching {
        Matching {
            edges: edges
                .into_iter()
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect(),
        }
    }

    pub fn empty() -> Matching {
        Matching { edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.edges.iter().flat_map(|&(u, v)| [u, v])
    }
}
