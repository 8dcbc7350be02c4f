//! Uniform random partitions of an even set into pairs.
//!
//! A uniform pairing is drawn by shuffling the set and pairing consecutive
//! elements: each of the `(|S|-1)!!` pairings arises from exactly
//! `2^{|S|/2} (|S|/2)!` permutations, so the law is exactly uniform. Under
//! it a fixed pair lies in `X` with probability `1/(|S|-1)` and two fixed
//! disjoint pairs both lie in `X` with probability `1/((|S|-1)(|S|-3))`.
//!
//! Conditioning on `|X ∩ E(G)| >= threshold` is done by rejection, which
//! leaves the accepted sample uniform over the conditioning event.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Default attempt budget for rejection sampling.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 1_000_000;

/// ChaCha8 stream that remembers the seed it was created from.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of the `index`-th independent stream under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    master ^ splitmix64(index)
}

/// A perfect pairing of a finite set. Each pair is stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    pairs: Vec<(VertexId, VertexId)>,
}

impl Partition {
    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs sorted lexicographically; equal for equal partitions.
    pub fn canonical(&self) -> Vec<(VertexId, VertexId)> {
        let mut p = self.pairs.clone();
        p.sort_unstable();
        p
    }

    pub fn contains(&self, a: VertexId, b: VertexId) -> bool {
        let key = (a.min(b), a.max(b));
        self.pairs.contains(&key)
    }

    /// `X ∩ E(g)` as a list of pairs.
    pub fn edges_in(&self, g: &Graph) -> Vec<(VertexId, VertexId)> {
        self.pairs
            .iter()
            .copied()
            .filter(|&(a, b)| g.has_edge(a, b))
            .collect()
    }

    fn from_order(order: &[VertexId]) -> Partition {
        Partition {
            pairs: order
                .chunks_exact(2)
                .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
                .collect(),
        }
    }
}

/// A family `F` of unordered pairs, queried for membership.
pub trait PairFamily {
    fn contains_pair(&self, a: VertexId, b: VertexId) -> bool;
    fn pair_count(&self) -> usize;
}

impl PairFamily for Graph {
    fn contains_pair(&self, a: VertexId, b: VertexId) -> bool {
        self.has_edge(a, b)
    }

    fn pair_count(&self) -> usize {
        self.m()
    }
}

/// Explicit set of unordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairSet(BTreeSet<(VertexId, VertexId)>);

impl PairSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: VertexId, b: VertexId) -> bool {
        self.0.insert((a.min(b), a.max(b)))
    }
}

impl FromIterator<(VertexId, VertexId)> for PairSet {
    fn from_iter<I: IntoIterator<Item = (VertexId, VertexId)>>(iter: I) -> Self {
        let mut s = PairSet::new();
        for (a, b) in iter {
            s.insert(a, b);
        }
        s
    }
}

impl PairFamily for PairSet {
    fn contains_pair(&self, a: VertexId, b: VertexId) -> bool {
        self.0.contains(&(a.min(b), a.max(b)))
    }

    fn pair_count(&self) -> usize {
        self.0.len()
    }
}

fn check_even(len: usize) -> Result<()> {
    if len % 2 == 1 {
        return Err(Error::OddSet(len));
    }
    if len == 0 {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Uniform random partition of `s` into pairs.
pub fn sample_partition<R: Rng + ?Sized>(s: &[VertexId], rng: &mut R) -> Result<Partition> {
    check_even(s.len())?;
    let mut order = s.to_vec();
    order.shuffle(rng);
    Ok(Partition::from_order(&order))
}

/// `|F ∩ X|`.
pub fn count_intersection<F: PairFamily + ?Sized>(x: &Partition, f: &F) -> usize {
    x.pairs
        .iter()
        .filter(|&&(a, b)| f.contains_pair(a, b))
        .count()
}

/// Fraction of `trials` uniform partitions `X` of `s` with
/// `| |F∩X| - |F|/(|S|-1) | >= lambda`.
pub fn empirical_deviation_rate<F, R>(
    s: &[VertexId],
    f: &F,
    lambda: f64,
    trials: u64,
    rng: &mut R,
) -> Result<f64>
where
    F: PairFamily + ?Sized,
    R: Rng + ?Sized,
{
    check_even(s.len())?;
    if s.len() < 4 {
        return Err(Error::InvalidInput(format!("|S| = {} < 4", s.len())));
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} must be positive"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let mean = f.pair_count() as f64 / (s.len() - 1) as f64;
    let mut order = s.to_vec();
    let mut hits = 0u64;
    for _ in 0..trials {
        order.shuffle(rng);
        let hit = order
            .chunks_exact(2)
            .filter(|c| f.contains_pair(c[0], c[1]))
            .count();
        if (hit as f64 - mean).abs() >= lambda {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

/// Draws uniform partitions of `V(g)` until one has at least `threshold`
/// pairs that are edges of `g`. Returns the accepted partition and the
/// number of draws it took.
pub fn sample_in_a_ell<R: Rng + ?Sized>(
    g: &Graph,
    threshold: usize,
    max_attempts: u64,
    rng: &mut R,
) -> Result<(Partition, u64)> {
    check_even(g.n())?;
    let mut order: Vec<VertexId> = (0..g.n()).collect();
    for attempt in 1..=max_attempts {
        order.shuffle(rng);
        let hit = order
            .chunks_exact(2)
            .filter(|c| g.has_edge(c[0], c[1]))
            .count();
        if hit >= threshold {
            return Ok((Partition::from_order(&order), attempt));
        }
    }
    Err(Error::SamplingFailure {
        attempts: max_attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, two_cliques};
    use std::collections::HashMap;

    /// All pairings of `0..n`, by recursive enumeration.
    fn all_pairings(rest: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if rest.is_empty() {
            return vec![vec![]];
        }
        let a = rest[0];
        let mut out = Vec::new();
        for i in 1..rest.len() {
            let b = rest[i];
            let remaining: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != b).collect();
            for mut tail in all_pairings(&remaining) {
                tail.push((a, b));
                tail.sort_unstable();
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn two_element_set_has_one_partition() {
        let mut rng = SeededRng::new(1);
        for _ in 0..10 {
            let p = sample_partition(&[4, 9], &mut rng).unwrap();
            assert_eq!(p.pairs(), &[(4, 9)]);
        }
    }

    #[test]
    fn odd_and_empty_sets_rejected() {
        let mut rng = SeededRng::new(1);
        assert_eq!(
            sample_partition(&[1, 2, 3], &mut rng),
            Err(Error::OddSet(3))
        );
        assert_eq!(sample_partition(&[], &mut rng), Err(Error::EmptySet));
    }

    #[test]
    fn six_set_support_is_all_fifteen() {
        let s: Vec<usize> = (0..6).collect();
        let expected: BTreeSet<_> = all_pairings(&s).into_iter().collect();
        assert_eq!(expected.len(), 15);
        let mut rng = SeededRng::new(2);
        let mut seen = BTreeSet::new();
        for _ in 0..5_000 {
            seen.insert(sample_partition(&s, &mut rng).unwrap().canonical());
        }
        assert_eq!(seen, expected);
    }

    #[test]
    fn chi_square_uniformity() {
        // chi-square critical values at significance 1e-3: df=2 and df=14
        for (size, critical) in [(4usize, 13.815_510_557_964_274), (6, 36.123_273_680_398_13)] {
            let s: Vec<usize> = (0..size).collect();
            let support = all_pairings(&s);
            let mut counts: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
            let mut rng = SeededRng::new(size as u64);
            let n = 100_000u64;
            for _ in 0..n {
                *counts
                    .entry(sample_partition(&s, &mut rng).unwrap().canonical())
                    .or_default() += 1;
            }
            assert_eq!(counts.len(), support.len());
            let expect = n as f64 / support.len() as f64;
            let chi2: f64 = support
                .iter()
                .map(|p| {
                    let o = *counts.get(p).unwrap_or(&0) as f64;
                    (o - expect).powi(2) / expect
                })
                .sum();
            assert!(chi2 < critical, "|S|={size}: chi2 = {chi2}");
        }
    }

    #[test]
    fn single_pair_membership_rates() {
        for (size, trials) in [(4usize, 200_000u64), (6, 200_000)] {
            let s: Vec<usize> = (0..size).collect();
            let mut f = PairSet::new();
            f.insert(0, 1);
            let mut rng = SeededRng::new(5);
            let mut total = 0usize;
            for _ in 0..trials {
                total += count_intersection(&sample_partition(&s, &mut rng).unwrap(), &f);
            }
            let p = 1.0 / (size - 1) as f64;
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            let rate = total as f64 / trials as f64;
            assert!((rate - p).abs() < 4.0 * sigma, "|S|={size}: {rate} vs {p}");
        }
    }

    #[test]
    fn intersection_extremes() {
        let s: Vec<usize> = (0..4).collect();
        let all: PairSet = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let mut rng = SeededRng::new(9);
        for _ in 0..100 {
            let x = sample_partition(&s, &mut rng).unwrap();
            assert_eq!(count_intersection(&x, &all), 2);
            assert_eq!(count_intersection(&x, &PairSet::new()), 0);
        }
    }

    #[test]
    fn deviation_rate_degenerate_families() {
        let s: Vec<usize> = (0..10).collect();
        let mut rng = SeededRng::new(3);
        let k = complete_graph(10);
        assert_eq!(
            empirical_deviation_rate(&s, &k, 0.01, 500, &mut rng),
            Ok(0.0)
        );
        assert_eq!(
            empirical_deviation_rate(&s, &PairSet::new(), 0.01, 500, &mut rng),
            Ok(0.0)
        );
        assert!(empirical_deviation_rate(&s, &k, 0.0, 5, &mut rng).is_err());
        assert!(empirical_deviation_rate(&s[..2], &k, 1.0, 5, &mut rng).is_err());
    }

    #[test]
    fn deviation_rate_two_cliques_forty() {
        // |F| = 2 * C(20, 2) = 380; the bound at lambda = 10 is 40/100
        let g = two_cliques(20);
        assert_eq!(g.m(), 380);
        let s: Vec<usize> = (0..40).collect();
        let mut rng = SeededRng::new(4);
        let trials = 10_000u64;
        let rate = empirical_deviation_rate(&s, &g, 10.0, trials, &mut rng).unwrap();
        let bound: f64 = 0.4;
        let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
        assert!(rate <= bound + 3.0 * sigma, "rate {rate}");
    }

    #[test]
    fn rejection_sampler_cases() {
        let mut rng = SeededRng::new(8);
        let (x, attempts) = sample_in_a_ell(&complete_graph(4), 2, 10, &mut rng).unwrap();
        assert_eq!((x.len(), attempts), (2, 1));

        let empty = Graph::from_edge_list(4, &[]).unwrap();
        assert_eq!(
            sample_in_a_ell(&empty, 1, 50, &mut rng),
            Err(Error::SamplingFailure { attempts: 50 })
        );
    }

    #[test]
    fn rejection_acceptance_rate_two_cliques() {
        // E|X∩E| = 90/19 ≈ 4.74 on two K10; lambda must exceed sqrt(20) for q > 0
        let g = two_cliques(10);
        let mean = g.m() as f64 / 19.0;
        let threshold = 0usize;
        let lambda = mean - threshold as f64;
        let q = 1.0 - 20.0 / (lambda * lambda);
        let mut rng = SeededRng::new(12);
        let mut attempts = 0u64;
        let accepted = 2_000u64;
        for _ in 0..accepted {
            let (x, a) = sample_in_a_ell(&g, threshold, 1_000, &mut rng).unwrap();
            assert!(count_intersection(&x, &g) >= threshold);
            attempts += a;
        }
        let rate = accepted as f64 / attempts as f64;
        assert!(rate >= q.max(0.0), "acceptance {rate} < {q}");
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let s: Vec<usize> = (0..30).collect();
        let draw = |seed| {
            let mut rng = SeededRng::new(seed);
            (0..20)
                .map(|_| sample_partition(&s, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(77), draw(77));
        assert_ne!(draw(77), draw(78));
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
    }
}
