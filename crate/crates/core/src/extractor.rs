//! Randomized extraction of a size-`t` matching with few non-adjacent edge
//! pairs from a graph with independence number at most 2.
//!
//! One trial draws a uniform pairing `X` of the vertex set conditioned on
//! `|X ∩ E(G)| >= ⌈k t⌉` and then keeps a uniform `t`-subset of `X ∩ E(G)`.
//! The conditional expectation of the number of non-adjacent pairs in the
//! result is at most
//!
//! ```text
//! f(c', t, ℓ) = p² c' t (t-1)³ / (8 q (c't - 1)(c't - 3))
//! k = (c'-1)/2 - ℓ,  p = 1/k,  q = 1 - c'/(ℓ² t)
//! ```
//!
//! valid for `c' >= 4`, `ℓ² > c'/t` and `ℓ <= c'/2 - 3/2`, and minimised
//! over `ℓ` at `(c'(c'-1)/(2t))^{1/3}`.

use rand::seq::SliceRandom;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching, VertexId};
use crate::oracles::{
    find_connected_matching, greedy_connected_matching, nonadjacent_pairs, DEFAULT_CM_LIMIT,
};
use crate::sampling::{derive_seed, sample_in_a_ell, SeededRng, DEFAULT_MAX_ATTEMPTS};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractionParams {
    pub c_prime: f64,
    pub t: usize,
    pub ell: f64,
    pub k: f64,
    pub q: f64,
    pub p: f64,
    /// `⌈k t⌉`, the minimum accepted `|X ∩ E(G)|`.
    pub threshold: usize,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    pub rejection_attempts: u64,
    pub intersection_size: usize,
    pub nonadjacent_pairs: usize,
    pub bound: f64,
    pub within_bound: bool,
}

/// `(c'(c'-1)/(2t))^{1/3}`.
pub fn optimal_ell(c_prime: f64, t: usize) -> f64 {
    (c_prime * (c_prime - 1.0) / (2.0 * t as f64)).cbrt()
}

/// The closed-form bound `p² c' t (t-1)³ / (8 q (c't-1)(c't-3))`, with no
/// hypothesis checks.
pub fn bound_formula(c_prime: f64, t: usize, ell: f64) -> f64 {
    let t = t as f64;
    let k = 0.5 * (c_prime - 1.0) - ell;
    let p = 1.0 / k;
    let q = 1.0 - c_prime / (ell * ell * t);
    let ct = c_prime * t;
    p * p * ct * (t - 1.0).powi(3) / (8.0 * q * (ct - 1.0) * (ct - 3.0))
}

pub fn derive_params(c_prime: f64, t: usize, ell: f64) -> Result<ExtractionParams> {
    if !c_prime.is_finite() || c_prime < 4.0 {
        return Err(Error::Parameter(format!("c' >= 4 fails: c' = {c_prime}")));
    }
    if t == 0 {
        return Err(Error::Parameter("t >= 1 fails: t = 0".into()));
    }
    if !ell.is_finite() {
        return Err(Error::Parameter(format!("ell = {ell} is not finite")));
    }
    let tf = t as f64;
    if ell * ell <= c_prime / tf {
        return Err(Error::Parameter(format!(
            "ell^2 > c'/t fails: ell^2 = {} <= {}",
            ell * ell,
            c_prime / tf
        )));
    }
    let ell_max = 0.5 * c_prime - 1.5;
    if ell > ell_max {
        return Err(Error::Parameter(format!(
            "ell <= c'/2 - 3/2 fails: ell = {ell} > {ell_max}"
        )));
    }
    let k = 0.5 * (c_prime - 1.0) - ell;
    let q = 1.0 - c_prime / (ell * ell * tf);
    let p = 1.0 / k;
    debug_assert!(q > 0.0 && k >= 1.0);
    Ok(ExtractionParams {
        c_prime,
        t,
        ell,
        k,
        q,
        p,
        threshold: (k * tf).ceil() as usize,
        bound: bound_formula(c_prime, t, ell),
    })
}

/// Raw outcome of one sampling trial.
#[derive(Clone, Debug, PartialEq)]
pub struct Trial {
    pub matching: Matching,
    pub attempts: u64,
    pub intersection_size: usize,
}

/// Uniform `t`-subset of `edges` (order of the returned edges is random).
pub fn choose_uniform<R: rand::Rng + ?Sized>(
    edges: &[(VertexId, VertexId)],
    t: usize,
    rng: &mut R,
) -> Vec<(VertexId, VertexId)> {
    let mut pool = edges.to_vec();
    let (chosen, _) = pool.partial_shuffle(rng, t);
    chosen.to_vec()
}

/// Rejection-samples a pairing with at least `threshold` edges, then keeps
/// a uniform `t` of them. Needs `threshold >= t`.
pub fn sample_trial(
    g: &Graph,
    t: usize,
    threshold: usize,
    max_attempts: u64,
    rng: &mut SeededRng,
) -> Result<Trial> {
    if threshold < t {
        return Err(Error::InvalidInput(format!(
            "threshold {threshold} < t = {t}"
        )));
    }
    let (x, attempts) = sample_in_a_ell(g, threshold, max_attempts, rng)?;
    let edges = x.edges_in(g);
    let chosen = choose_uniform(&edges, t, rng);
    Ok(Trial {
        matching: Matching::from_edges_unchecked(chosen),
        attempts,
        intersection_size: edges.len(),
    })
}

fn report_for(g: &Graph, trial: &Trial, seed: u64, bound: f64) -> Result<TrialReport> {
    let nonadjacent = nonadjacent_pairs(g, &trial.matching)?;
    Ok(TrialReport {
        seed,
        rejection_attempts: trial.attempts,
        intersection_size: trial.intersection_size,
        nonadjacent_pairs: nonadjacent,
        bound,
        within_bound: nonadjacent as f64 <= bound,
    })
}

fn check_shape(g: &Graph, params: &ExtractionParams) -> Result<()> {
    if g.n() % 2 == 1 {
        return Err(Error::OddSet(g.n()));
    }
    let expected = (params.c_prime * params.t as f64).round() as usize;
    if expected != g.n() {
        return Err(Error::InvalidInput(format!(
            "graph has {} vertices but c' t = {expected}",
            g.n()
        )));
    }
    Ok(())
}

/// One trial against precomputed parameters.
pub fn extract_once(
    g: &Graph,
    params: &ExtractionParams,
    rng: &mut SeededRng,
) -> Result<(Matching, TrialReport)> {
    check_shape(g, params)?;
    if !g.is_alpha_at_most_2() {
        return Err(Error::InvalidInput(
            "graph has three pairwise non-adjacent vertices".into(),
        ));
    }
    let trial = sample_trial(g, params.t, params.threshold, DEFAULT_MAX_ATTEMPTS, rng)?;
    let report = report_for(g, &trial, rng.seed(), params.bound)?;
    Ok((trial.matching, report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractOptions {
    pub max_attempts: u64,
    /// Return a connected matching directly when one of size `t` is found,
    /// greedily at any size or exactly when `n <= oracle_limit`.
    pub cm_shortcut: bool,
    pub oracle_limit: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            cm_shortcut: true,
            oracle_limit: DEFAULT_CM_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extraction {
    /// `None` only when the shortcut fired and the parameter checks fail.
    pub params: Option<ExtractionParams>,
    /// Vertex of the input graph removed to make the order even.
    pub deleted_vertex: Option<VertexId>,
    /// Best matching, in the input graph's vertex numbering.
    pub matching: Matching,
    pub nonadjacent_pairs: usize,
    pub best_trial: Option<usize>,
    pub shortcut: bool,
    pub reports: Vec<TrialReport>,
    pub failed_trials: u64,
    pub acceptance_rate: Option<f64>,
}

/// Makes the vertex count even by deleting vertex 0 when it is odd.
pub fn parity_fix(g: &Graph) -> Result<(Graph, Option<VertexId>)> {
    if g.n() % 2 == 1 {
        Ok((g.delete_vertex(0)?, Some(0)))
    } else {
        Ok((g.clone(), None))
    }
}

/// Runs `trials` independent extractions and keeps the one with the fewest
/// non-adjacent pairs (ties go to the lowest trial index). Trial `i` uses
/// seed `derive_seed(master_seed, i)`, so the result does not depend on
/// how trials are scheduled.
pub fn extract_best(
    g_raw: &Graph,
    c: f64,
    t: usize,
    trials: usize,
    master_seed: u64,
    opts: &ExtractOptions,
) -> Result<Extraction> {
    if !(c.is_finite() && c > 4.0) {
        return Err(Error::InvalidInput(format!("c must exceed 4, got {c}")));
    }
    if t == 0 || trials == 0 {
        return Err(Error::InvalidInput(
            "t and trials must be at least 1".into(),
        ));
    }
    if (g_raw.n() as f64) < c * t as f64 {
        return Err(Error::InvalidInput(format!(
            "graph has {} vertices, fewer than c t = {}",
            g_raw.n(),
            c * t as f64
        )));
    }
    if !g_raw.is_alpha_at_most_2() {
        return Err(Error::InvalidInput(
            "graph has three pairwise non-adjacent vertices".into(),
        ));
    }

    let (g, deleted) = parity_fix(g_raw)?;
    let c_prime = g.n() as f64 / t as f64;
    let params = derive_params(c_prime, t, optimal_ell(c_prime, t));

    if opts.cm_shortcut {
        if let Some(m) = connected_shortcut(g_raw, t, opts.oracle_limit)? {
            return Ok(Extraction {
                params: params.ok(),
                deleted_vertex: None,
                matching: m,
                nonadjacent_pairs: 0,
                best_trial: None,
                shortcut: true,
                reports: Vec::new(),
                failed_trials: 0,
                acceptance_rate: None,
            });
        }
    }
    let params = params?;

    let run = |i: usize| -> Result<std::result::Result<TrialReport, u64>> {
        let seed = derive_seed(master_seed, i as u64);
        let mut rng = SeededRng::new(seed);
        match sample_trial(&g, t, params.threshold, opts.max_attempts, &mut rng) {
            Ok(trial) => report_for(&g, &trial, seed, params.bound).map(Ok),
            Err(Error::SamplingFailure { attempts }) => Ok(Err(attempts)),
            Err(e) => Err(e),
        }
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<_> = (0..trials).into_par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<_> = (0..trials).map(run).collect();

    let mut reports = Vec::with_capacity(trials);
    let mut trial_index = Vec::with_capacity(trials);
    let mut failed = 0u64;
    let mut attempts = 0u64;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            Ok(r) => {
                attempts += r.rejection_attempts;
                reports.push(r);
                trial_index.push(i);
            }
            Err(a) => {
                attempts += a;
                failed += 1;
            }
        }
    }
    if reports.is_empty() {
        return Err(Error::SamplingFailure { attempts });
    }
    let best = (0..reports.len())
        .min_by_key(|&j| (reports[j].nonadjacent_pairs, trial_index[j]))
        .expect("at least one report");
    let best_seed = reports[best].seed;

    // replay the winning trial to recover its matching
    let mut rng = SeededRng::new(best_seed);
    let trial = sample_trial(&g, t, params.threshold, opts.max_attempts, &mut rng)?;
    let shift = |v: VertexId| match deleted {
        Some(d) if v >= d => v + 1,
        _ => v,
    };
    let edges = trial
        .matching
        .edges()
        .iter()
        .map(|&(u, v)| (shift(u), shift(v)))
        .collect();
    let matching = Matching::new(g_raw, edges)?;

    Ok(Extraction {
        params: Some(params),
        deleted_vertex: deleted,
        nonadjacent_pairs: reports[best].nonadjacent_pairs,
        matching,
        best_trial: Some(trial_index[best]),
        shortcut: false,
        acceptance_rate: Some(reports.len() as f64 / attempts as f64),
        reports,
        failed_trials: failed,
    })
}

fn connected_shortcut(g: &Graph, t: usize, oracle_limit: usize) -> Result<Option<Matching>> {
    let greedy = greedy_connected_matching(g, t);
    if greedy.len() >= t {
        return Ok(Some(greedy));
    }
    if g.n() <= oracle_limit.min(crate::oracles::WORD_LIMIT) {
        return find_connected_matching(g, t, oracle_limit);
    }
    Ok(None)
}
