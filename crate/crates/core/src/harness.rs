//! Experiment orchestration: build an instance, run [`extract_best`], and
//! summarise the trials against the closed-form bound and the limiting
//! density `1/(c(c-1)^2)`.
//!
//! CSV columns, in order:
//! `family, params, n, c, c_prime, t, ell, k, p, q, threshold, trials,
//! acceptance_rate, bound, bound_density, asymptotic_density, best, mean,
//! median, seed, wall_ms, error`. Missing values are empty cells.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extractor::{extract_best, ExtractOptions, ExtractionParams};
use crate::generators::{
    c5_blowup_complement, complement_of_random_triangle_free, complete_graph, two_cliques,
};
use crate::graph::Graph;
use crate::sampling::DEFAULT_MAX_ATTEMPTS;

/// Instance family. `n` defaults to `⌈c t⌉`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Complete {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    /// Two disjoint cliques of `⌈n/2⌉` vertices each.
    TwoCliques {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    Rtf {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default)]
        seed: u64,
    },
    C5 {
        parts: [usize; 5],
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete { .. } => "complete",
            Family::TwoCliques { .. } => "two-cliques",
            Family::Rtf { .. } => "rtf",
            Family::C5 { .. } => "c5",
        }
    }

    fn params_label(&self, n: usize) -> String {
        match self {
            Family::Complete { .. } | Family::TwoCliques { .. } => format!("n={n}"),
            Family::Rtf { seed, .. } => format!("n={n};seed={seed}"),
            Family::C5 { parts } => format!(
                "parts={}",
                parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(":")
            ),
        }
    }

    fn order(&self, default_n: usize) -> usize {
        match self {
            Family::Complete { n } | Family::TwoCliques { n } | Family::Rtf { n, .. } => {
                n.unwrap_or(default_n)
            }
            Family::C5 { parts } => parts.iter().sum(),
        }
    }

    pub fn build(&self, default_n: usize) -> Result<Graph> {
        let n = self.order(default_n);
        Ok(match self {
            Family::Complete { .. } => complete_graph(n),
            Family::TwoCliques { .. } => two_cliques(n.div_ceil(2)),
            Family::Rtf { seed, .. } => complement_of_random_triangle_free(n, *seed),
            Family::C5 { parts } => c5_blowup_complement(*parts)?,
        })
    }
}

fn default_trials() -> usize {
    100
}

fn default_true() -> bool {
    true
}

fn default_max_attempts() -> u64 {
    DEFAULT_MAX_ATTEMPTS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub family: Family,
    pub c: f64,
    pub t: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_true")]
    pub cm_shortcut: bool,
    #[serde(default = "default_max_attempts")]
    pub max_attempts: u64,
    /// Record wall-clock time. Off by default so output bytes are reproducible.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(family: Family, c: f64, t: usize, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            family,
            c,
            t,
            trials,
            master_seed,
            cm_shortcut: true,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 4.0) {
            return Err(Error::InvalidInput(format!(
                "c must exceed 4, got {}",
                self.c
            )));
        }
        if self.trials == 0 || self.t == 0 {
            return Err(Error::InvalidInput(
                "t and trials must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn default_n(&self) -> usize {
        (self.c * self.t as f64).ceil() as usize
    }

    fn label(&self) -> String {
        format!(
            "{} c={} t={} trials={} seed={}",
            self.family.name(),
            self.c,
            self.t,
            self.trials,
            self.master_seed
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub n: usize,
    pub c_prime: f64,
    pub params: Option<ExtractionParams>,
    pub bound: Option<f64>,
    pub bound_density: Option<f64>,
    pub asymptotic_density: f64,
    pub best: usize,
    pub mean: f64,
    pub median: f64,
    pub max: usize,
    pub acceptance_rate: Option<f64>,
    pub shortcut: bool,
    pub failed_trials: u64,
    pub wall_ms: Option<u64>,
}

/// `bound / C(t, 2)`, taken as 0 when `t < 2`.
pub fn bound_density(bound: f64, t: usize) -> f64 {
    if t < 2 {
        0.0
    } else {
        bound / (t * (t - 1) / 2) as f64
    }
}

pub fn asymptotic_density(c: f64) -> f64 {
    1.0 / (c * (c - 1.0) * (c - 1.0))
}

fn median(sorted: &[usize]) -> f64 {
    let len = sorted.len();
    if len == 0 {
        return 0.0;
    }
    if len % 2 == 1 {
        sorted[len / 2] as f64
    } else {
        (sorted[len / 2 - 1] + sorted[len / 2]) as f64 / 2.0
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    let annotate = |e: Error| Error::Context {
        context: cfg.label(),
        source: Box::new(e),
    };
    cfg.validate().map_err(annotate)?;
    let start = cfg.timing.then(std::time::Instant::now);
    let g = cfg.family.build(cfg.default_n()).map_err(annotate)?;
    let opts = ExtractOptions {
        max_attempts: cfg.max_attempts,
        cm_shortcut: cfg.cm_shortcut,
        ..Default::default()
    };
    let out =
        extract_best(&g, cfg.c, cfg.t, cfg.trials, cfg.master_seed, &opts).map_err(annotate)?;

    let mut counts: Vec<usize> = out.reports.iter().map(|r| r.nonadjacent_pairs).collect();
    counts.sort_unstable();
    let (best, mean, med, max) = if counts.is_empty() {
        (
            out.nonadjacent_pairs,
            out.nonadjacent_pairs as f64,
            out.nonadjacent_pairs as f64,
            out.nonadjacent_pairs,
        )
    } else {
        let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
        (counts[0], mean, median(&counts), counts[counts.len() - 1])
    };
    let n_even = g.n() - g.n() % 2;
    let bound = out.params.as_ref().map(|p| p.bound);
    let wall_ms = start.map(|s| s.elapsed().as_millis() as u64);
    Ok(ExperimentSummary {
        config: cfg.clone(),
        n: g.n(),
        c_prime: n_even as f64 / cfg.t as f64,
        bound_density: bound.map(|b| bound_density(b, cfg.t)),
        bound,
        params: out.params,
        asymptotic_density: asymptotic_density(cfg.c),
        best,
        mean,
        median: med,
        max,
        acceptance_rate: out.acceptance_rate,
        shortcut: out.shortcut,
        failed_trials: out.failed_trials,
        wall_ms,
    })
}

/// One grid point: either a summary or the error that stopped it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunOutcome {
    pub config: ExperimentConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<ExperimentSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunOutcome {
    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsvRow {
    pub family: String,
    pub params: String,
    pub n: Option<usize>,
    pub c: f64,
    pub c_prime: Option<f64>,
    pub t: usize,
    pub ell: Option<f64>,
    pub k: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub threshold: Option<usize>,
    pub trials: usize,
    pub acceptance_rate: Option<f64>,
    pub bound: Option<f64>,
    pub bound_density: Option<f64>,
    pub asymptotic_density: f64,
    pub best: Option<usize>,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub seed: u64,
    pub wall_ms: Option<u64>,
    pub error: Option<String>,
}

impl From<&RunOutcome> for CsvRow {
    fn from(o: &RunOutcome) -> Self {
        let cfg = &o.config;
        let s = o.summary.as_ref();
        let p = s.and_then(|s| s.params.as_ref());
        let n = s.map(|s| s.n);
        CsvRow {
            family: cfg.family.name().to_string(),
            params: cfg
                .family
                .params_label(n.unwrap_or_else(|| cfg.family.order(cfg.default_n()))),
            n,
            c: cfg.c,
            c_prime: s.map(|s| s.c_prime),
            t: cfg.t,
            ell: p.map(|p| p.ell),
            k: p.map(|p| p.k),
            p: p.map(|p| p.p),
            q: p.map(|p| p.q),
            threshold: p.map(|p| p.threshold),
            trials: cfg.trials,
            acceptance_rate: s.and_then(|s| s.acceptance_rate),
            bound: s.and_then(|s| s.bound),
            bound_density: s.and_then(|s| s.bound_density),
            asymptotic_density: asymptotic_density(cfg.c),
            best: s.map(|s| s.best),
            mean: s.map(|s| s.mean),
            median: s.map(|s| s.median),
            seed: cfg.master_seed,
            wall_ms: s.and_then(|s| s.wall_ms),
            error: o.error.clone(),
        }
    }
}

/// Runs every config; failures become error outcomes and the rest proceed.
/// Outcomes are returned in grid order.
pub fn sweep(grid: &[ExperimentConfig]) -> Result<Vec<RunOutcome>> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty experiment grid".into()));
    }
    let run = |cfg: &ExperimentConfig| match run_experiment(cfg) {
        Ok(s) => RunOutcome {
            config: cfg.clone(),
            summary: Some(s),
            error: None,
        },
        Err(e) => RunOutcome {
            config: cfg.clone(),
            summary: None,
            error: Some(e.to_string()),
        },
    };
    #[cfg(feature = "parallel")]
    let out = grid.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let out = grid.iter().map(run).collect();
    Ok(out)
}

pub fn to_csv(outcomes: &[RunOutcome]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for o in outcomes {
        w.serialize(CsvRow::from(o))
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn to_json(outcomes: &[RunOutcome]) -> Result<String> {
    serde_json::to_string_pretty(outcomes).map_err(|e| Error::Io(e.to_string()))
}

/// Parses one config object or an array of them.
pub fn parse_configs(text: &str) -> Result<Vec<ExperimentConfig>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let parsed = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|c| vec![c])
    };
    parsed.map_err(|e| Error::InvalidInput(e.to_string()))
}
