use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densematch::harness::{parse_configs, sweep, to_csv, to_json, ExperimentConfig, Family};
use densematch::oracles::{
    audit_report, cm_exact, count_bad_quadruples, find_connected_matching,
    min_nonadjacent_matching_exact, omega_exact, DEFAULT_CM_LIMIT, DEFAULT_MINMATCH_LIMIT,
    DEFAULT_OMEGA_LIMIT,
};
use densematch::sampling::DEFAULT_MAX_ATTEMPTS;
use densematch::{extract_best, Error, ExtractOptions, Graph, Result};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "densematch",
    version,
    about = "Dense matchings in graphs with independence number at most 2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance in edge-list format.
    Gen(GenArgs),
    /// Extract a t-matching with few non-adjacent edge pairs.
    Extract(ExtractArgs),
    /// Run an exact oracle and print one JSON object.
    Oracle(OracleArgs),
    /// Run one experiment or a sweep and write CSV/JSON.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    TwoCliques,
    Rtf,
    C5,
    Complete,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Vertex count (two-cliques uses cliques of ceil(n/2)).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Part sizes of the blown-up 5-cycle.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Always sample, even when a connected matching of size t is at hand.
    #[arg(long)]
    no_shortcut: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u64,
    /// Output JSON file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Cm,
    Omega,
    Badquads,
    Minmatch,
    Lemma5,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long)]
    t: Option<usize>,
    /// Largest vertex count the exact search will accept.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config: one object, or an array for a sweep.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    graph_seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    no_shortcut: bool,
    #[arg(long)]
    max_attempts: Option<u64>,
    /// Record wall-clock milliseconds (output is then not byte-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Extract(a) => extract(a),
        Command::Oracle(a) => oracle(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parts_array(parts: &[usize]) -> Result<[usize; 5]> {
    parts
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("--parts needs 5 sizes, got {}", parts.len())))
}

fn family(
    name: FamilyName,
    n: Option<usize>,
    seed: u64,
    parts: Option<&[usize]>,
) -> Result<Family> {
    Ok(match name {
        FamilyName::Complete => Family::Complete { n },
        FamilyName::TwoCliques => Family::TwoCliques { n },
        FamilyName::Rtf => Family::Rtf { n, seed },
        FamilyName::C5 => {
            let parts = parts.ok_or_else(|| Error::InvalidInput("c5 needs --parts".into()))?;
            Family::C5 {
                parts: parts_array(parts)?,
            }
        }
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| context(path, e.into())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn context(path: &Path, e: Error) -> Error {
    Error::Context {
        context: path.display().to_string(),
        source: Box::new(e),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| context(path, e.into()))?;
    Graph::parse_edge_list(&text).map_err(|e| context(path, e))
}

fn to_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

fn gen(a: GenArgs) -> Result<ExitCode> {
    if a.n.is_none() && a.family != FamilyName::C5 {
        return Err(Error::InvalidInput(
            "--n is required for this family".into(),
        ));
    }
    let fam = family(a.family, a.n, a.seed, a.parts.as_deref())?;
    let g = fam.build(0)?;
    emit(a.out.as_deref(), &g.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}

fn extract(a: ExtractArgs) -> Result<ExitCode> {
    let g = load_graph(&a.graph)?;
    let opts = ExtractOptions {
        max_attempts: a.max_attempts,
        cm_shortcut: !a.no_shortcut,
        ..Default::default()
    };
    let out = extract_best(&g, a.c, a.t, a.trials, a.seed, &opts)?;
    emit(a.out.as_deref(), &to_pretty(&out)?)?;
    Ok(ExitCode::SUCCESS)
}

fn need_t(t: Option<usize>, op: &str) -> Result<usize> {
    t.ok_or_else(|| Error::InvalidInput(format!("--op {op} needs --t")))
}

fn oracle(a: OracleArgs) -> Result<ExitCode> {
    let g = load_graph(&a.graph)?;
    let value = match a.op {
        Op::Cm => {
            let limit = a.limit.unwrap_or(DEFAULT_CM_LIMIT);
            let cm = cm_exact(&g, limit)?;
            let witness = find_connected_matching(&g, cm, limit)?;
            json!({ "op": "cm", "n": g.n(), "cm": cm, "matching": witness })
        }
        Op::Omega => {
            let omega = omega_exact(&g, a.limit.unwrap_or(DEFAULT_OMEGA_LIMIT))?;
            json!({ "op": "omega", "n": g.n(), "omega": omega })
        }
        Op::Badquads => {
            let r = count_bad_quadruples(&g);
            json!({ "op": "badquads", "n": g.n(), "count": r.count, "b": r.b, "k": r.k, "bound": r.bound })
        }
        Op::Minmatch => {
            let t = need_t(a.t, "minmatch")?;
            let (m, count) =
                min_nonadjacent_matching_exact(&g, t, a.limit.unwrap_or(DEFAULT_MINMATCH_LIMIT))?;
            json!({ "op": "minmatch", "n": g.n(), "t": t, "nonadjacent_pairs": count, "matching": m })
        }
        Op::Lemma5 => {
            let t = need_t(a.t, "lemma5")?;
            let r = audit_report(
                &g,
                t,
                a.limit.unwrap_or(DEFAULT_CM_LIMIT),
                DEFAULT_OMEGA_LIMIT,
            )?;
            let mut v = serde_json::to_value(r).map_err(|e| Error::Io(e.to_string()))?;
            v["op"] = json!("lemma5");
            v
        }
    };
    emit(None, &value.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn apply_overrides(cfg: &mut ExperimentConfig, a: &ExperimentArgs) -> Result<()> {
    if let Some(name) = a.family {
        cfg.family = family(name, a.n, a.graph_seed.unwrap_or(0), a.parts.as_deref())?;
    } else {
        match &mut cfg.family {
            Family::Complete { n } | Family::TwoCliques { n } => *n = a.n.or(*n),
            Family::Rtf { n, seed } => {
                *n = a.n.or(*n);
                *seed = a.graph_seed.unwrap_or(*seed);
            }
            Family::C5 { parts } => {
                if let Some(p) = &a.parts {
                    *parts = parts_array(p)?;
                }
            }
        }
    }
    if let Some(c) = a.c {
        cfg.c = c;
    }
    if let Some(t) = a.t {
        cfg.t = t;
    }
    if let Some(trials) = a.trials {
        cfg.trials = trials;
    }
    if let Some(seed) = a.seed {
        cfg.master_seed = seed;
    }
    if a.no_shortcut {
        cfg.cm_shortcut = false;
    }
    if let Some(m) = a.max_attempts {
        cfg.max_attempts = m;
    }
    if a.timing {
        cfg.timing = true;
    }
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<ExitCode> {
    let mut grid = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| context(path, e.into()))?;
            parse_configs(&text).map_err(|e| context(path, e))?
        }
        None => {
            let name = a.family.ok_or_else(|| {
                Error::InvalidInput("give --config or --family, --c and --t".into())
            })?;
            let c =
                a.c.ok_or_else(|| Error::InvalidInput("--c is required".into()))?;
            let t =
                a.t.ok_or_else(|| Error::InvalidInput("--t is required".into()))?;
            let fam = family(name, a.n, a.graph_seed.unwrap_or(0), a.parts.as_deref())?;
            vec![ExperimentConfig::new(fam, c, t, 100, 0)]
        }
    };
    for cfg in &mut grid {
        apply_overrides(cfg, &a)?;
    }
    let outcomes = sweep(&grid)?;
    let csv = to_csv(&outcomes)?;
    match &a.out_csv {
        Some(path) => fs::write(path, &csv).map_err(|e| context(path, e.into()))?,
        None if a.out_json.is_none() => emit(None, &csv)?,
        None => {}
    }
    if let Some(path) = &a.out_json {
        fs::write(path, to_json(&outcomes)?).map_err(|e| context(path, e.into()))?;
    }
    let errors = outcomes.iter().filter(|o| o.is_error()).count();
    if errors > 0 {
        eprintln!("{errors} of {} configurations failed", outcomes.len());
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
