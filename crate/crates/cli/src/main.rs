//! dhg: command-line surface for the directed-hypergraph toolkit. Every
//! subcommand prints one JSON report to stdout; progress and warnings go to
//! stderr. Exit codes: 0 success, 1 domain error, 2 usage error.

mod format;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dhg_core::constructions::{
    escher_h1, escher_h2, formula, r3_construction, r4_construction, theorem2_maximizer,
    transitive_tournament, ttk_lower_construction, FormulaId,
};
use dhg_core::embed::{contains, count_copies, count_embeddings};
use dhg_core::graph::DirectedHypergraph;
use dhg_core::normalize::{link_partition, normalize};
use dhg_core::patterns::{is_degenerate, pattern, Pattern, PatternName};
use dhg_core::search::{
    census_opt, decide_conjecture_tt4_opt, max_edges_opt, Progress, ProgressSink, SearchMode,
    SearchOptions,
};

use format::{parse_graph_file, write_graph_file};
use report::{elapsed_value, graph_value, search_stats_value};

#[derive(Parser)]
#[command(name = "dhg", version, about = "Turán-type search and constructions for 2->1 directed hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Oriented,
    Standard,
}

impl ModeArg {
    fn to_mode(self) -> SearchMode {
        match self {
            ModeArg::Oriented => SearchMode::Oriented,
            ModeArg::Standard => SearchMode::Standard,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            ModeArg::Oriented => "oriented",
            ModeArg::Standard => "standard",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    R4,
    R3,
    Tt,
    H1,
    H2,
    Ttk,
}

#[derive(Subcommand)]
enum Command {
    /// Write an extremal construction to a graph file.
    Gen {
        construction: ConstructionArg,
        #[arg(long)]
        n: usize,
        /// Tail-side size for r4 (defaults to the optimizing value).
        #[arg(long)]
        t: Option<usize>,
        /// Side size for r3 (defaults to the optimizing value).
        #[arg(long)]
        a: Option<usize>,
        /// Clique size for ttk (required there, rejected elsewhere).
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Test a graph file for freeness from one or more patterns.
    Check {
        file: PathBuf,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
    },
    /// Count embeddings and copies of a pattern in a graph file.
    Count {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Dump link graphs and link partitions.
    Links {
        file: PathBuf,
        /// Restrict to one vertex (default: all).
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Decide degeneracy and exhibit a partition when one exists.
    Degenerate { file: PathBuf },
    /// Exact maximum edge count over family-free graphs.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
        #[arg(long)]
        mode: ModeArg,
        /// Graph file whose edge count seeds the incumbent.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// All family-free graphs with a given edge count, up to isomorphism.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
        #[arg(long)]
        mode: ModeArg,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Run the E-free normalization procedure on a graph file.
    Normalize {
        file: PathBuf,
        /// Include the per-step log in the report.
        #[arg(long)]
        log: bool,
        /// Write the normalized graph to a file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the endpoint-maximizer function f(b) and its argmax.
    Maximizer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u64,
    },
    /// Closed-form extremal values over a range of n.
    Formulas {
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Also tabulate TTK_LOWER for this k (null where undefined).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compare the exact TT4 search against the conjectured closed form.
    ConjectureTt4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        force: bool,
    },
}

enum AppError {
    Usage(String),
    Domain(anyhow::Error),
}

impl<E: std::error::Error + Send + Sync + 'static> From<E> for AppError {
    fn from(e: E) -> Self {
        AppError::Domain(anyhow::Error::new(e))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Domain(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<DirectedHypergraph, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Domain(anyhow!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph_file(&text)?)
}

/// Catalog name first; falling back to reading the string as a file path.
fn resolve_pattern(arg: &str) -> Result<Pattern, AppError> {
    if let Ok(name) = arg.parse::<PatternName>() {
        return Ok(pattern(name)?);
    }
    let path = Path::new(arg);
    if path.exists() {
        let g = read_graph(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string());
        return Ok(Pattern::from_graph(label, g)?);
    }
    Err(AppError::Domain(anyhow!(
        "unknown pattern {arg:?}: not a catalog name (R3, R4, E, TT4-, TT4, TT:k, DOUBLE) and no such file"
    )))
}

fn resolve_patterns(args: &[String]) -> Result<Vec<Pattern>, AppError> {
    args.iter().map(|s| resolve_pattern(s)).collect()
}

fn effective_jobs(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("DHG_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1))
}

fn warn_on_force(force: bool) {
    if force {
        eprintln!("warning: --force lifts the built-in size budgets; large n may run effectively forever");
    }
}

struct StderrProgress;

impl ProgressSink for StderrProgress {
    fn report(&self, p: Progress) {
        eprintln!("progress: nodes={} incumbent={} depth={}", p.nodes, p.incumbent, p.depth);
    }
}

fn ms(since: Instant) -> u64 {
    since.elapsed().as_millis() as u64
}

fn run(command: Command) -> Result<(), AppError> {
    let start = Instant::now();
    match command {
        Command::Gen { construction, n, t, a, k, output } => {
            let reject = |flag: Option<usize>, name: &str, target: &str| {
                if flag.is_some() {
                    Err(AppError::Usage(format!("--{name} only applies to {target}")))
                } else {
                    Ok(())
                }
            };
            let (name, g) = match construction {
                ConstructionArg::R4 => {
                    reject(a, "a", "r3")?;
                    reject(k, "k", "ttk")?;
                    ("r4", r4_construction(n, t)?)
                }
                ConstructionArg::R3 => {
                    reject(t, "t", "r4")?;
                    reject(k, "k", "ttk")?;
                    ("r3", r3_construction(n, a)?)
                }
                ConstructionArg::Tt => {
                    reject(t, "t", "r4")?;
                    reject(a, "a", "r3")?;
                    reject(k, "k", "ttk")?;
                    ("tt", transitive_tournament(n))
                }
                ConstructionArg::H1 => {
                    reject(t, "t", "r4")?;
                    reject(a, "a", "r3")?;
                    reject(k, "k", "ttk")?;
                    ("h1", escher_h1(n)?)
                }
                ConstructionArg::H2 => {
                    reject(t, "t", "r4")?;
                    reject(a, "a", "r3")?;
                    reject(k, "k", "ttk")?;
                    ("h2", escher_h2(n)?)
                }
                ConstructionArg::Ttk => {
                    reject(t, "t", "r4")?;
                    reject(a, "a", "r3")?;
                    let k = k.ok_or_else(|| AppError::Usage("ttk requires --k".to_string()))?;
                    ("ttk", ttk_lower_construction(n, k)?)
                }
            };
            if let Some(path) = &output {
                fs::write(path, write_graph_file(&g))
                    .map_err(|e| AppError::Domain(anyhow!("cannot write {}: {e}", path.display())))?;
            }
            report::print(
                "gen",
                json!({
                    "construction": name,
                    "n": n,
                    "t": t,
                    "a": a,
                    "k": k,
                    "output": output.as_ref().map(|p| p.display().to_string()),
                }),
                json!({
                    "graph": graph_value(&g),
                    "written": output.map(|p| p.display().to_string()),
                }),
                elapsed_value(ms(start)),
            );
        }
        Command::Check { file, patterns } => {
            let g = read_graph(&file)?;
            let resolved = resolve_patterns(&patterns)?;
            let per_pattern: Vec<Value> = resolved
                .iter()
                .map(|p| json!({ "pattern": p.name(), "contains": contains(&g, p) }))
                .collect();
            let free = resolved.iter().all(|p| !contains(&g, p));
            report::print(
                "check",
                json!({ "file": file.display().to_string(), "patterns": patterns, "n": g.n() }),
                json!({ "free": free, "per_pattern": per_pattern }),
                elapsed_value(ms(start)),
            );
        }
        Command::Count { file, pattern } => {
            let g = read_graph(&file)?;
            let p = resolve_pattern(&pattern)?;
            let embeddings = count_embeddings(&g, &p);
            let copies = count_copies(&g, &p);
            report::print(
                "count",
                json!({ "file": file.display().to_string(), "pattern": pattern, "n": g.n() }),
                json!({
                    "pattern": p.name(),
                    "embeddings": embeddings,
                    "copies": copies,
                    "automorphisms": p.automorphism_count(),
                }),
                elapsed_value(ms(start)),
            );
        }
        Command::Links { file, vertex } => {
            let g = read_graph(&file)?;
            let vertices: Vec<usize> = match vertex {
                Some(x) => vec![x],
                None => (0..g.n()).collect(),
            };
            let mut links = Vec::new();
            for x in vertices {
                let bundle = g.link_graphs(x)?;
                let part = link_partition(&g, x)?;
                links.push(json!({
                    "vertex": x,
                    "tail_link": bundle.tail_link,
                    "directed_link": bundle.directed_link,
                    "tail_degree": bundle.tail_degree(),
                    "partition": { "u": part.u, "c": part.c, "m": part.m },
                }));
            }
            report::print(
                "links",
                json!({ "file": file.display().to_string(), "vertex": vertex, "n": g.n() }),
                json!({ "links": links }),
                elapsed_value(ms(start)),
            );
        }
        Command::Degenerate { file } => {
            let g = read_graph(&file)?;
            let partition = is_degenerate(&g)?;
            report::print(
                "degenerate",
                json!({ "file": file.display().to_string(), "n": g.n() }),
                json!({
                    "degenerate": partition.is_some(),
                    "partition": partition.map(|p| json!({ "t1": p.t1, "t2": p.t2, "k": p.k })),
                }),
                elapsed_value(ms(start)),
            );
        }
        Command::Extremal { n, patterns, mode, seed, jobs, force } => {
            warn_on_force(force);
            let family = resolve_patterns(&patterns)?;
            let seed_graph = seed.as_ref().map(|p| read_graph(p)).transpose()?;
            let jobs = effective_jobs(jobs);
            let options = SearchOptions { jobs, force };
            let result = max_edges_opt(
                n,
                &family,
                mode.to_mode(),
                seed_graph.as_ref(),
                &options,
                Some(&StderrProgress),
            )?;
            report::print(
                "extremal",
                json!({
                    "n": n,
                    "patterns": patterns,
                    "mode": mode.as_str(),
                    "seed": seed.map(|p| p.display().to_string()),
                    "jobs": jobs,
                    "force": force,
                }),
                json!({ "value": result.value, "witness": graph_value(&result.witness) }),
                search_stats_value(&result.stats, jobs, ms(start)),
            );
        }
        Command::Census { n, patterns, mode, target, jobs, force } => {
            warn_on_force(force);
            let family = resolve_patterns(&patterns)?;
            let jobs = effective_jobs(jobs);
            let options = SearchOptions { jobs, force };
            let census =
                census_opt(n, &family, mode.to_mode(), target, &options, Some(&StderrProgress))?;
            let classes: Vec<Value> = census
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "code": c.code.to_hex(),
                        "representative": graph_value(&c.representative),
                    })
                })
                .collect();
            report::print(
                "census",
                json!({
                    "n": n,
                    "patterns": patterns,
                    "mode": mode.as_str(),
                    "target": target,
                    "jobs": jobs,
                    "force": force,
                }),
                json!({ "target": census.target, "class_count": classes.len(), "classes": classes }),
                search_stats_value(&census.stats, jobs, ms(start)),
            );
        }
        Command::Normalize { file, log, output } => {
            let g = read_graph(&file)?;
            let state = normalize(&g)?;
            if let Some(path) = &output {
                fs::write(path, write_graph_file(&state.graph))
                    .map_err(|e| AppError::Domain(anyhow!("cannot write {}: {e}", path.display())))?;
            }
            let steps: Option<Vec<Value>> = log.then(|| {
                state
                    .log
                    .iter()
                    .map(|step| {
                        let added: Vec<[usize; 3]> =
                            step.added.iter().map(|e| [e.lo(), e.hi(), e.head()]).collect();
                        let removed: Vec<[usize; 3]> =
                            step.removed.iter().map(|e| [e.lo(), e.hi(), e.head()]).collect();
                        json!({ "vertex": step.x, "added": added, "removed": removed })
                    })
                    .collect()
            });
            report::print(
                "normalize",
                json!({
                    "file": file.display().to_string(),
                    "log": log,
                    "output": output.as_ref().map(|p| p.display().to_string()),
                }),
                json!({
                    "graph": graph_value(&state.graph),
                    "edges_before": g.edge_count(),
                    "edges_after": state.graph.edge_count(),
                    "d": state.d,
                    "r": state.r,
                    "t": state.t,
                    "steps": state.log.len(),
                    "log": steps,
                    "written": output.map(|p| p.display().to_string()),
                }),
                elapsed_value(ms(start)),
            );
        }
        Command::Maximizer { n, c } => {
            let table = theorem2_maximizer(n, c);
            report::print(
                "maximizer",
                json!({ "n": n, "c": c }),
                json!({
                    "values": table.values,
                    "argmax": table.argmax,
                    "max_value": table.max_value(),
                    "theorem_c": table.theorem_c,
                }),
                elapsed_value(ms(start)),
            );
        }
        Command::Formulas { from, to, k } => {
            if from > to {
                return Err(AppError::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let mut rows = Vec::new();
            for n in from..=to {
                let mut row = serde_json::Map::new();
                row.insert("n".to_string(), json!(n));
                for id in [
                    FormulaId::R4Extremal,
                    FormulaId::R3Extremal,
                    FormulaId::EStandard,
                    FormulaId::EOriented,
                    FormulaId::Tt4Minus,
                ] {
                    row.insert(id.to_string(), json!(formula(id, n, None).expect("total")));
                }
                if let Some(k) = k {
                    row.insert(
                        FormulaId::TtkLower.to_string(),
                        json!(formula(FormulaId::TtkLower, n, Some(k)).ok()),
                    );
                }
                rows.push(Value::Object(row));
            }
            report::print(
                "formulas",
                json!({ "from": from, "to": to, "k": k }),
                json!({ "rows": rows }),
                elapsed_value(ms(start)),
            );
        }
        Command::ConjectureTt4 { n, jobs, force } => {
            warn_on_force(force);
            let jobs = effective_jobs(jobs);
            let options = SearchOptions { jobs, force };
            let report_out = decide_conjecture_tt4_opt(n, &options, Some(&StderrProgress))?;
            report::print(
                "conjecture-tt4",
                json!({ "n": n, "jobs": jobs, "force": force }),
                json!({
                    "n": report_out.n,
                    "search_value": report_out.search_value,
                    "conjecture_value": report_out.conjecture_value,
                    "verdict": report_out.verdict.to_string(),
                    "witness": graph_value(&report_out.witness),
                }),
                search_stats_value(&report_out.stats, jobs, ms(start)),
            );
        }
    }
    Ok(())
}
