//! Command-line front end: JSON reports over the library's analyses.
//!
//! Exit codes: 0 = completed with no counterexample, 1 = usage or input
//! error, 2 = counterexample / lemma-falsifying finding (certificate
//! emitted on stdout).

use clap::{Args, Parser, Subcommand, ValueEnum};
use critlab::chroma::{self, Coloring};
use critlab::criticality::{self, CriticalityError};
use critlab::graph::Graph;
use critlab::harness::{self, InputMode, PruneRule, SearchConfig, SCHEMA};
use critlab::kempe;
use critlab::lemmas::{self, LemmaId};
use serde::Serialize;
use serde_json::json;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "critlab", version, about = "Critical-graph laboratory: exact coloring, criticality certification, Kempe chains, lemma checks, and counterexample search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact invariants (χ, ω, α, claw-freeness) plus the full criticality
    /// verdict for one graph6 line or every line of a file
    Analyze {
        /// graph6 string, or path to a file with one graph6 line per graph
        input: String,
        /// Clique order for the criticality check
        #[arg(long, default_value_t = 2)]
        l: usize,
    },
    /// Peel removable vertices and emit a K_l-critical subgraph of equal χ
    ExtractCritical {
        graph6: String,
        #[arg(long)]
        l: usize,
    },
    /// Kempe-chain operations
    Kempe {
        #[command(subcommand)]
        op: KempeOp,
    },
    /// Run lemma predicates over one graph or a graph6 corpus file
    CheckLemmas {
        /// graph6 string, or path to a corpus file
        input: String,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// "all" or a comma-separated list of lemma ids (e.g. L-DEG,L-FORCE)
        #[arg(long, default_value = "all")]
        lemmas: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Isomorph-free counterexample search over all small graphs
    Search(SearchArgs),
}

#[derive(Subcommand)]
enum KempeOp {
    /// Find a path x → y through G−L with prescribed interior colors
    Path {
        graph6: String,
        /// Clique order; L is the first K_l containing both endpoints
        #[arg(long)]
        l: usize,
        /// Comma-separated interior color sequence (may be empty)
        #[arg(long, default_value = "")]
        seq: String,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    l: usize,
    /// Largest vertex count to enumerate (internal mode caps at 10)
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Restrict the search to claw-free graphs
    #[arg(long)]
    claw_free: bool,
    /// Worker threads; the CRITLAB_WORKERS env var overrides this flag
    #[arg(long)]
    workers: Option<usize>,
    /// Read graph6 lines from stdin instead of enumerating internally
    #[arg(long)]
    stream: bool,
    #[arg(long)]
    chi_min: Option<usize>,
    #[arg(long)]
    chi_max: Option<usize>,
    /// Comma-separated prune rules (connectivity, L-DEG-mindeg, omega-lt-n);
    /// defaults to all
    #[arg(long)]
    prune: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version are not usage errors.
            return if err.use_stderr() {
                eprint!("{err}");
                ExitCode::from(1)
            } else {
                print!("{err}");
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze { input, l } => analyze(&input, l),
        Command::ExtractCritical { graph6, l } => extract_critical(&graph6, l),
        Command::Kempe { op: KempeOp::Path { graph6, l, seq, x, y } } => {
            kempe_path(&graph6, l, &parse_seq(&seq)?, x, y)
        }
        Command::CheckLemmas { input, l, lemmas, format } => {
            check_lemmas(&input, l, &lemmas, format)
        }
        Command::Search(args) => search(args),
    }
}

/// Interpret the argument as a file path when one exists, otherwise as a
/// graph6 literal.
fn load_graphs(input: &str) -> Result<Vec<(String, Graph)>, String> {
    let lines: Vec<String> = if std::path::Path::new(input).is_file() {
        std::fs::read_to_string(input)
            .map_err(|e| format!("cannot read {input}: {e}"))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect()
    } else {
        vec![input.trim().to_string()]
    };
    lines
        .into_iter()
        .enumerate()
        .map(|(i, line)| {
            Graph::from_graph6(&line)
                .map(|g| (line.clone(), g))
                .map_err(|e| format!("line {}: {e}", i + 1))
        })
        .collect()
}

#[derive(Serialize)]
struct AnalyzeEntry {
    graph6: String,
    n: usize,
    edges: usize,
    chi: usize,
    omega: usize,
    alpha: usize,
    claw_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    claw: Option<[usize; 4]>,
    chi_witness: Coloring,
    criticality: criticality::CriticalityReport,
}

fn analyze(input: &str, l: usize) -> Result<ExitCode, String> {
    if l < 2 {
        return Err("--l must be at least 2".into());
    }
    let mut results = Vec::new();
    for (g6, g) in load_graphs(input)? {
        let cert = chroma::chromatic_number(&g);
        let claw = g.find_claw();
        results.push(AnalyzeEntry {
            graph6: g6,
            n: g.n(),
            edges: g.edge_count(),
            chi: cert.chi,
            omega: g.clique_number(),
            alpha: g.independence_number(),
            claw_free: claw.is_none(),
            claw,
            chi_witness: cert.witness_coloring,
            criticality: criticality::is_kl_critical(&g, l),
        });
    }
    emit(&json!({ "schema": SCHEMA, "results": results }));
    Ok(ExitCode::SUCCESS)
}

fn extract_critical(graph6: &str, l: usize) -> Result<ExitCode, String> {
    let g = Graph::from_graph6(graph6).map_err(|e| e.to_string())?;
    match criticality::extract_critical_subgraph(&g, l) {
        Ok(core) => {
            let report = criticality::is_kl_critical(&core, l);
            emit(&json!({
                "schema": SCHEMA,
                "input": { "graph6": graph6, "n": g.n(), "chi": chroma::chi(&g) },
                "extracted": { "graph6": core.to_graph6(), "n": core.n(), "report": report },
            }));
            Ok(ExitCode::SUCCESS)
        }
        Err(CriticalityError::LemmaFalsified { l, graph6, report }) => {
            // Mathematically significant: emit the certificate, signal via
            // the counterexample exit code.
            emit(&json!({
                "schema": SCHEMA,
                "finding": "extraction produced a non-critical remainder (lemma falsified)",
                "l": l,
                "graph6": graph6,
                "report": report,
            }));
            Ok(ExitCode::from(2))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn parse_seq(spec: &str) -> Result<Vec<usize>, String> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("bad color {s:?} in --seq")))
        .collect()
}

fn kempe_path(graph6: &str, l: usize, seq: &[usize], x: usize, y: usize) -> Result<ExitCode, String> {
    let g = Graph::from_graph6(graph6).map_err(|e| e.to_string())?;
    let clique = g
        .enumerate_cliques(l)
        .find(|c| c.contains(x) && c.contains(y))
        .ok_or_else(|| format!("no K_{l} containing vertices {x} and {y}"))?;
    let chi = chroma::chi(&g);
    if chi < l {
        return Err(format!("chromatic number {chi} is below l = {l}"));
    }
    let palette = chi - l;
    let (rest, map) = g.delete_vertices(clique);
    let sub_coloring = chroma::is_k_colorable(&rest, palette)
        .ok_or_else(|| format!("G - L is not {palette}-colorable; is the graph K_{l}-critical?"))?;
    let mut phi = Coloring::new(palette.max(1), g.n());
    for v in 0..rest.n() {
        phi.set(map.old_index(v), sub_coloring.color(v).expect("total"));
    }
    let path = kempe::find_prescribed_path(&g, clique, &phi, seq, x, y)
        .map_err(|e| e.to_string())?;
    // Absence on a certified critical graph would falsify the path lemma.
    let lemma_finding =
        path.is_none() && criticality::is_kl_critical(&g, l).is_critical;
    emit(&json!({
        "schema": SCHEMA,
        "graph6": graph6,
        "l": l,
        "clique": clique,
        "coloring": phi,
        "seq": seq,
        "x": x,
        "y": y,
        "found": path.is_some(),
        "path": path,
        "lemma_finding": lemma_finding,
    }));
    if lemma_finding {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn parse_lemma_ids(spec: &str) -> Result<Vec<LemmaId>, String> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(LemmaId::ALL.to_vec());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<LemmaId>())
        .collect()
}

fn check_lemmas(input: &str, l: usize, lemma_spec: &str, format: Format) -> Result<ExitCode, String> {
    if l < 2 {
        return Err("--l must be at least 2".into());
    }
    let ids = parse_lemma_ids(lemma_spec)?;
    let graphs = load_graphs(input)?;
    if graphs.len() == 1 {
        let (g6, g) = &graphs[0];
        let verdicts = lemmas::check_lemmas(g, l, &ids);
        match format {
            Format::Json => emit(&json!({
                "schema": SCHEMA,
                "graph6": g6,
                "l": l,
                "verdicts": verdicts,
            })),
            Format::Text => {
                println!("{:<12} {:<11} {:<6} note", "lemma", "applicable", "pass");
                for v in &verdicts {
                    println!(
                        "{:<12} {:<11} {:<6} {}",
                        v.lemma_id.as_str(),
                        v.applicable,
                        v.pass,
                        v.vacuous_reason.as_deref().unwrap_or_default()
                    );
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut cfg = SearchConfig::new(l, l.max(2));
    cfg.workers = workers_from_env(None);
    let report = harness::run_lemma_sweep_on(&cfg, &ids, graphs.into_iter().map(|(_, g)| g))
        .map_err(|e| e.to_string())?;
    match format {
        Format::Json => emit(&serde_json::to_value(&report).expect("report serializes")),
        Format::Text => {
            println!("graphs checked: {}", report.graphs_checked);
            println!(
                "{:<12} {:>10} {:>8} {:>8} {:>8}",
                "lemma", "applicable", "vacuous", "passed", "failed"
            );
            for (id, agg) in &report.per_lemma {
                println!(
                    "{:<12} {:>10} {:>8} {:>8} {:>8}",
                    id, agg.applicable, agg.vacuous, agg.passed, agg.failed
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn workers_from_env(flag: Option<usize>) -> usize {
    // Per the interface contract the env var wins over the flag.
    if let Ok(value) = std::env::var("CRITLAB_WORKERS") {
        if let Ok(parsed) = value.parse::<usize>() {
            if parsed >= 1 {
                return parsed;
            }
        }
    }
    flag.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
    })
}

fn search(args: SearchArgs) -> Result<ExitCode, String> {
    let prune_rules = match &args.prune {
        None => PruneRule::ALL.to_vec(),
        Some(spec) => spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<PruneRule>())
            .collect::<Result<Vec<_>, _>>()?,
    };
    let cfg = SearchConfig {
        l: args.l,
        n_max: args.n_max,
        require_claw_free: args.claw_free,
        chi_min: args.chi_min,
        chi_max: args.chi_max,
        prune_rules,
        workers: workers_from_env(args.workers),
        input_mode: if args.stream {
            InputMode::Graph6Stream
        } else {
            InputMode::InternalEnumeration
        },
    };
    let report = if args.stream {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
        let graphs = harness::parse_graph6_lines(text.lines()).map_err(|e| e.to_string())?;
        harness::search_on(&cfg, graphs.into_iter())
    } else {
        harness::search_counterexamples(&cfg)
    }
    .map_err(|e| e.to_string())?;
    let found = !report.counterexamples.is_empty();
    emit(&serde_json::to_value(&report).expect("report serializes"));
    if found {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}
