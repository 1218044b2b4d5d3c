//! Counterexample search, lemma sweeps, and report assembly.
//!
//! Graphs come either from the internal isomorph-free enumeration (orders
//! up to 10) or from a graph6 line stream. Work is sharded into fixed-size
//! batches pulled by a worker pool; each worker owns its solver state and
//! the per-worker tallies merge associatively, so reports are independent
//! of the worker count (lists are sorted canonically before emission).

pub mod enumerate;

pub use enumerate::{canonical_form, enumerate_graphs, enumerate_up_to, EnumerationError};

use crate::criticality::{self, CriticalityReport};
use crate::graph::{Graph, Graph6Error};
use crate::lemmas::{self, LemmaId, LemmaVerdict};
use crate::{chroma, graph};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

/// Version tag carried by every JSON report.
pub const SCHEMA: &str = "critlab/1";

const BATCH_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("graph6 parse error on line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("internal error: counterexample {graph6} failed end-to-end re-verification")]
    ReverifyFailed { graph6: String },
}

/// Admissible pruning rules: each is a necessary condition for
/// K_l-criticality, so pruned graphs cannot be counterexamples.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PruneRule {
    /// Critical graphs are connected.
    Connectivity,
    /// Critical graphs have min degree ≥ χ-1 ≥ ω-1.
    MinDegree,
    /// ω = n means complete: trivially critical when n ≥ l, tallied
    /// separately instead of run through the full check.
    OmegaLtN,
}

impl PruneRule {
    pub const ALL: [PruneRule; 3] =
        [PruneRule::Connectivity, PruneRule::MinDegree, PruneRule::OmegaLtN];

    pub fn as_str(self) -> &'static str {
        match self {
            PruneRule::Connectivity => "connectivity",
            PruneRule::MinDegree => "L-DEG-mindeg",
            PruneRule::OmegaLtN => "omega-lt-n",
        }
    }
}

impl fmt::Display for PruneRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PruneRule {
    type Err = String;
    fn from_str(s: &str) -> Result<PruneRule, String> {
        PruneRule::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown prune rule {s:?} (admissible: connectivity, L-DEG-mindeg, omega-lt-n)"))
    }
}

impl Serialize for PruneRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub l: usize,
    pub n_max: usize,
    pub require_claw_free: bool,
    pub chi_min: Option<usize>,
    pub chi_max: Option<usize>,
    pub prune_rules: Vec<PruneRule>,
    pub workers: usize,
    pub input_mode: InputMode,
}

/// Where the graphs come from; echoed into reports.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InputMode {
    #[serde(rename = "internal-enumeration")]
    InternalEnumeration,
    #[serde(rename = "graph6-stream")]
    Graph6Stream,
}

impl SearchConfig {
    /// All pruning on, single worker. The paper reports no computational
    /// experiments, so the default sweep range n_max = 9 is an artifact
    /// choice; it is tunable from the CLI.
    pub fn new(l: usize, n_max: usize) -> SearchConfig {
        SearchConfig {
            l,
            n_max,
            require_claw_free: false,
            chi_min: None,
            chi_max: None,
            prune_rules: PruneRule::ALL.to_vec(),
            workers: 1,
            input_mode: InputMode::InternalEnumeration,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.l < 2 {
            return Err(HarnessError::Config(format!("l must be at least 2, got {}", self.l)));
        }
        if self.n_max < self.l {
            return Err(HarnessError::Config(format!(
                "n_max {} is below l {}",
                self.n_max, self.l
            )));
        }
        if self.n_max > graph::MAX_VERTICES {
            return Err(HarnessError::Config(format!(
                "n_max {} exceeds the {}-vertex limit",
                self.n_max,
                graph::MAX_VERTICES
            )));
        }
        if self.workers == 0 {
            return Err(HarnessError::Config("worker count must be positive".into()));
        }
        if let (Some(lo), Some(hi)) = (self.chi_min, self.chi_max) {
            if lo > hi {
                return Err(HarnessError::Config(format!("chi window {lo}..{hi} is empty")));
            }
        }
        Ok(())
    }

    fn rule(&self, r: PruneRule) -> bool {
        self.prune_rules.contains(&r)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Counterexample {
    pub graph6: String,
    pub report: CriticalityReport,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CriticalsFound {
    pub count: u64,
    pub all_complete: bool,
}

/// Self-audit results: a deterministic sample of pruned graphs is re-run
/// through the full check (they must be non-critical), and a sample of
/// skipped complete graphs likewise (they must be critical).
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AuditSummary {
    pub pruned_samples_rechecked: u64,
    pub pruned_admissible: bool,
    pub complete_samples_rechecked: u64,
    pub complete_verified: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub schema: &'static str,
    pub config: SearchConfig,
    pub graphs_scanned: u64,
    pub pruned_by_rule: BTreeMap<String, u64>,
    pub expected_complete_criticals: u64,
    pub criticals_found: CriticalsFound,
    pub counterexamples: Vec<Counterexample>,
    pub audit: AuditSummary,
    pub wall_time_ms: u128,
}

#[derive(Default)]
struct Tally {
    scanned: u64,
    pruned: BTreeMap<String, u64>,
    expected_complete: u64,
    criticals: u64,
    counterexamples: Vec<Counterexample>,
    pruned_rechecked: u64,
    complete_rechecked: u64,
    prune_violations: Vec<String>,
    complete_violations: Vec<String>,
}

impl Tally {
    fn bump(&mut self, key: &str) {
        *self.pruned.entry(key.to_string()).or_insert(0) += 1;
    }

    fn merge(&mut self, other: Tally) {
        self.scanned += other.scanned;
        for (k, v) in other.pruned {
            *self.pruned.entry(k).or_insert(0) += v;
        }
        self.expected_complete += other.expected_complete;
        self.criticals += other.criticals;
        self.counterexamples.extend(other.counterexamples);
        self.pruned_rechecked += other.pruned_rechecked;
        self.complete_rechecked += other.complete_rechecked;
        self.prune_violations.extend(other.prune_violations);
        self.complete_violations.extend(other.complete_violations);
    }
}

/// Stable string hash for deterministic audit sampling (independent of
/// worker count and process).
fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn audit_pruned(g: &Graph, l: usize, rule: PruneRule, tally: &mut Tally) {
    // 1% deterministic sample: a pruned graph must fail the necessary
    // condition its rule relies on, and must not be critical at all.
    let g6 = g.to_graph6();
    if !fnv1a(&g6).is_multiple_of(100) {
        return;
    }
    tally.pruned_rechecked += 1;
    let report = criticality::is_kl_critical(g, l);
    let admissible = match rule {
        // Both rules imply the graph is not even vertex-critical.
        PruneRule::Connectivity | PruneRule::MinDegree => !report.vertex_critical,
        // Used as a prune only for completes below order l: no K_l exists.
        PruneRule::OmegaLtN => !report.has_clique,
    };
    if !admissible || report.is_critical {
        tally.prune_violations.push(format!("graph {g6} pruned by {rule} inadmissibly"));
    }
}

fn audit_complete(g: &Graph, l: usize, tally: &mut Tally) {
    // 1-in-1000 deterministic sample: a tallied complete graph must pass
    // the full definition.
    let g6 = g.to_graph6();
    if !fnv1a(&g6).is_multiple_of(1000) {
        return;
    }
    tally.complete_rechecked += 1;
    if !criticality::is_kl_critical(g, l).is_critical {
        tally.complete_violations.push(format!("complete graph {g6} failed the full check"));
    }
}

fn process_graph(g: &Graph, cfg: &SearchConfig, tally: &mut Tally) {
    tally.scanned += 1;
    if cfg.require_claw_free && !g.is_claw_free() {
        tally.bump("not-claw-free");
        return;
    }
    if cfg.rule(PruneRule::Connectivity) && !g.is_connected() {
        tally.bump(PruneRule::Connectivity.as_str());
        audit_pruned(g, cfg.l, PruneRule::Connectivity, tally);
        return;
    }
    let omega = g.clique_number();
    if cfg.rule(PruneRule::OmegaLtN) && omega == g.n() {
        if g.n() >= cfg.l {
            tally.expected_complete += 1;
            tally.criticals += 1;
            audit_complete(g, cfg.l, tally);
        } else {
            // Complete but below l: no K_l, so trivially non-critical.
            tally.bump(PruneRule::OmegaLtN.as_str());
            audit_pruned(g, cfg.l, PruneRule::OmegaLtN, tally);
        }
        return;
    }
    if cfg.rule(PruneRule::MinDegree) && g.min_degree() + 1 < omega {
        tally.bump(PruneRule::MinDegree.as_str());
        audit_pruned(g, cfg.l, PruneRule::MinDegree, tally);
        return;
    }
    if cfg.chi_min.is_some() || cfg.chi_max.is_some() {
        let chi = chroma::chi(g);
        if cfg.chi_min.is_some_and(|lo| chi < lo) || cfg.chi_max.is_some_and(|hi| chi > hi) {
            tally.bump("chi-window");
            return;
        }
    }
    let report = criticality::is_kl_critical(g, cfg.l);
    if report.is_critical {
        tally.criticals += 1;
        if !g.is_complete() {
            tally.counterexamples.push(Counterexample { graph6: g.to_graph6(), report });
        }
    }
}

/// Pull-based worker pool: workers take fixed-size batches from the shared
/// stream and fold into private state; states merge at the end.
fn parallel_scan<I, S, F>(workers: usize, graphs: I, process: F) -> Vec<S>
where
    I: Iterator<Item = Graph> + Send,
    S: Default + Send,
    F: Fn(&Graph, &mut S) + Sync,
{
    if workers <= 1 {
        let mut state = S::default();
        for g in graphs {
            process(&g, &mut state);
        }
        return vec![state];
    }
    let shared = Mutex::new(graphs);
    let states = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local = S::default();
                loop {
                    let batch: Vec<Graph> = {
                        let mut stream = shared.lock().expect("stream lock");
                        stream.by_ref().take(BATCH_SIZE).collect()
                    };
                    if batch.is_empty() {
                        break;
                    }
                    for g in &batch {
                        process(g, &mut local);
                    }
                }
                states.lock().expect("state lock").push(local);
            });
        }
    });
    states.into_inner().expect("pool finished")
}

fn finalize(cfg: &SearchConfig, mut tally: Tally, start: Instant) -> Result<SearchReport, HarnessError> {
    tally
        .counterexamples
        .sort_by(|a, b| (a.graph6.len(), &a.graph6).cmp(&(b.graph6.len(), &b.graph6)));
    tally.prune_violations.sort();
    tally.complete_violations.sort();
    // End-to-end re-verification of every counterexample certificate.
    for ce in &tally.counterexamples {
        let g = Graph::from_graph6(&ce.graph6)
            .map_err(|_| HarnessError::ReverifyFailed { graph6: ce.graph6.clone() })?;
        let fresh = criticality::is_kl_critical(&g, cfg.l);
        if !fresh.is_critical || fresh != ce.report || g.is_complete() {
            return Err(HarnessError::ReverifyFailed { graph6: ce.graph6.clone() });
        }
    }
    let all_complete = tally.counterexamples.is_empty();
    let pruned_admissible = tally.prune_violations.is_empty();
    let complete_verified = tally.complete_violations.is_empty();
    let mut violations = tally.prune_violations;
    violations.extend(tally.complete_violations);
    Ok(SearchReport {
        schema: SCHEMA,
        config: cfg.clone(),
        graphs_scanned: tally.scanned,
        pruned_by_rule: tally.pruned,
        expected_complete_criticals: tally.expected_complete,
        criticals_found: CriticalsFound { count: tally.criticals, all_complete },
        counterexamples: tally.counterexamples,
        audit: AuditSummary {
            pruned_samples_rechecked: tally.pruned_rechecked,
            pruned_admissible,
            complete_samples_rechecked: tally.complete_rechecked,
            complete_verified,
            violations,
        },
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Search a supplied graph stream.
pub fn search_on<I>(cfg: &SearchConfig, graphs: I) -> Result<SearchReport, HarnessError>
where
    I: Iterator<Item = Graph> + Send,
{
    cfg.validate()?;
    let start = Instant::now();
    let states = parallel_scan(cfg.workers, graphs, |g, tally| process_graph(g, cfg, tally));
    let mut total = Tally::default();
    for s in states {
        total.merge(s);
    }
    finalize(cfg, total, start)
}

/// Search every isomorphism class on l+1..=n_max vertices. Orders up to l
/// are skipped: the only critical candidates there are complete graphs, so
/// they cannot be counterexamples.
pub fn search_counterexamples(cfg: &SearchConfig) -> Result<SearchReport, HarnessError> {
    cfg.validate()?;
    if cfg.n_max <= cfg.l {
        return search_on(cfg, std::iter::empty());
    }
    let stream = enumerate::enumerate_range(cfg.l + 1, cfg.n_max)?;
    search_on(cfg, stream)
}

/// Parse one graph per line, with 1-based line numbers in errors.
pub fn parse_graph6_lines<'a, I>(lines: I) -> Result<Vec<Graph>, HarnessError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut graphs = Vec::new();
    for (idx, line) in lines.into_iter().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = Graph::from_graph6(line)
            .map_err(|source| HarnessError::Graph6 { line: idx + 1, source })?;
        graphs.push(g);
    }
    Ok(graphs)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaAggregate {
    pub applicable: u64,
    pub vacuous: u64,
    pub passed: u64,
    pub failed: u64,
    pub failures: Vec<LemmaFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaFailure {
    pub graph6: String,
    pub verdict: LemmaVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaSweepReport {
    pub schema: &'static str,
    pub l: usize,
    pub lemmas: Vec<LemmaId>,
    pub graphs_checked: u64,
    pub per_lemma: BTreeMap<String, LemmaAggregate>,
    pub wall_time_ms: u128,
}

#[derive(Default)]
struct SweepTally {
    checked: u64,
    per_lemma: BTreeMap<String, LemmaAggregate>,
}

/// Apply each lemma predicate to each graph and aggregate verdicts with a
/// vacuity audit.
pub fn run_lemma_sweep_on<I>(
    cfg: &SearchConfig,
    lemmas: &[LemmaId],
    graphs: I,
) -> Result<LemmaSweepReport, HarnessError>
where
    I: Iterator<Item = Graph> + Send,
{
    cfg.validate()?;
    let start = Instant::now();
    if lemmas.is_empty() {
        return Ok(LemmaSweepReport {
            schema: SCHEMA,
            l: cfg.l,
            lemmas: vec![],
            graphs_checked: 0,
            per_lemma: BTreeMap::new(),
            wall_time_ms: start.elapsed().as_millis(),
        });
    }
    let states = parallel_scan(cfg.workers, graphs, |g, tally: &mut SweepTally| {
        if cfg.require_claw_free && !g.is_claw_free() {
            return;
        }
        tally.checked += 1;
        for verdict in lemmas::check_lemmas(g, cfg.l, lemmas) {
            let agg = tally.per_lemma.entry(verdict.lemma_id.as_str().to_string()).or_default();
            if verdict.applicable {
                agg.applicable += 1;
            } else {
                agg.vacuous += 1;
            }
            if verdict.pass {
                agg.passed += 1;
            } else {
                agg.failed += 1;
                agg.failures.push(LemmaFailure { graph6: g.to_graph6(), verdict });
            }
        }
    });
    let mut total = SweepTally::default();
    for s in states {
        total.checked += s.checked;
        for (k, v) in s.per_lemma {
            let agg = total.per_lemma.entry(k).or_default();
            agg.applicable += v.applicable;
            agg.vacuous += v.vacuous;
            agg.passed += v.passed;
            agg.failed += v.failed;
            agg.failures.extend(v.failures);
        }
    }
    for agg in total.per_lemma.values_mut() {
        agg.failures.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    }
    Ok(LemmaSweepReport {
        schema: SCHEMA,
        l: cfg.l,
        lemmas: lemmas.to_vec(),
        graphs_checked: total.checked,
        per_lemma: total.per_lemma,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Lemma sweep over the internal enumeration.
pub fn run_lemma_sweep(cfg: &SearchConfig, lemmas: &[LemmaId]) -> Result<LemmaSweepReport, HarnessError> {
    cfg.validate()?;
    let stream = enumerate_up_to(cfg.n_max)?;
    run_lemma_sweep_on(cfg, lemmas, stream)
}
