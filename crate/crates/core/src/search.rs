//! Exact extremal search: the maximum edge count of a family-free graph on n
//! vertices, and the census of family-free graphs with a given edge count up
//! to isomorphism.
//!
//! The search walks vertex triples in colex order and assigns each a subset
//! of its three pointed edges, so a complete assignment is a graph. Freeness
//! is maintained incrementally (only copies through the newly placed edges
//! are checked), the bound prunes on the per-triple capacity, and the first
//! triple's assignment is split across workers.

use crate::canon::{canonical_code, CanonicalCode, MAX_CANON_N};
use crate::constructions::{formula, ttk_lower_construction, FormulaId};
use crate::embed::{extension_free, is_free};
use crate::graph::{DirectedHypergraph, Edge, Vertex};
use crate::patterns::{pattern, Pattern, PatternName};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

/// How many pointed edges one triple may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// At most one edge per triple.
    Oriented,
    /// Up to all three pointed edges per triple.
    Standard,
}

/// Per-triple assignments in decreasing cardinality, so large incumbents
/// appear early. Bit 0 is ab -> c, bit 1 is ac -> b, bit 2 is bc -> a for the
/// sorted triple a < b < c.
const MASKS_STANDARD: [u8; 8] = [7, 3, 5, 6, 1, 2, 4, 0];
const MASKS_ORIENTED: [u8; 4] = [1, 2, 4, 0];

/// First-triple representatives under relabeling the root triple: one mask
/// per orbit of S_3 (masks of equal weight are all conjugate).
const ROOT_STANDARD: [u8; 4] = [7, 3, 1, 0];
const ROOT_ORIENTED: [u8; 2] = [1, 0];

impl SearchMode {
    fn masks(self) -> &'static [u8] {
        match self {
            SearchMode::Oriented => &MASKS_ORIENTED,
            SearchMode::Standard => &MASKS_STANDARD,
        }
    }

    fn root_masks(self, n: usize) -> &'static [u8] {
        if n < 5 {
            // No symmetry breaking at tiny n; censuses there dedupe post hoc.
            self.masks()
        } else {
            match self {
                SearchMode::Oriented => &ROOT_ORIENTED,
                SearchMode::Standard => &ROOT_STANDARD,
            }
        }
    }

    /// The per-triple capacity the bound multiplies by.
    pub fn capacity(self) -> usize {
        match self {
            SearchMode::Oriented => 1,
            SearchMode::Standard => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SearchMode::Oriented => "oriented",
            SearchMode::Standard => "standard",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Default vertex budgets. Search cost is exponential in C(n,3); these keep
/// the required suite honest, and [`SearchOptions::force`] lifts them.
pub const MAX_N_ORIENTED: usize = 6;
pub const MAX_N_STANDARD: usize = 5;
pub const MAX_N_CENSUS_ORIENTED: usize = 5;
pub const MAX_N_CENSUS_STANDARD: usize = 4;
/// decide_conjecture_tt4 accepts n <= 5, or 6 with force; never more.
pub const MAX_N_CONJECTURE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {n} exceeds the {what} budget of {limit} (set force to override)")]
    BudgetExceeded { n: usize, limit: usize, what: &'static str },
    #[error("bad seed: {0}")]
    BadSeed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads for the root split; 0 and 1 both mean sequential.
    pub jobs: usize,
    /// Lift the vertex budgets.
    pub force: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: 1, force: false }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub bound_prunes: u64,
    pub freeness_prunes: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.bound_prunes += other.bound_prunes;
        self.freeness_prunes += other.freeness_prunes;
    }
}

/// Outcome of a max_edges run. The witness attains the value and is verified
/// family-free by the full (non-incremental) checker.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub value: usize,
    pub witness: DirectedHypergraph,
    pub stats: SearchStats,
}

/// One isomorphism class of a census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusClass {
    pub code: CanonicalCode,
    pub representative: DirectedHypergraph,
}

/// All family-free graphs with exactly `target` edges, one per isomorphism
/// class, sorted by canonical code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub target: usize,
    pub classes: Vec<CensusClass>,
    pub stats: SearchStats,
}

/// Periodic status during a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub nodes: u64,
    /// Best value so far (max search) or classes found so far (census).
    pub incumbent: usize,
    pub depth: usize,
}

/// Receiver for progress updates; shared across workers.
pub trait ProgressSink: Sync {
    fn report(&self, progress: Progress);
}

#[derive(Clone, Copy)]
enum Goal {
    Max,
    Census { target: usize },
}

struct Engine<'a> {
    n: usize,
    triples: Vec<[Vertex; 3]>,
    masks: &'static [u8],
    root_masks: &'static [u8],
    cap: usize,
    family: &'a [Pattern],
    goal: Goal,
    /// Monotone hint of the incumbent value; authoritative copy lives in
    /// `witness` behind the lock.
    best: AtomicUsize,
    witness: Mutex<(usize, DirectedHypergraph)>,
    census: Mutex<BTreeMap<CanonicalCode, DirectedHypergraph>>,
    next_task: AtomicUsize,
    nodes_seen: AtomicU64,
    progress: Option<&'a dyn ProgressSink>,
}

/// Triples {a < b < c} of [0, n) in colex order.
fn colex_triples(n: usize) -> Vec<[Vertex; 3]> {
    let mut triples = Vec::new();
    for c in 2..n {
        for b in 1..c {
            for a in 0..b {
                triples.push([a, b, c]);
            }
        }
    }
    triples
}

/// The pointed edges a mask places on the sorted triple {a < b < c}.
fn expand(mask: u8, [a, b, c]: [Vertex; 3]) -> ([Edge; 3], usize) {
    let dummy = Edge::new(0, 1, 2).unwrap();
    let mut out = [dummy; 3];
    let mut k = 0;
    if mask & 1 != 0 {
        out[k] = Edge::new(a, b, c).unwrap();
        k += 1;
    }
    if mask & 2 != 0 {
        out[k] = Edge::new(a, c, b).unwrap();
        k += 1;
    }
    if mask & 4 != 0 {
        out[k] = Edge::new(b, c, a).unwrap();
        k += 1;
    }
    (out, k)
}

impl<'a> Engine<'a> {
    fn new(
        n: usize,
        family: &'a [Pattern],
        mode: SearchMode,
        goal: Goal,
        progress: Option<&'a dyn ProgressSink>,
    ) -> Self {
        Engine {
            n,
            triples: colex_triples(n),
            masks: mode.masks(),
            root_masks: mode.root_masks(n),
            cap: mode.capacity(),
            family,
            goal,
            best: AtomicUsize::new(0),
            witness: Mutex::new((0, DirectedHypergraph::new(n))),
            census: Mutex::new(BTreeMap::new()),
            next_task: AtomicUsize::new(0),
            nodes_seen: AtomicU64::new(0),
            progress,
        }
    }

    fn tick(&self, depth: usize) {
        if let Some(sink) = self.progress {
            let nodes = self.nodes_seen.fetch_add(1 << 16, Ordering::Relaxed) + (1 << 16);
            let incumbent = match self.goal {
                Goal::Max => self.best.load(Ordering::Relaxed),
                Goal::Census { .. } => self.census.lock().unwrap().len(),
            };
            sink.report(Progress { nodes, incumbent, depth });
        }
    }

    /// Raises the incumbent to `count` if it beats the current one, storing
    /// the witness. The full freeness check guards the incremental search.
    fn offer(&self, g: &DirectedHypergraph, count: usize) {
        if !matches!(self.goal, Goal::Max) || count <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut w = self.witness.lock().unwrap();
        if count > w.0 {
            assert!(is_free(g, self.family), "incumbent candidate failed the full check");
            *w = (count, g.clone());
            self.best.store(count, Ordering::Relaxed);
        }
    }

    /// Records a census leaf, keeping one representative per canonical code.
    /// Ties pick the lexicographically smallest edge list so the outcome is
    /// identical for any worker count.
    fn record(&self, g: &DirectedHypergraph, count: usize) {
        let Goal::Census { target } = self.goal else {
            return;
        };
        assert_eq!(count, target);
        assert!(is_free(g, self.family), "census leaf failed the full check");
        let code = canonical_code(g).expect("census n is capped at MAX_CANON_N");
        let mut map = self.census.lock().unwrap();
        match map.entry(code) {
            Entry::Vacant(v) => {
                v.insert(g.clone());
            }
            Entry::Occupied(mut o) => {
                if g.edges() < o.get().edges() {
                    o.insert(g.clone());
                }
            }
        }
    }

    fn dfs(&self, g: &mut DirectedHypergraph, idx: usize, count: usize, stats: &mut SearchStats) {
        stats.nodes += 1;
        if stats.nodes & 0xFFFF == 0 {
            self.tick(idx);
        }
        let remaining = self.triples.len() - idx;
        let reachable = count + self.cap * remaining;
        match self.goal {
            Goal::Max => {
                if reachable <= self.best.load(Ordering::Relaxed) {
                    stats.bound_prunes += 1;
                    return;
                }
            }
            Goal::Census { target } => {
                if reachable < target {
                    stats.bound_prunes += 1;
                    return;
                }
            }
        }
        if idx == self.triples.len() {
            self.record(g, count);
            return;
        }
        for &mask in self.masks {
            self.enter(g, idx, count, mask, stats);
        }
    }

    /// Places `mask` on triple `idx` and recurses if the extension stays
    /// family-free. Skips assignments a census could never use.
    fn enter(&self, g: &mut DirectedHypergraph, idx: usize, count: usize, mask: u8, stats: &mut SearchStats) {
        let (edges, k) = expand(mask, self.triples[idx]);
        if let Goal::Census { target } = self.goal {
            if count + k > target {
                return;
            }
        }
        for &e in &edges[..k] {
            g.insert(e).unwrap();
        }
        if extension_free(g, self.family, &edges[..k]) {
            self.offer(g, count + k);
            self.dfs(g, idx + 1, count + k, stats);
        } else {
            stats.freeness_prunes += 1;
        }
        for &e in &edges[..k] {
            g.remove(e).unwrap();
        }
    }

    /// Claims root assignments until none remain. Each worker owns a scratch
    /// graph; all sharing goes through the incumbent and census locks.
    fn work(&self) -> SearchStats {
        let mut stats = SearchStats::default();
        let mut g = DirectedHypergraph::new(self.n);
        if self.triples.is_empty() {
            // No triples at all: the empty graph is the one leaf.
            if self.next_task.fetch_add(1, Ordering::Relaxed) == 0 {
                stats.nodes = 1;
                if matches!(self.goal, Goal::Census { target: 0 }) {
                    self.record(&g, 0);
                }
            }
            return stats;
        }
        loop {
            let i = self.next_task.fetch_add(1, Ordering::Relaxed);
            if i >= self.root_masks.len() {
                return stats;
            }
            self.enter(&mut g, 0, 0, self.root_masks[i], &mut stats);
        }
    }

    fn run(&self, jobs: usize) -> SearchStats {
        let workers = jobs.clamp(1, self.root_masks.len().max(1));
        let mut stats = SearchStats::default();
        if workers <= 1 {
            stats.absorb(self.work());
        } else {
            let merged = Mutex::new(SearchStats::default());
            std::thread::scope(|scope| {
                for _ in 0..workers {
                    scope.spawn(|| {
                        let local = self.work();
                        merged.lock().unwrap().absorb(local);
                    });
                }
            });
            stats.absorb(merged.into_inner().unwrap());
        }
        stats
    }
}

fn check_budget(n: usize, limit: usize, what: &'static str, force: bool) -> Result<(), SearchError> {
    if n > limit && !force {
        return Err(SearchError::BudgetExceeded { n, limit, what });
    }
    Ok(())
}

/// Exact maximum edge count over family-free graphs on n vertices, with a
/// witness. A seed, when given, must itself be a family-free graph on n
/// vertices (and oriented in oriented mode); it only raises the starting
/// incumbent, so it never changes the value, only the work done.
pub fn max_edges(
    n: usize,
    family: &[Pattern],
    mode: SearchMode,
    seed: Option<&DirectedHypergraph>,
) -> Result<SearchResult, SearchError> {
    max_edges_opt(n, family, mode, seed, &SearchOptions::default(), None)
}

pub fn max_edges_opt(
    n: usize,
    family: &[Pattern],
    mode: SearchMode,
    seed: Option<&DirectedHypergraph>,
    options: &SearchOptions,
    progress: Option<&dyn ProgressSink>,
) -> Result<SearchResult, SearchError> {
    let limit = match mode {
        SearchMode::Oriented => MAX_N_ORIENTED,
        SearchMode::Standard => MAX_N_STANDARD,
    };
    check_budget(
        n,
        limit,
        match mode {
            SearchMode::Oriented => "oriented search",
            SearchMode::Standard => "standard search",
        },
        options.force,
    )?;
    if let Some(s) = seed {
        if s.n() != n {
            return Err(SearchError::BadSeed(format!(
                "seed has {} vertices, the search runs on {n}",
                s.n()
            )));
        }
        if matches!(mode, SearchMode::Oriented) && !s.is_oriented() {
            return Err(SearchError::BadSeed(
                "seed is not oriented but the mode is".into(),
            ));
        }
        if !is_free(s, family) {
            return Err(SearchError::BadSeed("seed contains a forbidden pattern".into()));
        }
    }

    let engine = Engine::new(n, family, mode, Goal::Max, progress);
    if let Some(s) = seed {
        engine.best.store(s.edge_count(), Ordering::Relaxed);
        *engine.witness.lock().unwrap() = (s.edge_count(), s.clone());
    }
    let stats = engine.run(options.jobs);
    let (value, witness) = engine.witness.into_inner().unwrap();
    debug_assert!(is_free(&witness, family));
    assert_eq!(witness.edge_count(), value);
    Ok(SearchResult { value, witness, stats })
}

/// Every family-free graph on n vertices with exactly `target` edges, one
/// representative per isomorphism class, sorted by canonical code. A target
/// beyond capacity yields an empty census.
pub fn census(
    n: usize,
    family: &[Pattern],
    mode: SearchMode,
    target: usize,
) -> Result<Census, SearchError> {
    census_opt(n, family, mode, target, &SearchOptions::default(), None)
}

pub fn census_opt(
    n: usize,
    family: &[Pattern],
    mode: SearchMode,
    target: usize,
    options: &SearchOptions,
    progress: Option<&dyn ProgressSink>,
) -> Result<Census, SearchError> {
    let limit = match mode {
        SearchMode::Oriented => MAX_N_CENSUS_ORIENTED,
        SearchMode::Standard => MAX_N_CENSUS_STANDARD,
    };
    check_budget(
        n,
        limit,
        match mode {
            SearchMode::Oriented => "oriented census",
            SearchMode::Standard => "standard census",
        },
        options.force,
    )?;
    // Classes are keyed by canonical code, so force cannot push a census
    // past what canonical forms support.
    if n > MAX_CANON_N {
        return Err(SearchError::BudgetExceeded {
            n,
            limit: MAX_CANON_N,
            what: "census (canonical forms)",
        });
    }

    let engine = Engine::new(n, family, mode, Goal::Census { target }, progress);
    let stats = engine.run(options.jobs);
    let classes = engine
        .census
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|(code, representative)| CensusClass { code, representative })
        .collect();
    Ok(Census { target, classes, stats })
}

/// How a searched value compares to a conjectured closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// The search stayed below the conjectured value.
    RefutedBelow,
    /// The search exceeded the conjectured value.
    RefutedAbove,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::RefutedBelow => "refuted-below",
            Verdict::RefutedAbove => "refuted-above",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub n: usize,
    pub search_value: u64,
    pub conjecture_value: u64,
    pub verdict: Verdict,
    pub witness: DirectedHypergraph,
    pub stats: SearchStats,
}

/// Tests the conjectured TT4 extremal number at one n: runs the exact
/// standard-mode search forbidding TT4, seeded with the lower-bound
/// construction, and compares against the closed form.
pub fn decide_conjecture_tt4(n: usize) -> Result<ConjectureReport, SearchError> {
    decide_conjecture_tt4_opt(n, &SearchOptions::default(), None)
}

pub fn decide_conjecture_tt4_opt(
    n: usize,
    options: &SearchOptions,
    progress: Option<&dyn ProgressSink>,
) -> Result<ConjectureReport, SearchError> {
    let limit = if options.force { MAX_N_CONJECTURE + 1 } else { MAX_N_CONJECTURE };
    if n > limit {
        return Err(SearchError::BudgetExceeded { n, limit, what: "conjecture decision" });
    }
    let seed = if n >= 1 { Some(ttk_lower_construction(n, 4).unwrap()) } else { None };
    let tt4 = [pattern(PatternName::Tt4).unwrap()];
    // The budget above already vets n, so the inner search runs with its
    // own budget lifted.
    let inner = SearchOptions { jobs: options.jobs, force: true };
    let result = max_edges_opt(n, &tt4, SearchMode::Standard, seed.as_ref(), &inner, progress)?;
    let conjecture_value = formula(FormulaId::Tt4Minus, n, None).unwrap();
    let search_value = result.value as u64;
    let verdict = match search_value.cmp(&conjecture_value) {
        std::cmp::Ordering::Equal => Verdict::Equal,
        std::cmp::Ordering::Less => Verdict::RefutedBelow,
        std::cmp::Ordering::Greater => Verdict::RefutedAbove,
    };
    Ok(ConjectureReport {
        n,
        search_value,
        conjecture_value,
        verdict,
        witness: result.witness,
        stats: result.stats,
    })
}
