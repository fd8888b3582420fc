//! The forbidden-pattern catalog: named small patterns, the two-edge family,
//! and the degeneracy test that separates patterns with poly-many extremal
//! numbers from the rest.

use crate::canon::{are_isomorphic, automorphism_count, canonical_code};
use crate::constructions::transitive_tournament;
use crate::graph::{DirectedHypergraph, Edge, Vertex};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("unknown pattern name {0:?}")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("pattern on {n} vertices exceeds the supported bound {max}")]
    TooLarge { n: usize, max: usize },
}

/// A forbidden pattern: a nonempty graph plus its cached automorphism count,
/// so copy counts can be derived from embedding counts without recomputing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    graph: DirectedHypergraph,
    automorphisms: usize,
}

impl Pattern {
    /// Wraps an arbitrary graph as a pattern. Rejects edgeless graphs (every
    /// injection would be an embedding) and graphs too large to canonize.
    pub fn from_graph(name: impl Into<String>, graph: DirectedHypergraph) -> Result<Self, PatternError> {
        if graph.edge_count() == 0 {
            return Err(PatternError::BadParam("pattern needs at least one edge".into()));
        }
        let automorphisms = automorphism_count(&graph)
            .map_err(|e| PatternError::TooLarge { n: e.n, max: e.max })?;
        Ok(Pattern { name: name.into(), graph, automorphisms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &DirectedHypergraph {
        &self.graph
    }

    pub fn automorphism_count(&self) -> usize {
        self.automorphisms
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Names accepted on the command line and in test fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternName {
    R3,
    R4,
    Escher,
    Tt4Minus,
    Tt4,
    /// Transitive tournament on k vertices, k >= 3.
    Tt(usize),
    DoubleTriple,
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternName::R3 => f.write_str("R3"),
            PatternName::R4 => f.write_str("R4"),
            PatternName::Escher => f.write_str("E"),
            PatternName::Tt4Minus => f.write_str("TT4-"),
            PatternName::Tt4 => f.write_str("TT4"),
            PatternName::Tt(k) => write!(f, "TT:{k}"),
            PatternName::DoubleTriple => f.write_str("DOUBLE"),
        }
    }
}

impl FromStr for PatternName {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, PatternError> {
        Ok(match s {
            "R3" => PatternName::R3,
            "R4" => PatternName::R4,
            "E" => PatternName::Escher,
            "TT4-" => PatternName::Tt4Minus,
            "TT4" => PatternName::Tt4,
            "DOUBLE" => PatternName::DoubleTriple,
            _ => {
                if let Some(k) = s.strip_prefix("TT:") {
                    let k: usize = k
                        .parse()
                        .map_err(|_| PatternError::UnknownName(s.to_string()))?;
                    PatternName::Tt(k)
                } else {
                    return Err(PatternError::UnknownName(s.to_string()));
                }
            }
        })
    }
}

fn graph_of(edges: &[(Vertex, Vertex, Vertex)], n: usize) -> DirectedHypergraph {
    let edges: Vec<Edge> = edges
        .iter()
        .map(|&(a, b, c)| Edge::new(a, b, c).unwrap())
        .collect();
    DirectedHypergraph::from_edges(n, edges).unwrap()
}

/// Builds the named pattern.
pub fn pattern(name: PatternName) -> Result<Pattern, PatternError> {
    let (label, graph) = match name {
        PatternName::R3 => ("R3".to_string(), graph_of(&[(0, 1, 2), (1, 2, 3)], 4)),
        PatternName::R4 => ("R4".to_string(), graph_of(&[(0, 1, 2), (2, 3, 4)], 5)),
        PatternName::Escher => ("E".to_string(), graph_of(&[(0, 1, 2), (2, 3, 1)], 4)),
        PatternName::Tt4Minus => {
            ("TT4-".to_string(), graph_of(&[(0, 1, 3), (0, 2, 3), (1, 2, 3)], 4))
        }
        PatternName::Tt4 => ("TT4".to_string(), transitive_tournament(4)),
        PatternName::Tt(k) => {
            if k < 3 {
                return Err(PatternError::BadParam(format!("TT:{k} needs k >= 3")));
            }
            (format!("TT:{k}"), transitive_tournament(k))
        }
        PatternName::DoubleTriple => {
            ("DOUBLE".to_string(), graph_of(&[(0, 1, 2), (0, 2, 1)], 3))
        }
    };
    Pattern::from_graph(label, graph)
}

/// The six fixed named patterns, in catalog order.
pub fn catalog() -> Vec<Pattern> {
    [
        PatternName::R3,
        PatternName::R4,
        PatternName::Escher,
        PatternName::Tt4Minus,
        PatternName::Tt4,
        PatternName::DoubleTriple,
    ]
    .into_iter()
    .map(|name| pattern(name).unwrap())
    .collect()
}

/// Drops isolated vertices and relabels the rest as 0..k preserving order.
fn compact(g: &DirectedHypergraph) -> DirectedHypergraph {
    let mut used = vec![false; g.n()];
    for e in g.edges() {
        for v in e.vertices() {
            used[v] = true;
        }
    }
    let mut relabel = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if used[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge::new(relabel[e.lo()], relabel[e.hi()], relabel[e.head()]).unwrap())
        .collect();
    DirectedHypergraph::from_edges(next, edges).unwrap()
}

/// All isomorphism classes of graphs with exactly two edges and no isolated
/// vertex. Generated by brute force on six vertices (two disjoint triples is
/// the widest case) rather than listed by hand. Classes isomorphic to a
/// catalog pattern reuse its name; the degenerate leftovers are numbered.
pub fn two_edge_family() -> Vec<Pattern> {
    let n = 6;
    let mut all = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                if c != a && c != b {
                    all.push(Edge::new(a, b, c).unwrap());
                }
            }
        }
    }
    let mut classes = BTreeMap::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let g = compact(&DirectedHypergraph::from_edges(n, vec![all[i], all[j]]).unwrap());
            classes.insert(canonical_code(&g).unwrap(), g);
        }
    }
    let named = catalog();
    let mut out = Vec::new();
    let mut anon = 0;
    for g in classes.into_values() {
        let name = match named.iter().find(|p| are_isomorphic(p.graph(), &g).unwrap()) {
            Some(p) => p.name().to_string(),
            None => {
                anon += 1;
                format!("deg-{anon}")
            }
        };
        out.push(Pattern::from_graph(name, g).unwrap());
    }
    out
}

/// A witness that a pattern is degenerate: vertex classes T1, T2, K such that
/// every edge has one tail vertex in each of T1 and T2 and its head in K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneratePartition {
    pub t1: Vec<Vertex>,
    pub t2: Vec<Vertex>,
    pub k: Vec<Vertex>,
}

impl DegeneratePartition {
    /// Checks the witness against a graph from scratch.
    pub fn validates(&self, g: &DirectedHypergraph) -> bool {
        let mut class = vec![usize::MAX; g.n()];
        for (c, part) in [&self.t1, &self.t2, &self.k].into_iter().enumerate() {
            for &v in part {
                if v >= g.n() || class[v] != usize::MAX {
                    return false;
                }
                class[v] = c;
            }
        }
        if class.contains(&usize::MAX) {
            return false;
        }
        g.edges().iter().all(|e| {
            let (lo, hi) = (class[e.lo()], class[e.hi()]);
            (lo, hi) == (0, 1) || (lo, hi) == (1, 0)
        }) && g.edges().iter().all(|e| class[e.head()] == 2)
    }
}

/// Limit for the degeneracy search; 3^n assignments with early pruning.
pub const MAX_DEGENERACY_N: usize = 12;

/// Tests whether the pattern admits a degenerate partition, returning one if
/// so. Backtracking over vertex classes, pruning each edge as soon as its
/// constraint is decidable.
pub fn is_degenerate(g: &DirectedHypergraph) -> Result<Option<DegeneratePartition>, PatternError> {
    if g.n() > MAX_DEGENERACY_N {
        return Err(PatternError::TooLarge { n: g.n(), max: MAX_DEGENERACY_N });
    }
    const UNSET: usize = usize::MAX;
    let mut class = vec![UNSET; g.n()];

    fn consistent(g: &DirectedHypergraph, class: &[usize], v: Vertex) -> bool {
        for e in g.edges() {
            if !e.has_vertex(v) {
                continue;
            }
            if class[e.head()] != UNSET && class[e.head()] != 2 {
                return false;
            }
            let (lo, hi) = (class[e.lo()], class[e.hi()]);
            if lo == 2 || hi == 2 {
                return false;
            }
            if lo != UNSET && hi != UNSET && lo == hi {
                return false;
            }
        }
        true
    }

    fn assign(g: &DirectedHypergraph, class: &mut Vec<usize>, v: Vertex) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..3 {
            class[v] = c;
            if consistent(g, class, v) && assign(g, class, v + 1) {
                return true;
            }
        }
        class[v] = UNSET;
        false
    }

    if !assign(g, &mut class, 0) {
        return Ok(None);
    }
    let mut parts = [Vec::new(), Vec::new(), Vec::new()];
    for (v, &c) in class.iter().enumerate() {
        parts[c].push(v);
    }
    let [t1, t2, k] = parts;
    let witness = DegeneratePartition { t1, t2, k };
    debug_assert!(witness.validates(g));
    Ok(Some(witness))
}
