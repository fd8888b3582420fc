//! Link-graph partitions and the Escher-free normalization procedure.
//!
//! The partitions expose the structure the extremal bounds rest on: the
//! U/C/M split of a vertex's link graph, the forbidden-incidence test for
//! R3, and the D/R/T split by tail-link shape. Normalization repeatedly
//! completes the tail link of a ready vertex to a clique, which never loses
//! edges and never creates an Escher copy, ending in a graph where no
//! heavy triple avoids T.

use crate::embed::{contains, is_free};
use crate::graph::{DirectedHypergraph, Edge, GraphError, LinkEdge, Vertex};
use crate::patterns::{pattern, Pattern, PatternName};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("normalization requires an E-free graph")]
    NotEFree,
    #[error("vertex {x} is not in R")]
    NotReady { x: Vertex },
}

fn escher() -> Pattern {
    pattern(PatternName::Escher).unwrap()
}

/// The U/C/M split of L_x over V \ {x}: m covers every pair carrying two or
/// more link edges, u holds the tails of directed edges among the remaining
/// vertices, c holds everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkPartition {
    pub u: Vec<Vertex>,
    pub c: Vec<Vertex>,
    pub m: Vec<Vertex>,
}

pub fn link_partition(g: &DirectedHypergraph, x: Vertex) -> Result<LinkPartition, GraphError> {
    let links = g.link_graphs(x)?;
    // Count link edges per unordered pair; a pair can carry at most three
    // (one undirected, both directions).
    let mut mult: BTreeMap<(Vertex, Vertex), u8> = BTreeMap::new();
    for &(a, b) in &links.tail_link {
        *mult.entry((a, b)).or_default() += 1;
    }
    for &(y, z) in &links.directed_link {
        *mult.entry((y.min(z), y.max(z))).or_default() += 1;
    }
    let mut in_m = vec![false; g.n()];
    for (&(a, b), &k) in &mult {
        if k >= 2 {
            in_m[a] = true;
            in_m[b] = true;
        }
    }
    let mut in_u = vec![false; g.n()];
    for &(y, z) in &links.directed_link {
        if !in_m[y] && !in_m[z] {
            in_u[y] = true;
        }
    }
    let mut out = LinkPartition { u: Vec::new(), c: Vec::new(), m: Vec::new() };
    for v in 0..g.n() {
        if v == x {
            continue;
        }
        if in_m[v] {
            out.m.push(v);
        } else if in_u[v] {
            out.u.push(v);
        } else {
            out.c.push(v);
        }
    }
    Ok(out)
}

/// Two link edges of L_x whose incidence certifies an R3 copy through x:
/// either an undirected pair {y,z} feeding a directed z -> t, or a directed
/// chain y -> z -> t, with y, z, t distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct R3Incidence {
    pub first: LinkEdge,
    pub second: LinkEdge,
}

pub fn r3_forbidden_incidence(
    g: &DirectedHypergraph,
    x: Vertex,
) -> Result<Option<R3Incidence>, GraphError> {
    let links = g.link_graphs(x)?;
    for &(z, t) in &links.directed_link {
        for &(a, b) in &links.tail_link {
            if (a == z || b == z) && a != t && b != t {
                return Ok(Some(R3Incidence {
                    first: LinkEdge::Undirected(a, b),
                    second: LinkEdge::Directed(z, t),
                }));
            }
        }
        for &(y, z2) in &links.directed_link {
            if z2 == z && y != t && y != z {
                return Ok(Some(R3Incidence {
                    first: LinkEdge::Directed(y, z),
                    second: LinkEdge::Directed(z, t),
                }));
            }
        }
    }
    Ok(None)
}

/// A violation of the mutual-tail-degree lemma: d_x(y) >= 2 while
/// d_y(x) >= 1, where d_x(y) counts edges with head x and y in the tail.
/// Any such pair certifies an Escher copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaWitness {
    pub x: Vertex,
    pub y: Vertex,
}

/// Degree of y inside T_x: the number of edges ys -> x.
fn mutual_tail_degree(g: &DirectedHypergraph, x: Vertex, y: Vertex) -> usize {
    g.edges()
        .iter()
        .filter(|e| e.head() == x && e.tail_has(y))
        .count()
}

/// Scans all ordered vertex pairs for a lemma violation, lowest (x, y)
/// first. None on every E-free graph.
pub fn lemma1_check(g: &DirectedHypergraph) -> Option<LemmaWitness> {
    for x in 0..g.n() {
        for y in 0..g.n() {
            if y == x {
                continue;
            }
            if mutual_tail_degree(g, x, y) >= 2 && mutual_tail_degree(g, y, x) >= 1 {
                return Some(LemmaWitness { x, y });
            }
        }
    }
    None
}

/// One normalization step: the completed tail link's center plus the edges
/// it gained and lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub x: Vertex,
    pub added: Vec<Edge>,
    pub removed: Vec<Edge>,
}

/// The D/R/T vertex partition plus the graph it was computed from and the
/// steps taken so far. d holds vertices whose tail link is already a clique
/// on at least three vertices, r those with at least three tail-link edges
/// but no clique yet, t the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationState {
    pub d: Vec<Vertex>,
    pub r: Vec<Vertex>,
    pub t: Vec<Vertex>,
    pub graph: DirectedHypergraph,
    pub log: Vec<Step>,
}

/// Vertices covered by the pairs of T_x, ascending.
fn tail_support(tail_link: &[(Vertex, Vertex)]) -> Vec<Vertex> {
    let mut support: Vec<Vertex> = tail_link.iter().flat_map(|&(a, b)| [a, b]).collect();
    support.sort_unstable();
    support.dedup();
    support
}

fn classify(g: &DirectedHypergraph) -> (Vec<Vertex>, Vec<Vertex>, Vec<Vertex>) {
    let (mut d, mut r, mut t) = (Vec::new(), Vec::new(), Vec::new());
    for x in 0..g.n() {
        let links = g.link_graphs(x).unwrap();
        let support = tail_support(&links.tail_link);
        let s = support.len();
        if s >= 3 && links.tail_link.len() == s * (s - 1) / 2 {
            d.push(x);
        } else if links.tail_link.len() >= 3 {
            r.push(x);
        } else {
            t.push(x);
        }
    }
    (d, r, t)
}

/// Classifies every vertex of `g` into D/R/T, with an empty log.
pub fn drt_partition(g: &DirectedHypergraph) -> NormalizationState {
    let (d, r, t) = classify(g);
    NormalizationState { d, r, t, graph: g.clone(), log: Vec::new() }
}

/// Completes T_x to a clique (adding the missing pairs pointed at x) and
/// drops every edge that had x in its tail and its head inside the support
/// of T_x. Requires x in r. Asserts, rather than trusts, that the step
/// never loses edges and only moves vertices R -> D, R -> T, or in place.
pub fn normalize_step(
    state: NormalizationState,
    x: Vertex,
) -> Result<NormalizationState, NormalizeError> {
    if !state.r.contains(&x) {
        return Err(NormalizeError::NotReady { x });
    }
    let NormalizationState { d: old_d, r: _, t: old_t, mut graph, mut log } = state;
    let links = graph.link_graphs(x).expect("members of r are in range");
    let support = tail_support(&links.tail_link);
    let before = graph.edge_count();

    let mut added = Vec::new();
    for (i, &a) in support.iter().enumerate() {
        for &b in &support[i + 1..] {
            if !graph.has_edge(a, b, x) {
                let e = Edge::new(a, b, x).unwrap();
                graph.insert(e).unwrap();
                added.push(e);
            }
        }
    }
    let mut removed = Vec::new();
    for e in graph.edges().to_vec() {
        if e.tail_has(x) && support.binary_search(&e.head()).is_ok() {
            graph.remove(e).unwrap();
            removed.push(e);
        }
    }

    assert!(
        graph.edge_count() >= before,
        "normalization step at {x} lost edges: {before} -> {}",
        graph.edge_count()
    );
    debug_assert!(is_free(&graph, &[escher()]), "step at {x} created an Escher copy");
    let (d, r, t) = classify(&graph);
    assert!(d.binary_search(&x).is_ok(), "step center {x} must land in d");
    for v in &old_d {
        assert!(d.binary_search(v).is_ok(), "vertex {v} left d");
    }
    for v in &old_t {
        assert!(t.binary_search(v).is_ok(), "vertex {v} escaped t");
    }
    log.push(Step { x, added, removed });
    Ok(NormalizationState { d, r, t, graph, log })
}

/// Runs normalization to the fixed point: while r is nonempty, steps on its
/// lowest-index vertex. Rejects graphs containing an Escher copy, since the
/// procedure's guarantees hold only for E-free inputs. Terminates within n
/// steps because each step moves one vertex into d for good.
pub fn normalize(g: &DirectedHypergraph) -> Result<NormalizationState, NormalizeError> {
    if contains(g, &escher()) {
        return Err(NormalizeError::NotEFree);
    }
    let mut state = drt_partition(g);
    let mut steps = 0;
    while let Some(&x) = state.r.first() {
        state = normalize_step(state, x).expect("lowest vertex of r is ready");
        steps += 1;
        assert!(steps <= g.n(), "normalization exceeded {} steps", g.n());
    }
    Ok(state)
}
