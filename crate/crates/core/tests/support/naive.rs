//! Exhaustive reference enumerator used to validate the branch-and-bound
//! engine. Deliberately naive and independent of the search module: every
//! per-triple assignment is visited as a mixed-radix odometer, the graph is
//! materialized, and only the public full checkers run on it.

#![allow(dead_code)]

use dhg_core::canon::{canonical_code, CanonicalCode};
use dhg_core::embed::is_free;
use dhg_core::graph::{DirectedHypergraph, Edge};
use dhg_core::patterns::Pattern;
use dhg_core::search::SearchMode;
use std::collections::BTreeSet;

fn digit_masks(mode: SearchMode) -> &'static [u8] {
    match mode {
        SearchMode::Standard => &[0, 1, 2, 3, 4, 5, 6, 7],
        SearchMode::Oriented => &[0, 1, 2, 4],
    }
}

/// Calls `f` exactly once on every graph on n vertices the mode allows.
pub fn enumerate_all(n: usize, mode: SearchMode, mut f: impl FnMut(&DirectedHypergraph)) {
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    let masks = digit_masks(mode);
    let mut digits = vec![0usize; triples.len()];
    loop {
        let mut edges = Vec::new();
        for (t, &d) in triples.iter().zip(&digits) {
            let m = masks[d];
            if m & 1 != 0 {
                edges.push(Edge::new(t[0], t[1], t[2]).unwrap());
            }
            if m & 2 != 0 {
                edges.push(Edge::new(t[0], t[2], t[1]).unwrap());
            }
            if m & 4 != 0 {
                edges.push(Edge::new(t[1], t[2], t[0]).unwrap());
            }
        }
        f(&DirectedHypergraph::from_edges(n, edges).unwrap());
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < masks.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The exact extremal value and the canonical codes of every family-free
/// graph attaining it.
pub fn naive_extremal(
    n: usize,
    family: &[Pattern],
    mode: SearchMode,
) -> (usize, BTreeSet<CanonicalCode>) {
    let mut best = 0;
    let mut classes = BTreeSet::new();
    enumerate_all(n, mode, |g| {
        if !is_free(g, family) {
            return;
        }
        let m = g.edge_count();
        if m > best {
            best = m;
            classes.clear();
        }
        if m == best {
            classes.insert(canonical_code(g).unwrap());
        }
    });
    (best, classes)
}

/// Canonical codes of every family-free graph with exactly `target` edges.
pub fn naive_census(
    n: usize,
    family: &[Pattern],
    mode: SearchMode,
    target: usize,
) -> BTreeSet<CanonicalCode> {
    let mut classes = BTreeSet::new();
    enumerate_all(n, mode, |g| {
        if g.edge_count() == target && is_free(g, family) {
            classes.insert(canonical_code(g).unwrap());
        }
    });
    classes
}
