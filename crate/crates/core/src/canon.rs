//! Canonical forms for small graphs by branch-and-bound label minimization.
//!
//! The code of a labeling is one 3-bit mask per vertex triple in colex order;
//! the canonical code is the lexicographic minimum over all n! relabelings.
//! Equal codes iff isomorphic, supported for n <= [`MAX_CANON_N`].

use crate::graph::{DirectedHypergraph, Vertex};
use std::fmt;
use thiserror::Error;

/// Largest vertex count the permutation search supports.
pub const MAX_CANON_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("n = {n} exceeds the canonical-form support bound {max}")]
pub struct TooLarge {
    pub n: usize,
    pub max: usize,
}

/// Isomorphism-class identifier: byte 0 is n, then one mask byte per triple
/// {a<b<c} in colex order (bit0: ab->c, bit1: ac->b, bit2: bc->a).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

/// Per-triple edge masks of `g` under its own labeling, dense over sorted
/// triples: `table[(a*n + b)*n + c]` for a < b < c.
fn mask_table(g: &DirectedHypergraph) -> Vec<u8> {
    let n = g.n();
    let mut table = vec![0u8; n * n * n];
    for e in g.edges() {
        let [a, b, c] = e.triple();
        let bit = if e.head() == c {
            1
        } else if e.head() == b {
            2
        } else {
            4
        };
        table[(a * n + b) * n + c] |= bit;
    }
    table
}

struct Minimizer<'a> {
    n: usize,
    table: &'a [u8],
    /// Candidate old vertices in heuristic try order (sparse profiles first,
    /// which tends to produce small leading blocks).
    order: Vec<Vertex>,
    /// perm[new_label] = old vertex.
    perm: Vec<Vertex>,
    used: Vec<bool>,
    /// Code body (no n byte) of the best labeling found so far.
    best: Vec<u8>,
    /// Code body prefix of the labeling under construction.
    cur: Vec<u8>,
}

impl Minimizer<'_> {
    fn tri_mask(&self, x: Vertex, y: Vertex, z: Vertex) -> u8 {
        let mut t = [x, y, z];
        t.sort_unstable();
        self.table[(t[0] * self.n + t[1]) * self.n + t[2]]
    }

    /// Appends the masks of all new-label triples {a < b < depth}, in colex
    /// order, evaluated through `perm`. Returns how many bytes were added.
    fn push_block(&mut self, depth: usize) -> usize {
        let mut added = 0;
        for b in 1..depth {
            for a in 0..b {
                let (oa, ob, oc) = (self.perm[a], self.perm[b], self.perm[depth]);
                // Sort the OLD triple to look it up, then re-express the mask
                // relative to the NEW label order (a < b < depth).
                let mask = self.remapped_mask(oa, ob, oc);
                self.cur.push(mask);
                added += 1;
            }
        }
        added
    }

    /// Mask of the old triple {oa, ob, oc} re-expressed for new labels where
    /// oa, ob, oc are the images of new a < b < c respectively.
    fn remapped_mask(&self, oa: Vertex, ob: Vertex, oc: Vertex) -> u8 {
        let raw = self.tri_mask(oa, ob, oc);
        if raw == 0 {
            return 0;
        }
        // Decompose by head: which old vertex is the head of each present edge.
        let mut sorted = [oa, ob, oc];
        sorted.sort_unstable();
        let mut mask = 0u8;
        for (bit, head_idx) in [(1u8, 2usize), (2, 1), (4, 0)] {
            if raw & bit != 0 {
                let head = sorted[head_idx];
                // new-label bit: head == oc -> bit0, ob -> bit1, oa -> bit2
                mask |= if head == oc {
                    1
                } else if head == ob {
                    2
                } else {
                    4
                };
            }
        }
        mask
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.n {
            if self.cur[..] < self.best[..] {
                self.best.clear();
                self.best.extend_from_slice(&self.cur);
            }
            return;
        }
        for idx in 0..self.order.len() {
            let cand = self.order[idx];
            if self.used[cand] {
                continue;
            }
            self.used[cand] = true;
            self.perm[depth] = cand;
            let added = if depth >= 2 { self.push_block(depth) } else { 0 };
            // Exact prune: a prefix lexicographically above the incumbent can
            // never complete to a smaller code.
            if self.cur[..] <= self.best[..self.cur.len()] {
                self.dfs(depth + 1);
            }
            self.cur.truncate(self.cur.len() - added);
            self.used[cand] = false;
        }
    }
}

fn code_body_under(g: &DirectedHypergraph, table: &[u8], perm: &[Vertex]) -> Vec<u8> {
    let n = g.n();
    let mut m = Minimizer {
        n,
        table,
        order: Vec::new(),
        perm: perm.to_vec(),
        used: vec![false; n],
        best: Vec::new(),
        cur: Vec::new(),
    };
    let mut body = Vec::new();
    for depth in 2..n {
        m.push_block(depth);
    }
    body.append(&mut m.cur);
    body
}

/// Lexicographically minimal code over all relabelings of `g`.
pub fn canonical_code(g: &DirectedHypergraph) -> Result<CanonicalCode, TooLarge> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(TooLarge { n, max: MAX_CANON_N });
    }
    let mut out = vec![n as u8];
    if n >= 3 {
        let table = mask_table(g);
        // Heuristic try order: ascending (tail degree, directed degree, id).
        let mut order: Vec<Vertex> = (0..n).collect();
        let profiles: Vec<(usize, usize)> = (0..n).map(|v| g.degree_profile(v)).collect();
        order.sort_by_key(|&v| (profiles[v], v));
        // Seed the incumbent with the greedy order so pruning bites immediately.
        let best = code_body_under(g, &table, &order);
        let mut min = Minimizer {
            n,
            table: &table,
            order,
            perm: vec![0; n],
            used: vec![false; n],
            best,
            cur: Vec::with_capacity(n * n * n / 6),
        };
        min.dfs(0);
        out.extend_from_slice(&min.best);
    }
    Ok(CanonicalCode(out))
}

/// True iff some vertex bijection maps E(g1) onto E(g2) exactly.
pub fn are_isomorphic(
    g1: &DirectedHypergraph,
    g2: &DirectedHypergraph,
) -> Result<bool, TooLarge> {
    for g in [g1, g2] {
        if g.n() > MAX_CANON_N {
            return Err(TooLarge { n: g.n(), max: MAX_CANON_N });
        }
    }
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(g1)? == canonical_code(g2)?)
}

/// Number of vertex bijections fixing the edge set, by pruned permutation
/// search (each completed block must reproduce the graph's own code block).
pub fn automorphism_count(g: &DirectedHypergraph) -> Result<usize, TooLarge> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(TooLarge { n, max: MAX_CANON_N });
    }
    if n < 2 {
        return Ok(1);
    }
    let table = mask_table(g);
    let identity: Vec<Vertex> = (0..n).collect();
    let target = code_body_under(g, &table, &identity);
    let mut m = Minimizer {
        n,
        table: &table,
        order: identity,
        perm: vec![0; n],
        used: vec![false; n],
        best: Vec::new(),
        cur: Vec::new(),
    };
    let mut count = 0usize;
    fn walk(m: &mut Minimizer<'_>, target: &[u8], depth: usize, count: &mut usize) {
        if depth == m.n {
            *count += 1;
            return;
        }
        for cand in 0..m.n {
            if m.used[cand] {
                continue;
            }
            m.used[cand] = true;
            m.perm[depth] = cand;
            let added = if depth >= 2 { m.push_block(depth) } else { 0 };
            if m.cur[..] == target[..m.cur.len()] {
                walk(m, target, depth + 1, count);
            }
            let len = m.cur.len() - added;
            m.cur.truncate(len);
            m.used[cand] = false;
        }
    }
    walk(&mut m, &target, 0, &mut count);
    Ok(count)
}
