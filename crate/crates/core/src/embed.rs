//! Injective homomorphism search: does a host graph contain a copy of a
//! pattern, and how many labeled copies does it have.
//!
//! An embedding maps pattern vertices injectively into the host so that
//! every pattern edge lands on a host edge, tail pair to tail pair and head
//! to head. The search assigns pattern vertices one at a time, always
//! picking an unassigned vertex with the most edges into the assigned part,
//! and filters host candidates by degree before checking edges.

use crate::graph::{DirectedHypergraph, Edge, Vertex};
use crate::patterns::Pattern;

struct Matcher<'a> {
    host: &'a DirectedHypergraph,
    pattern: &'a DirectedHypergraph,
    /// (tail degree, directed degree) per pattern vertex.
    p_profile: Vec<(usize, usize)>,
    /// Same, per host vertex.
    h_profile: Vec<(usize, usize)>,
    /// Pattern vertex -> host vertex, usize::MAX when unassigned.
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNASSIGNED: usize = usize::MAX;

impl<'a> Matcher<'a> {
    fn new(host: &'a DirectedHypergraph, pattern: &'a DirectedHypergraph) -> Self {
        Matcher {
            host,
            pattern,
            p_profile: (0..pattern.n()).map(|v| pattern.degree_profile(v)).collect(),
            h_profile: (0..host.n()).map(|v| host.degree_profile(v)).collect(),
            map: vec![UNASSIGNED; pattern.n()],
            used: vec![false; host.n()],
        }
    }

    /// The unassigned pattern vertex touching the most edges that already
    /// have an assigned vertex; ties and the all-zero case go to the lowest
    /// index. None when the assignment is complete.
    fn next_vertex(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for pv in 0..self.pattern.n() {
            if self.map[pv] != UNASSIGNED {
                continue;
            }
            let score = self
                .pattern
                .edges()
                .iter()
                .filter(|e| {
                    e.has_vertex(pv)
                        && e.vertices().into_iter().any(|u| self.map[u] != UNASSIGNED)
                })
                .count();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, pv));
            }
        }
        best.map(|(_, pv)| pv)
    }

    /// Can pattern vertex pv map to host vertex hv? Checks injectivity, the
    /// degree filter, and every pattern edge at pv whose vertices would all
    /// be assigned after this placement.
    fn feasible(&self, pv: usize, hv: Vertex) -> bool {
        if self.used[hv]
            || self.h_profile[hv].0 < self.p_profile[pv].0
            || self.h_profile[hv].1 < self.p_profile[pv].1
        {
            return false;
        }
        let image = |v: usize| if v == pv { hv } else { self.map[v] };
        for e in self.pattern.edges() {
            if !e.has_vertex(pv) {
                continue;
            }
            let (a, b, h) = (image(e.lo()), image(e.hi()), image(e.head()));
            if a == UNASSIGNED || b == UNASSIGNED || h == UNASSIGNED {
                continue;
            }
            if !self.host.has_edge(a, b, h) {
                return false;
            }
        }
        true
    }

    /// Extends the current partial assignment every possible way, invoking
    /// the visitor on each complete embedding. The visitor returns true to
    /// stop the whole search; run propagates that.
    fn run(&mut self, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        let Some(pv) = self.next_vertex() else {
            return visit(&self.map);
        };
        for hv in 0..self.host.n() {
            if !self.feasible(pv, hv) {
                continue;
            }
            self.map[pv] = hv;
            self.used[hv] = true;
            let stop = self.run(visit);
            self.map[pv] = UNASSIGNED;
            self.used[hv] = false;
            if stop {
                return true;
            }
        }
        false
    }

    /// Pre-assigns pattern vertex pv to host vertex hv before the search.
    /// Fails (returns false) when the seed is already inconsistent.
    fn seed(&mut self, pv: usize, hv: Vertex) -> bool {
        if !self.feasible(pv, hv) {
            return false;
        }
        self.map[pv] = hv;
        self.used[hv] = true;
        true
    }
}

/// Does the host contain at least one copy of the pattern?
pub fn contains(host: &DirectedHypergraph, pattern: &Pattern) -> bool {
    Matcher::new(host, pattern.graph()).run(&mut |_| true)
}

/// One embedding if any exists, as the vector image[pattern vertex] = host
/// vertex.
pub fn find_embedding(host: &DirectedHypergraph, pattern: &Pattern) -> Option<Vec<Vertex>> {
    let mut found = None;
    Matcher::new(host, pattern.graph()).run(&mut |map| {
        found = Some(map.to_vec());
        true
    });
    found
}

/// Number of labeled embeddings (injective maps). Copies of the pattern as
/// an unlabeled subgraph each contribute automorphism_count embeddings.
pub fn count_embeddings(host: &DirectedHypergraph, pattern: &Pattern) -> usize {
    let mut count = 0;
    Matcher::new(host, pattern.graph()).run(&mut |_| {
        count += 1;
        false
    });
    count
}

/// Number of unlabeled copies: embeddings divided by the automorphism count.
pub fn count_copies(host: &DirectedHypergraph, pattern: &Pattern) -> usize {
    let embeddings = count_embeddings(host, pattern);
    assert_eq!(
        embeddings % pattern.automorphism_count(),
        0,
        "embeddings of {} must split into orbits",
        pattern.name()
    );
    embeddings / pattern.automorphism_count()
}

/// True when the host contains none of the given patterns.
pub fn is_free(host: &DirectedHypergraph, family: &[Pattern]) -> bool {
    family.iter().all(|p| !contains(host, p))
}

/// Incremental freeness test for search: given a host whose edges outside
/// `new_edges` are already known to be family-free, decides freeness of the
/// whole host by looking only for copies that use a new edge. Every such
/// copy must map some pattern edge onto a new edge, so the search anchors
/// each (pattern edge, new edge, tail orientation) triple and extends.
pub fn extension_free(
    host: &DirectedHypergraph,
    family: &[Pattern],
    new_edges: &[Edge],
) -> bool {
    for pattern in family {
        for &ne in new_edges {
            for pe in pattern.graph().edges() {
                let anchors = [(pe.lo(), pe.hi()), (pe.hi(), pe.lo())];
                for (ta, tb) in anchors {
                    let mut m = Matcher::new(host, pattern.graph());
                    if m.seed(ta, ne.lo())
                        && m.seed(tb, ne.hi())
                        && m.seed(pe.head(), ne.head())
                        && m.run(&mut |_| true)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}
