//! The 2->1 directed-hypergraph data model: edges `ab -> c` with an unordered
//! tail pair {a,b} and a head c, all three vertices distinct.

use std::fmt;
use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type Vertex = usize;

/// Hard cap on vertex ids imposed by the packed edge representation.
pub const MAX_N: usize = 1 << FIELD_BITS;

const FIELD_BITS: u32 = 21;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("degenerate triple {a} {b} -> {head}: vertices must be pairwise distinct")]
    DegenerateTriple { a: Vertex, b: Vertex, head: Vertex },
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge} already present")]
    Duplicate { edge: Edge },
    #[error("edge {edge} not present")]
    NotPresent { edge: Edge },
}

/// One edge, packed as `lo << 42 | hi << 21 | head` where {lo, hi} is the tail
/// with lo < hi. The derived `Ord` is therefore lexicographic on (lo, hi, head).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(u64);

impl Edge {
    /// Builds `{a,b} -> head`, sorting the tail pair. The vertices must be
    /// pairwise distinct and below [`MAX_N`].
    pub fn new(a: Vertex, b: Vertex, head: Vertex) -> Result<Edge, GraphError> {
        if a == b || a == head || b == head {
            return Err(GraphError::DegenerateTriple { a, b, head });
        }
        for v in [a, b, head] {
            if v >= MAX_N {
                return Err(GraphError::OutOfRange { vertex: v, n: MAX_N });
            }
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Ok(Edge(((lo as u64) << (2 * FIELD_BITS)) | ((hi as u64) << FIELD_BITS) | head as u64))
    }

    pub fn lo(self) -> Vertex {
        (self.0 >> (2 * FIELD_BITS)) as Vertex
    }

    pub fn hi(self) -> Vertex {
        ((self.0 >> FIELD_BITS) & FIELD_MASK) as Vertex
    }

    pub fn head(self) -> Vertex {
        (self.0 & FIELD_MASK) as Vertex
    }

    /// The unordered tail pair, ascending.
    pub fn tail(self) -> (Vertex, Vertex) {
        (self.lo(), self.hi())
    }

    /// All three vertices in storage order (tail-lo, tail-hi, head).
    pub fn vertices(self) -> [Vertex; 3] {
        [self.lo(), self.hi(), self.head()]
    }

    /// The underlying 3-set, sorted ascending.
    pub fn triple(self) -> [Vertex; 3] {
        let mut t = self.vertices();
        t.sort_unstable();
        t
    }

    pub fn has_vertex(self, v: Vertex) -> bool {
        self.lo() == v || self.hi() == v || self.head() == v
    }

    pub fn tail_has(self, v: Vertex) -> bool {
        self.lo() == v || self.hi() == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {}", self.lo(), self.hi(), self.head())
    }
}

// Debug shows "0 1 -> 2", not the packed integer.
impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A 2->1 directed hypergraph on vertices `0..n` with a duplicate-free edge set.
///
/// Edges are kept sorted, so membership is a binary search and iteration order
/// is deterministic. The type is a plain value: clone freely, share read-only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirectedHypergraph {
    n: usize,
    edges: Vec<Edge>,
}

impl DirectedHypergraph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> DirectedHypergraph {
        assert!(n <= MAX_N, "n = {n} exceeds MAX_N = {MAX_N}");
        DirectedHypergraph { n, edges: Vec::new() }
    }

    /// Builds a graph from an arbitrary edge iterator, sorting and validating.
    /// Rejects out-of-range vertices and duplicate edges.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<DirectedHypergraph, GraphError> {
        assert!(n <= MAX_N, "n = {n} exceeds MAX_N = {MAX_N}");
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for &e in &edges {
            for v in e.vertices() {
                if v >= n {
                    return Err(GraphError::OutOfRange { vertex: v, n });
                }
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::Duplicate { edge: w[0] });
            }
        }
        Ok(DirectedHypergraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, sorted ascending by (tail-lo, tail-hi, head).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex, head: Vertex) -> bool {
        Edge::new(a, b, head).map(|e| self.contains_edge(e)).unwrap_or(false)
    }

    fn check_range(&self, e: Edge) -> Result<(), GraphError> {
        for v in e.vertices() {
            if v >= self.n {
                return Err(GraphError::OutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(())
    }

    /// Inserts an edge. A duplicate is an explicit error, not a silent no-op:
    /// search correctness depends on exact edge counts.
    pub fn insert(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check_range(e)?;
        match self.edges.binary_search(&e) {
            Ok(_) => Err(GraphError::Duplicate { edge: e }),
            Err(pos) => {
                self.edges.insert(pos, e);
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex, head: Vertex) -> Result<(), GraphError> {
        self.insert(Edge::new(a, b, head)?)
    }

    pub fn remove(&mut self, e: Edge) -> Result<(), GraphError> {
        match self.edges.binary_search(&e) {
            Ok(pos) => {
                self.edges.remove(pos);
                Ok(())
            }
            Err(_) => Err(GraphError::NotPresent { edge: e }),
        }
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex, head: Vertex) -> Result<(), GraphError> {
        self.remove(Edge::new(a, b, head)?)
    }

    /// True iff no 3-subset of vertices carries two or more edges.
    pub fn is_oriented(&self) -> bool {
        let mut triples: Vec<[Vertex; 3]> = self.edges.iter().map(|e| e.triple()).collect();
        triples.sort_unstable();
        triples.windows(2).all(|w| w[0] != w[1])
    }

    /// Number of edges with head `x` (the size of the tail link graph T_x).
    /// The literature calls this the tail degree of x: the tails of those
    /// edges are what point at x.
    pub fn tail_degree(&self, x: Vertex) -> usize {
        self.edges.iter().filter(|e| e.head() == x).count()
    }

    /// Number of edges with `x` in the tail (the size of D_x).
    pub fn directed_degree(&self, x: Vertex) -> usize {
        self.edges.iter().filter(|e| e.tail_has(x)).count()
    }

    /// `(tail_degree, directed_degree)`, one pass.
    pub fn degree_profile(&self, x: Vertex) -> (usize, usize) {
        let mut t = 0;
        let mut d = 0;
        for e in &self.edges {
            if e.head() == x {
                t += 1;
            } else if e.tail_has(x) {
                d += 1;
            }
        }
        (t, d)
    }

    /// The three link graphs of `x`: T_x (pairs yz with yz -> x), D_x
    /// (ordered pairs y -> z with xy -> z), and their union L_x.
    pub fn link_graphs(&self, x: Vertex) -> Result<LinkBundle, GraphError> {
        if x >= self.n {
            return Err(GraphError::OutOfRange { vertex: x, n: self.n });
        }
        let mut tail_link = Vec::new();
        let mut directed_link = Vec::new();
        for e in &self.edges {
            if e.head() == x {
                tail_link.push((e.lo(), e.hi()));
            } else if e.lo() == x {
                directed_link.push((e.hi(), e.head()));
            } else if e.hi() == x {
                directed_link.push((e.lo(), e.head()));
            }
        }
        tail_link.sort_unstable();
        directed_link.sort_unstable();
        Ok(LinkBundle { center: x, tail_link, directed_link })
    }

    /// Largest possible edge count on `n` vertices: three pointed edges per triple.
    pub fn capacity(n: usize) -> usize {
        3 * n * n.saturating_sub(1) * n.saturating_sub(2) / 6
    }
}

impl fmt::Debug for DirectedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirectedHypergraph(n={}, m={}; ", self.n, self.edges.len())?;
        let mut first = true;
        for e in &self.edges {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, ")")
    }
}

/// One edge of the total link graph L_x.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum LinkEdge {
    /// Pair {y,z} from T_x, stored ascending.
    Undirected(Vertex, Vertex),
    /// Pair y -> z from D_x.
    Directed(Vertex, Vertex),
}

/// The link graphs of one vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkBundle {
    pub center: Vertex,
    /// T_x: unordered pairs (lo, hi), sorted.
    pub tail_link: Vec<(Vertex, Vertex)>,
    /// D_x: ordered pairs (tail, head), sorted.
    pub directed_link: Vec<(Vertex, Vertex)>,
}

impl LinkBundle {
    /// |T_x|, the tail degree of the center.
    pub fn tail_degree(&self) -> usize {
        self.tail_link.len()
    }

    /// L_x as a materialized union of the two link graphs.
    pub fn total_link(&self) -> Vec<LinkEdge> {
        let mut all: Vec<LinkEdge> = self
            .tail_link
            .iter()
            .map(|&(a, b)| LinkEdge::Undirected(a, b))
            .chain(self.directed_link.iter().map(|&(y, z)| LinkEdge::Directed(y, z)))
            .collect();
        all.sort_unstable();
        all
    }
}
