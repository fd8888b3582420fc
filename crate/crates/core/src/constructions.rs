//! Lower-bound and extremal constructions, closed-form evaluators, and the
//! b-maximizer analysis behind the R4 threshold arguments.

use crate::graph::{DirectedHypergraph, Edge};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad parameter: {0}")]
pub struct BadParam(pub String);

pub(crate) fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn binom3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Two parts T = [0, t) and K = [t, n); every pair in T points at every vertex
/// of K. R4-free: each edge's head has empty directed link. Default t maximizes
/// C(t,2)(n-t).
pub fn r4_construction(n: usize, t: Option<usize>) -> Result<DirectedHypergraph, BadParam> {
    let t = t.unwrap_or((2 * n).div_ceil(3));
    if t > n {
        return Err(BadParam(format!("t = {t} exceeds n = {n}")));
    }
    let mut edges = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            for k in t..n {
                edges.push(Edge::new(i, j, k).unwrap());
            }
        }
    }
    Ok(DirectedHypergraph::from_edges(n, edges).unwrap())
}

/// Two parts A = [0, a) and B = [a, n); pairs inside either part point at every
/// vertex of the other part. R3-free. Default a maximizes the edge count.
pub fn r3_construction(n: usize, a: Option<usize>) -> Result<DirectedHypergraph, BadParam> {
    let a = a.unwrap_or(n.div_ceil(2));
    if a > n {
        return Err(BadParam(format!("a = {a} exceeds n = {n}")));
    }
    let mut edges = Vec::new();
    for i in 0..a {
        for j in i + 1..a {
            for k in a..n {
                edges.push(Edge::new(i, j, k).unwrap());
            }
        }
    }
    for i in a..n {
        for j in i + 1..n {
            for k in 0..a {
                edges.push(Edge::new(i, j, k).unwrap());
            }
        }
    }
    Ok(DirectedHypergraph::from_edges(n, edges).unwrap())
}

/// One edge per triple, head = largest vertex. Oriented and Escher-free.
pub fn transitive_tournament(n: usize) -> DirectedHypergraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                edges.push(Edge::new(a, b, c).unwrap());
            }
        }
    }
    DirectedHypergraph::from_edges(n, edges).unwrap()
}

/// The transitive tournament plus the two extra pointed edges on the smallest
/// triple: {02 -> 1, 12 -> 0}. C(n,3) + 2 edges, Escher-free.
pub fn escher_h1(n: usize) -> Result<DirectedHypergraph, BadParam> {
    if n < 3 {
        return Err(BadParam(format!("escher_h1 needs n >= 3, got {n}")));
    }
    let mut g = transitive_tournament(n);
    g.add_edge(0, 2, 1).unwrap();
    g.add_edge(1, 2, 0).unwrap();
    Ok(g)
}

/// The second extremal Escher-free shape: start from escher_h1, drop
/// {12 -> 3, 12 -> 0}, add {03 -> 1, 03 -> 2}. Same size, not isomorphic to h1.
pub fn escher_h2(n: usize) -> Result<DirectedHypergraph, BadParam> {
    if n < 4 {
        return Err(BadParam(format!("escher_h2 needs n >= 4, got {n}")));
    }
    let mut g = escher_h1(n).unwrap();
    g.remove_edge(1, 2, 3).unwrap();
    g.remove_edge(1, 2, 0).unwrap();
    g.add_edge(0, 3, 1).unwrap();
    g.add_edge(0, 3, 2).unwrap();
    Ok(g)
}

/// Gives every vertex a balanced complete (k-2)-partite tail link on the other
/// n-1 vertices, which is K_{k-1}-free, so the whole graph is TT_k-free.
/// Class membership rotates with the center's index to keep the output
/// deterministic; any assignment with the stated per-vertex property would do.
pub fn ttk_lower_construction(n: usize, k: usize) -> Result<DirectedHypergraph, BadParam> {
    if k < 3 {
        return Err(BadParam(format!("ttk_lower_construction needs k >= 3, got {k}")));
    }
    if n == 0 {
        return Err(BadParam("ttk_lower_construction needs n >= 1".into()));
    }
    let parts = k - 2;
    let mut edges = Vec::new();
    for x in 0..n {
        let others: Vec<usize> = (0..n - 1).map(|i| (x + 1 + i) % n).collect();
        for i in 0..others.len() {
            for j in i + 1..others.len() {
                if i % parts != j % parts {
                    edges.push(Edge::new(others[i], others[j], x).unwrap());
                }
            }
        }
    }
    Ok(DirectedHypergraph::from_edges(n, edges).unwrap())
}

/// The closed forms for the catalog extremal numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// floor(n/3) * C(ceil(2n/3), 2)
    R4Extremal,
    /// floor(n/2) * ceil(n/2) * (n-2)/2
    R3Extremal,
    /// C(n,3) + 2
    EStandard,
    /// C(n,3)
    EOriented,
    /// n * floor((n-1)/2) * ceil((n-1)/2)
    Tt4Minus,
    /// n * ((n-1)/(k-2))^2 * C(k-2, 2), defined when (k-2) divides (n-1)
    TtkLower,
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormulaId::R4Extremal => "R4_EXTREMAL",
            FormulaId::R3Extremal => "R3_EXTREMAL",
            FormulaId::EStandard => "E_STANDARD",
            FormulaId::EOriented => "E_ORIENTED",
            FormulaId::Tt4Minus => "TT4_MINUS",
            FormulaId::TtkLower => "TTK_LOWER",
        })
    }
}

/// Exact integer value of the closed form. Everything stays in u64; the
/// R3 product is always even, asserted rather than floated.
pub fn formula(id: FormulaId, n: usize, k: Option<usize>) -> Result<u64, BadParam> {
    let n64 = n as u64;
    Ok(match id {
        FormulaId::R4Extremal => (n64 / 3) * binom2((2 * n64).div_ceil(3)),
        FormulaId::R3Extremal => {
            if n < 2 {
                0
            } else {
                let prod = (n64 / 2) * n64.div_ceil(2) * (n64 - 2);
                assert_eq!(prod % 2, 0, "R3 closed form is integral");
                prod / 2
            }
        }
        FormulaId::EStandard => binom3(n64) + 2,
        FormulaId::EOriented => binom3(n64),
        FormulaId::Tt4Minus => {
            if n == 0 {
                0
            } else {
                let m = n64 - 1;
                n64 * (m / 2) * m.div_ceil(2)
            }
        }
        FormulaId::TtkLower => {
            let k = k.ok_or_else(|| BadParam("TTK_LOWER requires k".into()))?;
            if k < 3 {
                return Err(BadParam(format!("TTK_LOWER needs k >= 3, got {k}")));
            }
            if n == 0 {
                return Err(BadParam("TTK_LOWER needs n >= 1".into()));
            }
            if (n - 1) % (k - 2) != 0 {
                return Err(BadParam(format!(
                    "TTK_LOWER needs (n-1) divisible by (k-2); n = {n}, k = {k}"
                )));
            }
            let part = ((n - 1) / (k - 2)) as u64;
            n64 * part * part * binom2((k - 2) as u64)
        }
    })
}

/// Full value table of f(b) = floor((n-b)/3) * C(ceil(2(n-b)/3), 2) + c*n*b
/// over b in [0, n], with its exact argmax set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximizerReport {
    pub n: usize,
    pub c: u64,
    /// values[b] = f(b).
    pub values: Vec<u64>,
    /// All b attaining the maximum, ascending.
    pub argmax: Vec<usize>,
    /// Whether c is one of the two values the threshold analysis uses.
    pub theorem_c: bool,
}

impl MaximizerReport {
    pub fn max_value(&self) -> u64 {
        self.values[self.argmax[0]]
    }
}

pub fn theorem2_maximizer(n: usize, c: u64) -> MaximizerReport {
    let values: Vec<u64> = (0..=n)
        .map(|b| {
            let m = (n - b) as u64;
            (m / 3) * binom2((2 * m).div_ceil(3)) + c * n as u64 * b as u64
        })
        .collect();
    let max = *values.iter().max().expect("b = 0 always exists");
    let argmax = values
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == max)
        .map(|(b, _)| b)
        .collect();
    MaximizerReport { n, c, values, argmax, theorem_c: c == 2 || c == 5 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r4_sizes() {
        assert_eq!(r4_construction(6, Some(4)).unwrap().edge_count(), 12);
        assert_eq!(r4_construction(3, Some(2)).unwrap().edge_count(), 1);
        // default t = ceil(2*29/3) = 20: C(20,2) * 9
        assert_eq!(r4_construction(29, None).unwrap().edge_count(), 1710);
        assert!(r4_construction(3, Some(4)).is_err());
    }

    #[test]
    fn r3_sizes() {
        assert_eq!(r3_construction(6, Some(3)).unwrap().edge_count(), 18);
        assert_eq!(r3_construction(4, Some(2)).unwrap().edge_count(), 4);
        assert_eq!(r3_construction(2, Some(1)).unwrap().edge_count(), 0);
    }

    #[test]
    fn tournament_shape() {
        let g = transitive_tournament(3);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1, 2));
        let g5 = transitive_tournament(5);
        assert_eq!(g5.edge_count(), 10);
        assert!(g5.is_oriented());
    }

    #[test]
    fn escher_sizes() {
        assert_eq!(escher_h1(3).unwrap().edge_count(), 3);
        assert_eq!(escher_h1(4).unwrap().edge_count(), 6);
        assert_eq!(escher_h2(4).unwrap().edge_count(), 6);
        assert!(escher_h1(2).is_err());
        assert!(escher_h2(3).is_err());
        // h1 is the tournament plus two edges on the smallest triple
        let h1 = escher_h1(4).unwrap();
        assert!(h1.has_edge(0, 2, 1) && h1.has_edge(1, 2, 0));
        assert!(!h1.is_oriented());
    }

    #[test]
    fn ttk_sizes() {
        // n=5, k=4: each tail link is complete bipartite 2+2
        assert_eq!(ttk_lower_construction(5, 4).unwrap().edge_count(), 20);
        // n=4, k=4: tail links are bipartite 1+2
        assert_eq!(ttk_lower_construction(4, 4).unwrap().edge_count(), 8);
        assert!(ttk_lower_construction(5, 2).is_err());
        assert!(ttk_lower_construction(0, 4).is_err());
    }

    #[test]
    fn ttk_tail_links_are_balanced_multipartite() {
        let g = ttk_lower_construction(7, 4).unwrap();
        // every tail link must have C(6,2) - 2*C(3,2) = 9 edges
        for x in 0..7 {
            assert_eq!(g.tail_degree(x), 9);
        }
        assert_eq!(g.edge_count(), 63);
    }

    #[test]
    fn formula_values() {
        assert_eq!(formula(FormulaId::R3Extremal, 5, None).unwrap(), 9);
        assert_eq!(formula(FormulaId::R3Extremal, 4, None).unwrap(), 4);
        assert_eq!(formula(FormulaId::R3Extremal, 6, None).unwrap(), 18);
        assert_eq!(formula(FormulaId::EStandard, 5, None).unwrap(), 12);
        assert_eq!(formula(FormulaId::EOriented, 5, None).unwrap(), 10);
        assert_eq!(formula(FormulaId::Tt4Minus, 5, None).unwrap(), 20);
        assert_eq!(formula(FormulaId::Tt4Minus, 4, None).unwrap(), 8);
        assert_eq!(formula(FormulaId::R4Extremal, 29, None).unwrap(), 1710);
        assert_eq!(formula(FormulaId::TtkLower, 5, Some(4)).unwrap(), 20);
        assert!(formula(FormulaId::TtkLower, 6, Some(4)).is_err());
        assert!(formula(FormulaId::TtkLower, 5, None).is_err());
    }

    #[test]
    fn construction_sizes_match_formulas() {
        for n in 0..60 {
            assert_eq!(
                r4_construction(n, None).unwrap().edge_count() as u64,
                formula(FormulaId::R4Extremal, n, None).unwrap(),
                "r4 at n = {n}"
            );
            if n >= 2 {
                assert_eq!(
                    r3_construction(n, None).unwrap().edge_count() as u64,
                    formula(FormulaId::R3Extremal, n, None).unwrap(),
                    "r3 at n = {n}"
                );
            }
            assert_eq!(
                transitive_tournament(n).edge_count() as u64,
                formula(FormulaId::EOriented, n, None).unwrap()
            );
        }
    }

    #[test]
    fn maximizer_thresholds() {
        assert_eq!(theorem2_maximizer(29, 2).argmax, vec![0]);
        let below = theorem2_maximizer(28, 2);
        assert_eq!(below.argmax, vec![28]);
        assert_eq!(below.max_value(), 1568);
        let tie = theorem2_maximizer(69, 5);
        assert_eq!(tie.argmax, vec![0, 69]);
        assert_eq!(tie.values[0], 23805);
        assert_eq!(tie.values[69], 23805);
        assert!(theorem2_maximizer(10, 3).theorem_c == false);
        assert!(theorem2_maximizer(10, 5).theorem_c);
    }
}
