//! The dhg graph file format. Line-oriented UTF-8: a `dhg 1` header, an
//! `n <N>` line, then one `<i> <j> -> <k>` line per edge. Blank lines and
//! `#` comments are skipped anywhere. Writing is bit-exact: edges come out
//! sorted, so write-after-parse is a canonical form.

use dhg_core::graph::{DirectedHypergraph, Edge, MAX_N};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    BadHeader { line: usize, found: String },
    BadVertex { line: usize, detail: String },
    DuplicateEdge { line: usize },
    Syntax { line: usize, detail: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::BadHeader { line, found } => {
                write!(f, "line {line}: expected header `dhg 1`, found {found:?}")
            }
            ParseError::BadVertex { line, detail } => write!(f, "line {line}: {detail}"),
            ParseError::DuplicateEdge { line } => write!(f, "line {line}: duplicate edge"),
            ParseError::Syntax { line, detail } => write!(f, "line {line}: {detail}"),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_graph_file(text: &str) -> Result<DirectedHypergraph, ParseError> {
    let eof = text.lines().count() + 1;
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            None
        } else {
            Some((i + 1, s))
        }
    });

    let (line, header) = lines
        .next()
        .ok_or(ParseError::BadHeader { line: eof, found: String::new() })?;
    if header != "dhg 1" {
        return Err(ParseError::BadHeader { line, found: header.to_string() });
    }

    let (line, decl) = lines.next().ok_or(ParseError::Syntax {
        line: eof,
        detail: "expected `n <N>` after the header".to_string(),
    })?;
    let n = match decl.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", digits] => digits.parse::<usize>().map_err(|_| ParseError::Syntax {
            line,
            detail: format!("bad vertex count {digits:?}"),
        })?,
        _ => {
            return Err(ParseError::Syntax {
                line,
                detail: format!("expected `n <N>`, found {decl:?}"),
            })
        }
    };
    if n > MAX_N {
        return Err(ParseError::Syntax {
            line,
            detail: format!("n = {n} exceeds the supported maximum {MAX_N}"),
        });
    }

    let mut g = DirectedHypergraph::new(n);
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let (i, j, k) = match fields.as_slice() {
            [i, j, "->", k] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| ParseError::Syntax {
                        line,
                        detail: format!("bad vertex {s:?}"),
                    })
                };
                (parse(i)?, parse(j)?, parse(k)?)
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    detail: format!("expected `<i> <j> -> <k>`, found {text:?}"),
                })
            }
        };
        for v in [i, j, k] {
            if v >= n {
                return Err(ParseError::BadVertex {
                    line,
                    detail: format!("vertex {v} out of range for n = {n}"),
                });
            }
        }
        if i >= j {
            return Err(ParseError::BadVertex {
                line,
                detail: format!("tail must be ascending: {i} {j}"),
            });
        }
        if k == i || k == j {
            return Err(ParseError::BadVertex {
                line,
                detail: format!("head {k} lies in the tail"),
            });
        }
        let e = Edge::new(i, j, k).expect("vertices validated above");
        if g.insert(e).is_err() {
            return Err(ParseError::DuplicateEdge { line });
        }
    }
    Ok(g)
}

pub fn write_graph_file(g: &DirectedHypergraph) -> String {
    let mut out = format!("dhg 1\nn {}\n", g.n());
    for e in g.edges() {
        out.push_str(&format!("{} {} -> {}\n", e.lo(), e.hi(), e.head()));
    }
    out
}
