//! Text formats: DIMACS-style edge lists, matching files and DOT export.
//!
//! Edge lists look like
//!
//! ```text
//! c optional comments
//! p edge 3 2
//! e 1 2
//! e 2 3
//! ```
//!
//! Files are 1-indexed, graphs in memory are 0-indexed. Matching files use
//! `m <u> <v>` lines with the same indexing and the same comment syntax.

use std::fmt::Write as _;

use thiserror::Error;

use crate::extremal::SixLabeling;
use crate::graph::{Edge, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header {0:?}, expected `p edge <n> <m>`")]
    MalformedHeader(String),
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("edge before header")]
    EdgeBeforeHeader,
    #[error("malformed line {0:?}")]
    MalformedLine(String),
    #[error("vertex index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("missing header")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses an edge list, discarding comments.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    parse_annotated(text).map(|(g, _)| g)
}

/// Parses an edge list and also returns the body of every comment line
/// (the text after the leading `c`, trimmed), in file order.
pub fn parse_annotated(text: &str) -> Result<(Graph, Vec<String>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut comments = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("c") => comments.push(line[1..].trim().to_string()),
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateHeader));
                }
                let rest: Vec<&str> = tokens.collect();
                let parsed = match rest.as_slice() {
                    ["edge", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                match parsed {
                    Some(h) => header = Some(h),
                    None => {
                        return Err(err(
                            line_no,
                            ParseErrorKind::MalformedHeader(line.to_string()),
                        ))
                    }
                }
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(err(line_no, ParseErrorKind::EdgeBeforeHeader));
                };
                let (u, v) = parse_pair(tokens, line, line_no, n)?;
                edges.push((u, v));
            }
            _ => {
                return Err(err(
                    line_no,
                    ParseErrorKind::MalformedLine(line.to_string()),
                ))
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if edges.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    let g = Graph::new(n, edges).map_err(|e| match e {
        GraphError::Loop(v) => err(last_line, ParseErrorKind::Loop(v + 1)),
        other => err(last_line, ParseErrorKind::MalformedLine(other.to_string())),
    })?;
    Ok((g, comments))
}

fn parse_pair<'a>(
    mut tokens: impl Iterator<Item = &'a str>,
    line: &str,
    line_no: usize,
    n: usize,
) -> Result<Edge, ParseError> {
    let malformed = || err(line_no, ParseErrorKind::MalformedLine(line.to_string()));
    let u: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    let v: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    if tokens.next().is_some() {
        return Err(malformed());
    }
    for index in [u, v] {
        if index == 0 || index > n {
            return Err(err(line_no, ParseErrorKind::OutOfRange { index, n }));
        }
    }
    if u == v {
        return Err(err(line_no, ParseErrorKind::Loop(u)));
    }
    Ok((u - 1, v - 1))
}

/// Canonical rendering: header, then edges in ascending order, 1-indexed.
pub fn render_edge_list(g: &Graph) -> String {
    render_annotated(g, &[])
}

/// Like [`render_edge_list`], with `c <comment>` lines ahead of the header.
pub fn render_annotated(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses `m <u> <v>` lines (1-indexed) for a graph of order `n`.
///
/// Only the syntax and index range are checked here; whether the pairs form
/// a matching of a particular graph is the caller's business.
pub fn parse_matching(text: &str, n: usize) -> Result<Vec<Edge>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("c") => {}
            Some("m") => out.push(parse_pair(tokens, line, line_no, n)?),
            _ => {
                return Err(err(
                    line_no,
                    ParseErrorKind::MalformedLine(line.to_string()),
                ))
            }
        }
    }
    Ok(out)
}

pub fn render_matching(edges: &[Edge]) -> String {
    let mut out = String::new();
    for &(u, v) in edges {
        let _ = writeln!(out, "m {} {}", u + 1, v + 1);
    }
    out
}

/// A named edge set drawn with its own style in DOT output.
#[derive(Debug, Clone)]
pub struct EdgeHighlight {
    pub name: String,
    pub edges: Vec<Edge>,
}

const HIGHLIGHT_STYLES: [&str; 4] = [
    "color=red, penwidth=2.5",
    "color=blue, style=dashed, penwidth=2",
    "color=darkgreen, style=dotted, penwidth=2",
    "color=orange, style=bold",
];

/// Renders `g` as an undirected DOT graph with 1-indexed node names, as in
/// edge-list files. Labeled vertices show their class;
/// an edge listed in several highlights takes the style of the first one.
pub fn to_dot(
    g: &Graph,
    labeling: Option<&SixLabeling>,
    highlights: &[EdgeHighlight],
) -> Result<String, GraphError> {
    if let Some(l) = labeling {
        if l.len() > g.order() {
            return Err(GraphError::UnknownVertex {
                vertex: l.len() - 1,
                n: g.order(),
            });
        }
    }
    for h in highlights {
        for &(u, v) in &h.edges {
            if !g.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
        }
    }
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        match labeling.and_then(|l| l.class(v)) {
            Some(class) => {
                let _ = writeln!(out, "  {} [label=\"{}:{class}\", group={class}];", v + 1, v + 1);
            }
            None => {
                let _ = writeln!(out, "  {};", v + 1);
            }
        }
    }
    for &(u, v) in g.edges() {
        let style = highlights
            .iter()
            .position(|h| h.edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v)))
            .map(|i| {
                format!(
                    " [{}, label=\"{}\"]",
                    HIGHLIGHT_STYLES[i % HIGHLIGHT_STYLES.len()],
                    highlights[i].name
                )
            })
            .unwrap_or_default();
        let _ = writeln!(out, "  {} -- {}{style};", u + 1, v + 1);
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k2() {
        let g = parse_edge_list("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, Graph::new(2, [(0, 1)]).unwrap());
    }

    #[test]
    fn comments_anywhere() {
        let (g, comments) =
            parse_annotated("c hello\np edge 3 1\nc  mid \ne 3 1\n\n").unwrap();
        assert_eq!(g.edges(), &[(0, 2)]);
        assert_eq!(comments, vec!["hello".to_string(), "mid".to_string()]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_edge_list("e 1 2\n").unwrap_err();
        assert_eq!(e, err(1, ParseErrorKind::EdgeBeforeHeader));
        assert!(e.to_string().contains("edge before header"));

        let e = parse_edge_list("c x\np edges 2 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::MalformedHeader(_)));

        let e = parse_edge_list("p edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(e, err(2, ParseErrorKind::OutOfRange { index: 3, n: 2 }));

        let e = parse_edge_list("p edge 2 1\ne 0 1\n").unwrap_err();
        assert_eq!(e.line, 2);

        let e = parse_edge_list("p edge 2 2\ne 1 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::EdgeCountMismatch { .. }));

        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("p edge 2 1\np edge 2 1\ne 1 2\n").is_err());
        assert!(parse_edge_list("p edge 2 1\ne 2 2\n").is_err());
        assert!(parse_edge_list("p edge 2 1\nx 1 2\n").is_err());
    }

    #[test]
    fn render_is_canonical() {
        let text = "p edge 4 3\ne 4 3\ne 1 2\ne 3 2\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(render_edge_list(&g), "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    }

    #[test]
    fn matching_file() {
        let m = parse_matching("c max\nm 1 2\nm 4 3\n", 4).unwrap();
        assert_eq!(m, vec![(0, 1), (3, 2)]);
        assert_eq!(render_matching(&m), "m 1 2\nm 4 3\n");
        assert!(parse_matching("m 1 5\n", 4).is_err());
        assert!(parse_matching("e 1 2\n", 4).is_err());
    }

    #[test]
    fn dot_output() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let dot = to_dot(&k2, None, &[]).unwrap();
        assert_eq!(dot, "graph G {\n  1;\n  2;\n  1 -- 2;\n}\n");

        let empty = to_dot(&Graph::empty(0), None, &[]).unwrap();
        assert_eq!(empty, "graph G {\n}\n");

        let hl = [EdgeHighlight {
            name: "M".into(),
            edges: vec![(1, 0)],
        }];
        let dot = to_dot(&k2, None, &hl).unwrap();
        assert!(dot.contains("1 -- 2 [color=red"));

        let bad = [EdgeHighlight {
            name: "M".into(),
            edges: vec![(0, 2)],
        }];
        assert!(to_dot(&Graph::empty(3), None, &bad).is_err());
    }
}
