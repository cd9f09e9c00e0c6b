//! Plain-text edge lists.
//!
//! ```text
//! n m
//! u v w
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Weights are written
//! with `Display`, which for floats is the shortest string that parses back
//! to the same value, so `parse_graph(&write_graph(g)) == g`.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

fn field<T: FromStr>(tok: Option<&str>, what: &str, line: usize) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::Malformed {
        line,
        message: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| ParseError::Malformed {
        line,
        message: format!("cannot parse {what} from {tok:?}"),
    })
}

pub fn parse_graph<W: Weight>(text: &str) -> Result<WeightedGraph<W>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut tok = header.split_whitespace();
    let n: usize = field(tok.next(), "vertex count", hline)?;
    let m: usize = field(tok.next(), "edge count", hline)?;
    if let Some(extra) = tok.next() {
        return Err(ParseError::Malformed {
            line: hline,
            message: format!("unexpected token {extra:?} in header"),
        });
    }
    let mut raw = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut tok = text.split_whitespace();
        let u: usize = field(tok.next(), "endpoint u", line)?;
        let v: usize = field(tok.next(), "endpoint v", line)?;
        let w: W = field(tok.next(), "weight", line)?;
        if let Some(extra) = tok.next() {
            return Err(ParseError::Malformed {
                line,
                message: format!("unexpected token {extra:?}"),
            });
        }
        // validate one edge at a time so errors carry the line number
        WeightedGraph::normalize([(u, v, w)], n).map_err(|source| ParseError::Graph { line, source })?;
        raw.push((u, v, w));
    }
    if raw.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: raw.len(),
        });
    }
    WeightedGraph::normalize(raw, n).map_err(|source| ParseError::Graph { line: hline, source })
}

pub fn write_graph<W: Weight>(g: &WeightedGraph<W>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g: WeightedGraph<f64> = parse_graph("2 1\n0 1 1.5\n").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edge(0).weight, 1.5);
        assert_eq!(write_graph(&g), "2 1\n0 1 1.5\n");
    }

    #[test]
    fn count_mismatch() {
        assert_eq!(
            parse_graph::<f64>("2 2\n0 1 1\n"),
            Err(ParseError::EdgeCountMismatch {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph::<f64>("3 2\n0 1 1\n# note\n0 x 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 4, .. }), "{err}");
        let err = parse_graph::<f64>("3 1\n0 3 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 2, .. }), "{err}");
        let err = parse_graph::<f64>("3 1\n0 1 -1\n").unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 2, .. }), "{err}");
        assert_eq!(parse_graph::<f64>(""), Err(ParseError::MissingHeader));
        assert!(parse_graph::<f64>("3 1\n0 1 1 7\n").is_err());
    }

    #[test]
    fn awkward_floats_round_trip() {
        let g = WeightedGraph::normalize(
            [(0, 1, 0.1 + 0.2), (1, 2, 1e-300), (0, 2, 123456789.123456789)],
            3,
        )
        .unwrap();
        assert_eq!(parse_graph::<f64>(&write_graph(&g)).unwrap(), g);
    }
}
