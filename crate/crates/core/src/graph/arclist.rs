//! Plain-text arc-list format.
//!
//! ```text
//! # optional comment lines
//! <n> <m> [multi]
//! <tail> <head>      (m lines)
//! ```
//!
//! Lines starting with `#` and blank lines are skipped. The `multi` token
//! allows digons; without it the digraph is oriented.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::Digraph;

/// Parse failure. `line` is 1-based in the input text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input: missing \"<n> <m>\" header")]
    MissingHeader,
    #[error("line {line}: malformed: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arc {tail} -> {head}")]
    DuplicateArc { line: usize, tail: usize, head: usize },
    #[error("line {line}: arc {tail} -> {head} forms a digon in an oriented digraph")]
    Digon { line: usize, tail: usize, head: usize },
    #[error("header announces {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
}

fn number(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Malformed {
        line,
        reason: format!("expected a non-negative integer, got {tok:?}"),
    })
}

impl Digraph {
    /// Parses the arc-list text format.
    pub fn parse_arclist(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

        let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let toks: Vec<&str> = header.split_ascii_whitespace().collect();
        let (n, m, oriented) = match toks.as_slice() {
            [n, m] => (number(n, hline)?, number(m, hline)?, true),
            [n, m, "multi"] => (number(n, hline)?, number(m, hline)?, false),
            _ => {
                return Err(ParseError::Malformed {
                    line: hline,
                    reason: "header must be \"<n> <m>\" or \"<n> <m> multi\"".into(),
                })
            }
        };

        let mut seen = HashSet::new();
        let mut arcs = Vec::with_capacity(m);
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_ascii_whitespace().collect();
            let [t, h] = toks.as_slice() else {
                return Err(ParseError::Malformed {
                    line,
                    reason: "arc line must be \"<tail> <head>\"".into(),
                });
            };
            let (tail, head) = (number(t, line)?, number(h, line)?);
            for vertex in [tail, head] {
                if vertex >= n {
                    return Err(ParseError::VertexOutOfRange { line, vertex, n });
                }
            }
            if tail == head {
                return Err(ParseError::Loop { line, vertex: tail });
            }
            if !seen.insert((tail, head)) {
                return Err(ParseError::DuplicateArc { line, tail, head });
            }
            if oriented && seen.contains(&(head, tail)) {
                return Err(ParseError::Digon { line, tail, head });
            }
            arcs.push((tail, head));
        }
        if arcs.len() != m {
            return Err(ParseError::ArcCount { expected: m, found: arcs.len() });
        }
        Ok(Digraph::new(n, arcs, oriented).expect("arcs validated while parsing"))
    }

    /// Serializes to the arc-list format: header, then arcs in ascending
    /// `(tail, head)` order, LF line endings, trailing newline.
    pub fn to_arclist(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{} {}", self.n(), self.arc_count());
        if !self.is_oriented() {
            s.push_str(" multi");
        }
        s.push('\n');
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_directed_triangle() {
        let d = Digraph::parse_arclist("3 3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(d, Digraph::directed_cycle(3));
        assert!(d.is_oriented());
    }

    #[test]
    fn parses_single_vertex() {
        let d = Digraph::parse_arclist("1 0").unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.arc_count(), 0);
    }

    #[test]
    fn digon_rejected_unless_multi() {
        assert_eq!(
            Digraph::parse_arclist("2 2\n0 1\n1 0"),
            Err(ParseError::Digon { line: 3, tail: 1, head: 0 })
        );
        let d = Digraph::parse_arclist("2 2 multi\n0 1\n1 0").unwrap();
        assert!(!d.is_oriented());
    }

    #[test]
    fn errors_name_the_line() {
        let text = "# comment\n3 2\n0 1\n0 7\n";
        assert_eq!(
            Digraph::parse_arclist(text),
            Err(ParseError::VertexOutOfRange { line: 4, vertex: 7, n: 3 })
        );
        assert_eq!(
            Digraph::parse_arclist("3 2\n0 1\n0 1\n"),
            Err(ParseError::DuplicateArc { line: 3, tail: 0, head: 1 })
        );
        assert_eq!(
            Digraph::parse_arclist("3 1\n2 2\n"),
            Err(ParseError::Loop { line: 2, vertex: 2 })
        );
        assert!(matches!(
            Digraph::parse_arclist("3 1\n0 x\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert_eq!(
            Digraph::parse_arclist("3 2\n0 1\n"),
            Err(ParseError::ArcCount { expected: 2, found: 1 })
        );
        assert_eq!(Digraph::parse_arclist("# only\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn emits_exact_text() {
        let d = Digraph::from_arcs(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(d.to_arclist(), "3 2\n0 1\n2 0\n");
        let m = Digraph::new(2, [(1, 0), (0, 1)], false).unwrap();
        assert_eq!(m.to_arclist(), "2 2 multi\n0 1\n1 0\n");
    }
}
