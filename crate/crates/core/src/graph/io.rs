//! Plain edge-list and Matrix Market (coordinate pattern) readers.

use std::io::BufRead;

use crate::error::ParseError;

/// Edge pairs exactly as read, before any cleaning.
///
/// `vertices` lists extra labels that must exist even without incident
/// edges; file readers leave it empty, generators use it for isolated
/// vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawEdges {
    pub pairs: Vec<(u64, u64)>,
    pub vertices: Vec<u64>,
}

impl RawEdges {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Self { pairs: pairs.into_iter().collect(), vertices: Vec::new() }
    }

    /// Edges over the labels `0..n`, keeping every label as a vertex.
    pub fn with_vertex_count(n: u64, pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Self { pairs: pairs.into_iter().collect(), vertices: (0..n).collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// Detect a `%%MatrixMarket` banner; otherwise a plain edge list.
    #[default]
    Auto,
    EdgeList,
    /// The first non-comment line is a dimension line and is skipped.
    MatrixMarket,
}

/// Reads whitespace-separated integer pairs, one edge per line.
///
/// Lines starting with `%` or `#` are comments. Columns after the second
/// (weights, timestamps) are ignored.
pub fn load_edge_list<R: BufRead>(source: R, hint: Option<InputFormat>) -> Result<RawEdges, ParseError> {
    let hint = hint.unwrap_or_default();
    let mut skip_dimension_line = hint == InputFormat::MatrixMarket;
    let mut pairs = Vec::new();

    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.starts_with("%%MatrixMarket") {
            if hint != InputFormat::EdgeList {
                skip_dimension_line = true;
            }
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        if skip_dimension_line {
            skip_dimension_line = false;
            continue;
        }

        let mut tokens = trimmed.split_whitespace();
        let a = parse_label(tokens.next(), lineno)?;
        let b = parse_label(tokens.next(), lineno)?;
        pairs.push((a, b));
    }

    Ok(RawEdges { pairs, vertices: Vec::new() })
}

fn parse_label(token: Option<&str>, line: usize) -> Result<u64, ParseError> {
    let token = token.ok_or_else(|| ParseError::Malformed {
        line,
        message: "expected two vertex labels".to_string(),
    })?;
    token.parse::<u64>().map_err(|_| ParseError::Malformed {
        line,
        message: format!("invalid vertex label {token:?}"),
    })
}
