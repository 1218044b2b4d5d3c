//! graph6 and plain edge-list text formats.
//!
//! graph6 is the standard one-line ASCII encoding for simple undirected
//! graphs: a size header (short form for n ≤ 62, `~`-prefixed long form
//! above), then the upper triangle of the adjacency matrix packed
//! column-major into 6-bit groups offset by 63. The optional
//! `>>graph6<<` prefix is neither accepted nor emitted. Encoding always
//! produces the canonical minimal-length form, so
//! `to_graph6(from_graph6(s)) == s` byte-for-byte whenever `s` is canonical.

use super::{Graph, GraphError, MAX_VERTICES};

/// Parse failures for graph6 lines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    /// Empty input, a byte outside `63..=126` where a size header was
    /// expected, or a truncated long-form size header.
    #[error("malformed graph6 size header")]
    MalformedHeader,
    /// The encoded order exceeds the 64-vertex build limit.
    #[error("graph6 order {n} exceeds the {MAX_VERTICES}-vertex limit")]
    TooLarge { n: usize },
    /// Fewer body bytes than the order requires.
    #[error("truncated graph6 bit body: expected {expected} bytes, found {found}")]
    TruncatedBody { expected: usize, found: usize },
    /// More body bytes than the order requires.
    #[error("trailing data after graph6 bit body: {extra} extra bytes")]
    TrailingData { extra: usize },
    /// A body byte outside the printable range `63..=126`.
    #[error("invalid graph6 body byte at offset {offset}")]
    InvalidByte { offset: usize },
    /// Set bits in the zero padding of the final 6-bit group.
    #[error("nonzero padding bits in graph6 body")]
    NonzeroPadding,
}

/// Parse failures for the `"n m\nu v\n..."` edge-list format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EdgeListError {
    #[error("edge list header must be two integers \"n m\"")]
    BadHeader,
    #[error("unparseable edge on line {line}")]
    BadEdge { line: usize },
    #[error("edge list declares {expected} edges but contains {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let &first = bytes.first().ok_or(Graph6Error::MalformedHeader)?;
    match first {
        126 => {
            if bytes.len() >= 2 && bytes[1] == 126 {
                // 8-byte form, n >= 258048: always beyond the build limit,
                // but decode it so the error can report the order.
                if bytes.len() < 8 || bytes[2..8].iter().any(|&b| !(63..=126).contains(&b)) {
                    return Err(Graph6Error::MalformedHeader);
                }
                let mut n = 0usize;
                for &b in &bytes[2..8] {
                    n = n << 6 | (b - 63) as usize;
                }
                Err(Graph6Error::TooLarge { n })
            } else {
                if bytes.len() < 4 || bytes[1..4].iter().any(|&b| !(63..=126).contains(&b)) {
                    return Err(Graph6Error::MalformedHeader);
                }
                let n = ((bytes[1] - 63) as usize) << 12
                    | ((bytes[2] - 63) as usize) << 6
                    | (bytes[3] - 63) as usize;
                Ok((n, 4))
            }
        }
        63..=125 => Ok(((first - 63) as usize, 1)),
        _ => Err(Graph6Error::MalformedHeader),
    }
}

/// Decode one graph6 line (no trailing newline).
pub fn from_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    let (n, body_start) = decode_size(bytes)?;
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { n });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < expected {
        return Err(Graph6Error::TruncatedBody { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData { extra: body.len() - expected });
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset: body_start + i });
        }
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 != 0;
    let mut g = Graph::empty(n).expect("n <= MAX_VERTICES");
    let mut k = 0;
    for col in 1..n {
        for row in 0..col {
            if bit(k) {
                g.set_edge(row, col);
            }
            k += 1;
        }
    }
    for pad in nbits..expected * 6 {
        if bit(pad) {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    #[cfg(debug_assertions)]
    g.check_invariants();
    Ok(g)
}

/// Encode in canonical (minimal-header) graph6 form.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push((n >> 12 & 63) as u8 + 63);
        out.push((n >> 6 & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            group = group << 1 | g.has_edge(row, col) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parse the `"n m"` header plus `m` lines of `"u v"` with 0-based vertices.
pub fn from_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(EdgeListError::BadHeader)?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(EdgeListError::BadHeader)?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(EdgeListError::BadHeader)?;
    if parts.next().is_some() {
        return Err(EdgeListError::BadHeader);
    }
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        let u: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(EdgeListError::BadEdge { line: lineno + 1 })?;
        let v: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(EdgeListError::BadEdge { line: lineno + 1 })?;
        if parts.next().is_some() {
            return Err(EdgeListError::BadEdge { line: lineno + 1 });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError::CountMismatch { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Inverse of [`from_edge_list`], edges in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

impl Graph {
    pub fn from_graph6(line: &str) -> Result<Graph, Graph6Error> {
        from_graph6(line)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(self)
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, EdgeListError> {
        from_edge_list(text)
    }

    pub fn to_edge_list(&self) -> String {
        to_edge_list(self)
    }
}
