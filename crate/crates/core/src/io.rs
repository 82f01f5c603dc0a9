//! graph6 and edge-list encodings.
//!
//! graph6 follows the format description shipped with nauty: a size prefix
//! followed by the upper triangle of the adjacency matrix read column by
//! column, packed six bits per byte and offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

pub fn parse_graph(input: &[u8], format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => parse_graph6(input),
        Format::EdgeList => parse_edge_list(input),
    }
}

/// Guesses the format: a single printable line of graph6 characters is
/// graph6, anything else is an edge list.
pub fn sniff_format(input: &[u8]) -> Format {
    let body = input.strip_prefix(GRAPH6_HEADER).unwrap_or(input);
    let trimmed = body.trim_ascii();
    let one_line = !trimmed.is_empty() && !trimmed.contains(&b'\n');
    if one_line && trimmed.iter().all(|b| (63..=126).contains(b)) {
        Format::Graph6
    } else {
        Format::EdgeList
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

/// Parses one graph6 record. A leading `>>graph6<<` header and a trailing
/// newline are accepted.
pub fn parse_graph6(input: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if input.starts_with(GRAPH6_HEADER) {
        start = GRAPH6_HEADER.len();
    }
    let mut end = input.len();
    while end > start && matches!(input[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let data = &input[start..end];
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(start + i, format!("byte {b:#04x} outside the graph6 range")));
        }
    }
    let (n, header_len) = decode_size(data).map_err(|(off, msg)| parse_err(start + off, msg))?;
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &data[header_len..];
    if body.len() != body_len {
        return Err(parse_err(
            start + header_len + body.len().min(body_len),
            format!("expected {body_len} adjacency bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body_len - 1] - 63;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(parse_err(start + header_len + body_len - 1, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

fn decode_size(data: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match data {
        [] => Err((0, "empty graph6 record".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err((data.len(), "truncated 8-byte size field".into()));
            }
            Ok((six(&rest[..6]), 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err((data.len(), "truncated 4-byte size field".into()));
            }
            Ok((six(&rest[..3]), 4))
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

/// Canonical graph6 encoding (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `u v` lines with 0-based ids. Blank lines and `#` comments are
/// skipped; a comment of the form `# vertices: N` fixes the vertex count
/// (otherwise it is one more than the largest id seen).
pub fn parse_edge_list(input: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(input).map_err(|e| parse_err(e.valid_up_to(), "invalid UTF-8"))?;
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let content = line.trim_end_matches(['\n', '\r']);
        let trimmed = content.trim_start();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("vertices:") {
                let n = n.trim().parse().map_err(|_| parse_err(line_start, "bad vertex count"))?;
                declared = Some(n);
            }
            continue;
        }
        let content = content.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut col = 0;
        for tok in content.split_whitespace() {
            let pos = content[col..].find(tok).map_or(col, |p| p + col);
            col = pos + tok.len();
            let v: usize = tok.parse().map_err(|_| parse_err(line_start + pos, format!("not a vertex id: {tok:?}")))?;
            fields.push(v);
        }
        match fields.as_slice() {
            [] => {}
            [u, v] => edges.push((*u, *v)),
            _ => return Err(parse_err(line_start, "expected exactly two vertex ids")),
        }
    }
    let seen = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < seen => {
            return Err(Error::InvalidVertex { vertex: seen - 1, vertex_count: n });
        }
        Some(n) => n,
        None => seen,
    };
    Graph::from_edges(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices: {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses a stream of graph6 records, one per non-empty line.
pub fn parse_graph6_lines(input: &[u8]) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in input.split_inclusive(|&b| b == b'\n') {
        let body = line.trim_ascii();
        if !body.is_empty() {
            out.push(parse_graph6(body).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse { offset: offset + o, message },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}
