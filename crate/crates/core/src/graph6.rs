//! graph6 encoding: one graph per ASCII line, six adjacency bits per byte.
//!
//! Only the single-byte size form (n <= 62) is supported.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";
pub const MAX_GRAPH6_VERTICES: usize = 62;

const BIAS: u8 = 63;

fn parse_error(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse { offset, reason: reason.into() }
}

/// Parses one graph6 record. A leading `>>graph6<<` header and trailing
/// line terminators are stripped.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (start, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(parse_error(start + i, format!("byte {b:#04x} outside 63..126")));
        }
    }
    let Some(&size_byte) = body.first() else {
        return Err(parse_error(start, "missing size byte"));
    };
    if size_byte == 126 {
        return Err(Error::UnsupportedSize { size: MAX_GRAPH6_VERTICES + 1, limit: MAX_GRAPH6_VERTICES });
    }
    let n = usize::from(size_byte - BIAS);
    let slots = n * n.saturating_sub(1) / 2;
    let expected = slots.div_ceil(6);
    let data = &body[1..];
    if data.len() != expected {
        return Err(parse_error(
            start + 1 + data.len().min(expected),
            format!("expected {expected} adjacency bytes for n={n}, found {}", data.len()),
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut slot = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[slot / 6] - BIAS;
            if byte >> (5 - slot % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            slot += 1;
        }
    }
    if slots % 6 != 0 {
        let last = data[expected - 1] - BIAS;
        let pad = 6 - slots % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_error(start + expected, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Encodes `g` under its current vertex numbering.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Error::UnsupportedSize { size: n, limit: MAX_GRAPH6_VERTICES });
    }
    let slots = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; slots.div_ceil(6)];
    let mut slot = 0;
    for j in 1..n {
        for i in 0..j {
            if g.adjacent(i, j) {
                data[slot / 6] |= 1 << (5 - slot % 6);
            }
            slot += 1;
        }
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push(char::from(n as u8 + BIAS));
    out.extend(data.into_iter().map(|b| char::from(b + BIAS)));
    Ok(out)
}

/// One parsed record from a graph6 stream.
#[derive(Debug, Clone)]
pub struct Record {
    /// 1-based line number in the input.
    pub line: usize,
    pub text: String,
    pub graph: Result<Graph>,
}

/// Reads every non-blank line of a graph6 stream. A header line on its own
/// is skipped. I/O errors end the stream.
pub fn read_records<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<Record>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(e)),
        };
        let text = line.trim_end_matches('\r');
        let body = text.strip_prefix(HEADER).unwrap_or(text);
        if body.trim().is_empty() {
            return None;
        }
        Some(Ok(Record { line: i + 1, text: body.to_string(), graph: parse_graph6(text) }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_and_empty2() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2.n(), 2);
        assert!(k2.adjacent(0, 1));
        let e2 = parse_graph6("A?").unwrap();
        assert_eq!(e2.edge_count(), 0);
        assert_eq!(encode_graph6(&k2).unwrap(), "A_");
        assert_eq!(encode_graph6(&e2).unwrap(), "A?");
    }

    #[test]
    fn five_vertex_star() {
        // networkx decodes "D?{" to a star centred on vertex 4
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(encode_graph6(&g).unwrap(), "D?{");
    }

    #[test]
    fn header_and_crlf_are_stripped() {
        assert_eq!(parse_graph6(">>graph6<<A_\r\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn zero_and_one_vertex() {
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
        assert_eq!(encode_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6("A"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("A__"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("B\x20"), Err(Error::Parse { offset: 1, .. })));
        // n=2 has one slot; the five padding bits must be zero
        assert!(matches!(parse_graph6("A`"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6(">>graph6<<A\x7f"), Err(Error::Parse { offset: 11, .. })));
        assert!(matches!(parse_graph6("~??~"), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn encode_rejects_large() {
        let g = Graph::empty(63).unwrap();
        assert!(matches!(encode_graph6(&g), Err(Error::UnsupportedSize { size: 63, .. })));
        assert!(encode_graph6(&Graph::empty(62).unwrap()).is_ok());
    }

    #[test]
    fn record_stream_keeps_line_numbers() {
        let input = ">>graph6<<\nA_\n\nbad\r\nB?\n";
        let recs: Vec<_> = read_records(input.as_bytes()).map(|r| r.unwrap()).collect();
        assert_eq!(recs.iter().map(|r| r.line).collect::<Vec<_>>(), vec![2, 4, 5]);
        assert!(recs[0].graph.is_ok());
        assert!(recs[1].graph.is_err());
        assert_eq!(recs[2].text, "B?");
    }
}
