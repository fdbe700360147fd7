//! graph6 encoding and decoding.
//!
//! Bytes carry six data bits each with a bias of 63. The header is `N(n)`
//! (one byte for `n <= 62`, otherwise `126` followed by three bytes), and
//! the body lists the upper triangle of the adjacency matrix column by
//! column: `(0,1), (0,2), (1,2), (0,3), ...`, zero-padded to a multiple of
//! six bits.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_ORDER};
use crate::graph::Graph;

/// Optional file header written by some tools.
pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("malformed order header")]
    BadHeader,
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("record too short: expected {expected} body bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after the graph6 record")]
    Trailing(usize),
    #[error("non-zero padding bits in final byte")]
    Padding,
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Encodes `g` as a graph6 string without the trailing newline.
pub fn encode(g: &Graph) -> String {
    String::from_utf8(encode_bytes(g)).expect("graph6 is ASCII")
}

pub fn encode_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        let col = g.neighbours(j);
        for i in 0..j {
            acc = (acc << 1) | col.contains(i) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    out
}

/// Decodes one graph6 record. A single trailing `\n` (or `\r\n`) is accepted.
pub fn decode(record: &[u8]) -> Result<Graph, Graph6Error> {
    let record = record
        .strip_suffix(b"\n")
        .map(|r| r.strip_suffix(b"\r").unwrap_or(r))
        .unwrap_or(record);
    if record.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in record.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { offset, byte });
        }
    }
    let (n, rest) = if record[0] < 126 {
        ((record[0] - 63) as usize, &record[1..])
    } else {
        if record.len() < 4 || record[1] == 126 {
            return Err(Graph6Error::BadHeader);
        }
        let n = record[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 62 {
            return Err(Graph6Error::BadHeader);
        }
        (n, &record[4..])
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let expected = body_len(n);
    if rest.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: rest.len(),
        });
    }
    if rest.len() > expected {
        return Err(Graph6Error::Trailing(rest.len() - expected));
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let pad = expected * 6 - total_bits;
    if pad > 0 && (rest[expected - 1] - 63) & ((1u8 << pad) - 1) != 0 {
        return Err(Graph6Error::Padding);
    }

    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj).expect("decoded adjacency is valid"))
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("line {line}: {source}")]
    Format { line: usize, source: Graph6Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads newline-delimited graph6 records, skipping blank lines and an
/// optional `>>graph6<<` header.
pub fn read_all<R: BufRead>(reader: R) -> Result<Vec<Graph>, ReadError> {
    let mut graphs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let mut rec = line.trim_end();
        if idx == 0 {
            rec = rec.strip_prefix(HEADER).unwrap_or(rec);
        }
        if rec.is_empty() {
            continue;
        }
        let g = decode(rec.as_bytes()).map_err(|source| ReadError::Format {
            line: idx + 1,
            source,
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// Writes each graph as one newline-terminated graph6 record.
pub fn write_all<'a, W: Write, I: IntoIterator<Item = &'a Graph>>(
    mut writer: W,
    graphs: I,
) -> io::Result<()> {
    for g in graphs {
        writer.write_all(&encode_bytes(g))?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expected strings computed with networkx.to_graph6_bytes.
    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::cycle(5)), "Dhc");
        assert_eq!(encode(&Graph::new(1)), "@");
        assert_eq!(encode(&Graph::new(0)), "?");
        let pentagram = Graph::from_edges(5, &[(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]).unwrap();
        assert_eq!(encode(&pentagram), "DUW");
    }

    #[test]
    fn long_header_round_trip() {
        let g = Graph::cycle(100);
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99][..]);
        assert_eq!(decode(s.as_bytes()).unwrap(), g);
        let big = Graph::path(128);
        assert_eq!(decode(encode(&big).as_bytes()).unwrap(), big);
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(decode(b""), Err(Graph6Error::Empty));
        assert!(matches!(decode(b"D h"), Err(Graph6Error::BadByte { offset: 1, .. })));
        assert!(matches!(decode(b"Dh"), Err(Graph6Error::Truncated { expected: 2, found: 1 })));
        assert_eq!(decode(b"Dhc?"), Err(Graph6Error::Trailing(1)));
        // last byte carries two padding bits for n = 5
        assert_eq!(decode(b"Dhd"), Err(Graph6Error::Padding));
        assert_eq!(decode(b"~??"), Err(Graph6Error::BadHeader));
        assert_eq!(decode(b"~???"), Err(Graph6Error::BadHeader));
        assert!(matches!(decode(b"~?A@"), Err(Graph6Error::OrderTooLarge(129))));
    }

    #[test]
    fn stream_reading() {
        let text = b">>graph6<<Dhc\n\n@\nDUW\n";
        let gs = read_all(&text[..]).unwrap();
        assert_eq!(gs.len(), 3);
        let mut out = Vec::new();
        write_all(&mut out, &gs).unwrap();
        assert_eq!(out, b"Dhc\n@\nDUW\n");
        let err = read_all(&b"Dhc\nxyz\n"[..]).unwrap_err();
        assert!(matches!(err, ReadError::Format { line: 2, .. }));
    }
}
