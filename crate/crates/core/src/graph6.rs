//! graph6 encoding.
//!
//! Vertex count: one byte `n + 63` for `n <= 62`, otherwise `~` followed by
//! three 6-bit groups. Then the upper triangle `x(0,1), x(0,2), x(1,2),
//! x(0,3), ...` packed six bits per byte, most significant first, offset 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u32> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u32),
        Some(&b) => Err(err(offset, format!("byte 0x{b:02x} outside 63..126"))),
        None => Err(err(offset, "unexpected end of input")),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let base = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = &line.as_bytes()[base..];

    let (n, mut pos) = match bytes.first() {
        None => return Err(err(base, "empty input")),
        Some(b'~') if bytes.get(1) == Some(&b'~') => {
            let mut n = 0usize;
            for i in 2..8 {
                n = (n << 6) | sextet(bytes, i).map_err(|e| shift(e, base))? as usize;
            }
            (n, 8)
        }
        Some(b'~') => {
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | sextet(bytes, i).map_err(|e| shift(e, base))? as usize;
            }
            (n, 4)
        }
        Some(_) => (sextet(bytes, 0).map_err(|e| shift(e, base))? as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(err(base, format!("{n} vertices exceeds the cap of {MAX_VERTICES}")));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != pos + nbytes {
        let at = base + (pos + nbytes).min(bytes.len());
        return Err(err(
            at,
            format!("expected {} data bytes for n={n}, found {}", nbytes, bytes.len().saturating_sub(pos)),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    let mut word = 0u32;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                word = sextet(bytes, pos).map_err(|e| shift(e, base))?;
                pos += 1;
            }
            if word >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) && word & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(err(base + pos - 1, "nonzero padding bits"));
    }
    Graph::from_edges(n, &edges)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Graph6 { offset, reason } => Error::Graph6 { offset: offset + by, reason },
        other => other,
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut word = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            word = word << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(word + 63);
                word = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push((word << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
