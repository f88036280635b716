//! graph6 encoding: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! six bits per byte and offset by 63.

use super::{Graph, MAX_REPR_ORDER};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

fn sextet(b: u8) -> Result<u32> {
    if !(63..=126).contains(&b) {
        return Err(Error::parse(format!("byte {b:#04x} outside the graph6 range 63..=126")));
    }
    Ok((b - 63) as u32)
}

fn read_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    match bytes {
        [] => Err(Error::parse("empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::parse("truncated graph6 size header"));
            }
            let mut n = 0usize;
            for &b in &rest[..6] {
                n = n << 6 | sextet(b)? as usize;
            }
            Ok((n, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse("truncated graph6 size header"));
            }
            let mut n = 0usize;
            for &b in &rest[..3] {
                n = n << 6 | sextet(b)? as usize;
            }
            Ok((n, &rest[3..]))
        }
        [b, rest @ ..] => Ok((sextet(*b)? as usize, rest)),
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// whitespace are accepted; nonzero padding bits are rejected so that
/// [`to_graph6`] reproduces the input byte for byte.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    if s.starts_with(':') || s.starts_with('&') {
        return Err(Error::parse("sparse6 and digraph6 are not supported"));
    }
    let (n, body) = read_size(s.as_bytes())?;
    if n > MAX_REPR_ORDER {
        return Err(Error::capacity("graph6 order", n, MAX_REPR_ORDER));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if body.len() != nbytes {
        return Err(Error::parse(format!(
            "graph6 body has {} bytes, order {n} needs {nbytes}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for &b in body {
        let v = sextet(b)?;
        for t in (0..6).rev() {
            bits.push(v >> t & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::parse("nonzero padding bits in graph6 body"));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}
