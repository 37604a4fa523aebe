//! graph6 encoding (McKay's `formats.txt`): `N(n)` followed by the upper
//! triangle of the adjacency matrix, column by column, in 6-bit groups each
//! offset by 63.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(i, format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    let (n, mut pos) = match bytes {
        [] => return Err(g6_err(0, "empty input")),
        [126, 126, ..] => {
            if bytes.len() < 8 {
                return Err(g6_err(bytes.len(), "truncated 8-byte order field"));
            }
            let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        }
        [126, ..] => {
            if bytes.len() < 4 {
                return Err(g6_err(bytes.len(), "truncated 4-byte order field"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n > MAX_ORDER {
        return Err(Error::Unsupported(format!("graph6 order {n} exceeds {MAX_ORDER}")));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != needed {
        return Err(g6_err(
            pos + body.len().min(needed),
            format!("expected {needed} data bytes for n={n}, found {}", body.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    // Padding bits in the final byte must be zero.
    if bits % 6 != 0 {
        let last = bytes[bytes.len() - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_err(bytes.len() - 1, "nonzero padding bits"));
        }
    }
    pos += needed;
    debug_assert_eq!(pos, bytes.len());
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    if g.has_loops() {
        return Err(Error::Unsupported("graph6 cannot represent loops".into()));
    }
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        return Err(Error::Unsupported(format!("graph6 order {n}")));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}
